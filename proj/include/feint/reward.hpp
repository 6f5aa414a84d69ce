#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "feint/combo_enum.hpp"

namespace feint {

/// Agent-relative payoff matrix over strategy choices. Rows are the agent's
/// choices, columns the opponent's. Skew-symmetric whenever both players
/// share the same choice list.
struct RewardMatrix {
    std::vector<std::string> rows;
    std::vector<std::string> cols;
    std::vector<std::vector<double>> values;

    double at(std::size_t r, std::size_t c) const { return values[r][c]; }
};

/// Index-aligned matchup of one agent unit against one opponent unit; the
/// side that ran out of units is absent.
struct CompetingPair {
    std::optional<EffectiveUnit> agent;
    std::optional<EffectiveUnit> opp;
};

/// Single-action matrix: entry (m, n) = damage_m - damage_n over the set's
/// attack actions.
RewardMatrix single_action_matrix(const ActionSet& set);

/// Pairs the agent's unit i with the opponent's unit i; leftover units on
/// the longer side face an absent opponent. Throws when both combinations
/// are empty.
std::vector<CompetingPair> align_pairs(const ActionCombination& agent,
                                       const ActionCombination& opp);

/// Raw-index alignment: both sequences are chunked over the same action
/// positions, a chunk spanning two actions whenever either side opens it
/// with a feint. Requires equal action counts. Exists for comparison against
/// the unit alignment, which is the default everywhere.
std::vector<CompetingPair> align_pairs_by_action(const ActionCombination& agent,
                                                 const ActionCombination& opp,
                                                 const ActionSet& set);

/// The strictly shorter wind-up strikes first and scores its own damage with
/// its side's sign; equal wind-ups trade, scoring the damage difference; a
/// unit facing nothing scores its damage in full.
double pair_reward(const CompetingPair& pair);

/// Sum of pair rewards under unit alignment, for every row/column choice.
RewardMatrix combination_matrix(const std::vector<ActionCombination>& agent_combos,
                                const std::vector<ActionCombination>& opp_combos);

/// CSV with a header row and leading label column.
void write_matrix_csv(const RewardMatrix& matrix, std::ostream& out);

} // namespace feint
