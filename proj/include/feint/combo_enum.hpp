#pragma once

#include <optional>
#include <string>
#include <vector>

#include "feint/action_model.hpp"

namespace feint {

struct EnumerationConfig {
    double lookahead = 0.0;          // planning horizon L, unit time
    bool allow_feints = false;       // admit feint actions into sequences
    int max_feints_per_combo = 1;
    bool enforce_stance_links = false;
    double link_eps = 1e-6;          // pose tolerance for frame-based links
};

/// One attack, optionally fused with the feint played just before it. The
/// fused wind-up covers the whole feint plus the attack's own wind-up, so a
/// feint delays the damage instant without changing the damage dealt.
struct EffectiveUnit {
    std::optional<std::string> feint;
    std::string attack;
    double stretch_out = 0.0;
    double damage = 0.0;

    std::string label() const;

    bool operator==(const EffectiveUnit&) const = default;
};

/// An ordered sequence of action ids with its duration and effective units.
/// Every feint in the sequence is immediately followed by an attack.
struct ActionCombination {
    std::vector<std::string> sequence;
    double total_time = 0.0;
    std::vector<EffectiveUnit> units;

    std::string label() const; // ids joined with '+'

    bool operator==(const ActionCombination&) const = default;
};

/// Builds a combination from an id sequence, computing units and total time.
/// Throws ValidationError on unknown ids or a feint not followed by an attack.
ActionCombination make_combination(const ActionSet& set, const std::vector<std::string>& ids);

/// All admissible ordered sequences for the lookahead window: sequences over
/// attack ids (plus feints when enabled, each immediately followed by an
/// attack, at most max_feints_per_combo) whose total time T satisfies
///   L - min_eligible_action_time <= T < L,
/// i.e. the window cannot fit one more action. Stance links between adjacent
/// actions are enforced when configured. Output is lexicographic by sequence.
std::vector<ActionCombination> enumerate_combinations(const ActionSet& set,
                                                      const EnumerationConfig& cfg);

/// Whether `next` can physically follow `prev`: matching junction poses when
/// both actions carry frames, matching stance labels otherwise.
bool check_physical_link(const ActionSpec& prev, const ActionSpec& next, double eps);

/// Key instants of a feint-then-attack exchange, measured from a common
/// origin: t_b1 = end of the opponent's first action, t_a2 = the agent's
/// damage instant, t_b2 = the opponent's second damage instant.
struct TimingMarks {
    double t_b1 = 0.0;
    double t_a2 = 0.0;
    double t_b2 = 0.0;
};

enum class FeintTimingRegime { too_short, proper, too_long };

const char* to_string(FeintTimingRegime regime);

/// too_short: the agent strikes while the opponent's first action still runs.
/// proper:    the strike lands after it ends but before the opponent's second
///            damage instant (boundary t_a2 == t_b1 counts as proper).
/// too_long:  the opponent's second damage comes first (t_a2 == t_b2 counts
///            as too_long; simultaneity gives no preemptive advantage).
FeintTimingRegime classify_feint_timing(const TimingMarks& marks);

/// Marks for the canonical exchange: the agent opens with a feint-bearing
/// unit, the opponent finishes its current action and then plays its own
/// second unit. Throws if the agent unit has no feint or the opponent's
/// second unit is absent.
TimingMarks compute_timing_marks(const EffectiveUnit& agent_first,
                                 const ActionSpec& opp_first_action,
                                 const std::optional<EffectiveUnit>& opp_second);

} // namespace feint
