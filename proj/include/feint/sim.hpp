#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "feint/reward.hpp"
#include "feint/strategy.hpp"

namespace feint {

enum class Scenario { basic_vs_basic, feint_vs_basic, feint_vs_feint };

const char* to_string(Scenario scenario);
Scenario scenario_from_string(std::string_view name);

struct ScenarioConfig {
    double episode_length = 25.0;
    Scenario scenario = Scenario::basic_vs_basic;
    double lookahead = 5.5;
    double feint_duration = 0.5;
    double knockdown_recovery = 1.0;
    std::uint64_t seed = 0;
};

enum class EventKind { combo_chosen, damage_landed, interrupted, knockdown_end };

const char* to_string(EventKind kind);

struct SimEvent {
    double time = 0.0;
    int actor = 0; // 0 = NPC A, 1 = NPC B
    EventKind kind = EventKind::combo_chosen;
    std::string label; // combination label or action id
    double value = 0.0; // damage for damage_landed
};

struct EpisodeLog {
    std::vector<SimEvent> events; // non-decreasing in time
    double score_a = 0.0;
    double score_b = 0.0; // always exactly -score_a
};

struct SummaryStats {
    int episodes = 0;
    double mean_a = 0.0;
    double mean_b = 0.0;
    std::vector<std::pair<double, double>> episode_scores;
    std::vector<std::string> first_combo_a, first_combo_b; // one per episode
    std::map<std::string, int> combo_counts_a, combo_counts_b;
};

struct SweepRow {
    double duration = 0.0;
    TimingMarks marks;
    FeintTimingRegime regime = FeintTimingRegime::proper;
    double mean_delta = 0.0; // mean(score_a - score_b) over the batch
};

/// Copy of `base` with a zero-damage feint action of the given duration
/// appended, so the enumeration can weave it into combinations.
ActionSet with_injected_feint(const ActionSet& base, const std::string& id, double duration);

/// Everything an episode needs that does not depend on the seed: per-NPC
/// strategy spaces (feint-augmented as the scenario dictates), each side's
/// reward matrix solved once from its own perspective.
struct ScenarioSetup {
    ActionSet set_a, set_b;
    std::vector<ActionCombination> combos_a, combos_b;
    Policy policy_a, policy_b;
    double value_a = 0.0; // game value from NPC A's perspective
};

/// Validates the configuration and solves both policies. Throws
/// ValidationError on bad parameters, InfeasibleError when the lookahead
/// admits no combination.
ScenarioSetup build_scenario_setup(const ScenarioConfig& cfg, const ActionSet& base_a,
                                   const ActionSet& base_b);

/// One seeded episode: NPCs sample combinations from their maximin policies
/// whenever idle; attacks land damage at their wind-up instant unless the
/// receiver is mid-defense; a landed hit cancels the receiver's remaining
/// combination and delays its next plan by the knockdown recovery.
EpisodeLog run_episode(const ScenarioConfig& cfg, const ActionSet& base_a,
                       const ActionSet& base_b);

/// Same episode against a prebuilt setup (episode index selects the seeds;
/// index 0 reproduces run_episode for the same config).
EpisodeLog run_episode(const ScenarioSetup& setup, const ScenarioConfig& cfg,
                       int episode_index);

/// n episodes with per-episode seeds derived from (cfg.seed, index);
/// aggregation is order-independent.
SummaryStats run_batch(const ScenarioConfig& cfg, int episodes, const ActionSet& base_a,
                       const ActionSet& base_b);

/// Feint-length study: for each duration, the canonical exchange — the agent
/// scripted to feint-then-attack, the opponent to defend-then-attack with
/// the set's quickest attack — is classified by its timing marks and played
/// as a batch of single-exchange episodes.
std::vector<SweepRow> sweep_feint_length(const ScenarioConfig& base,
                                         const std::vector<double>& durations,
                                         int episodes_per_duration, const ActionSet& base_set);

void write_episode_jsonl(const EpisodeLog& log, std::ostream& out);
void write_summary_csv(const SummaryStats& stats, std::ostream& out);
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

} // namespace feint
