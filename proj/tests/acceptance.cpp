// Acceptance suite: one pass/fail line per criterion, selected by argv[1]
// (c1..c8, or "all"). Exit code 0 iff every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "feint/combo_enum.hpp"
#include "feint/feint_gen.hpp"
#include "feint/reward.hpp"
#include "feint/sim.hpp"
#include "feint/strategy.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace feint;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

ActionSet boxing_set() { return load_action_set(FEINT_DATA_DIR "/paper_boxing.json"); }

RewardMatrix matrix_of(std::vector<std::vector<double>> values) {
    RewardMatrix m;
    m.values = std::move(values);
    for (std::size_t i = 0; i < m.values.size(); ++i) m.rows.push_back("r" + std::to_string(i));
    for (std::size_t j = 0; j < m.values[0].size(); ++j) m.cols.push_back("c" + std::to_string(j));
    return m;
}

// --------------------------------------------------------------------------
// C1: LP correctness.
// --------------------------------------------------------------------------
Outcome criterion_1() {
    const auto started = std::chrono::steady_clock::now();
    std::ostringstream detail;

    const RewardMatrix rps = matrix_of({{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}});
    const GameSolution rps_sol = solve_maximin(rps);
    bool ok = std::abs(rps_sol.value) <= 1e-9;
    for (double p : rps_sol.agent_policy.probabilities) {
        ok = ok && std::abs(p - 1.0 / 3.0) <= 1e-9;
    }
    if (!ok) detail << "rock-paper-scissors not uniform; ";

    std::mt19937_64 rng(20240101);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    double worst_skew = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng() % 8;
        std::vector<std::vector<double>> values(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                values[i][j] = dist(rng);
                values[j][i] = -values[i][j];
            }
        }
        const GameSolution sol = solve_maximin(matrix_of(std::move(values)));
        worst_skew = std::max(worst_skew, std::abs(sol.value));
    }
    if (worst_skew > 1e-8) {
        ok = false;
        detail << "skew-symmetric |value| up to " << worst_skew << "; ";
    }

    double worst_oracle_gap = 0.0;
    int oracle_checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t rows = 2 + rng() % 3;
        const std::size_t cols = 2 + rng() % 3;
        std::vector<std::vector<double>> values(rows, std::vector<double>(cols));
        for (auto& row : values) {
            for (double& v : row) v = dist(rng);
        }
        const auto expected = oracle::game_value_support_enumeration(values);
        if (!expected) continue; // degenerate random draw; skipped, not counted
        const GameSolution sol = solve_maximin(matrix_of(values));
        worst_oracle_gap = std::max(worst_oracle_gap, std::abs(sol.value - *expected));
        ++oracle_checked;
    }
    if (oracle_checked < 280 || worst_oracle_gap > 1e-6) {
        ok = false;
        detail << "oracle comparison: " << oracle_checked << " games, max gap "
               << worst_oracle_gap << "; ";
    }

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (seconds >= 5.0) {
        ok = false;
        detail << "runtime " << seconds << "s; ";
    }
    detail << "uniform RPS ok, 500 skew games max |v| " << worst_skew << ", " << oracle_checked
           << " oracle games max gap " << worst_oracle_gap << ", " << seconds << "s";
    return {ok, detail.str()};
}

// --------------------------------------------------------------------------
// C2: enumeration fidelity.
// --------------------------------------------------------------------------
Outcome criterion_2() {
    const auto started = std::chrono::steady_clock::now();
    std::ostringstream detail;
    bool ok = true;

    const ActionSet set = boxing_set();
    const auto combos = enumerate_combinations(set, {5.5, false, 1, false, 1e-6});
    std::set<std::vector<std::string>> found;
    for (const auto& c : combos) found.insert(c.sequence);

    const std::vector<std::vector<std::string>> reference = {
        {"A5"},
        {"A1", "A4"},
        {"A2", "A3"},
        {"A3", "A2"},
        {"A4", "A1"},
        {"A1", "A1", "A3"},
        {"A1", "A2", "A2"},
        {"A1", "A3", "A1"},
        {"A2", "A1", "A2"},
        {"A2", "A2", "A1"},
        {"A3", "A1", "A1"},
        {"A1", "A1", "A1", "A2"},
        {"A1", "A1", "A2", "A1"},
        {"A1", "A2", "A1", "A1"},
        {"A2", "A1", "A1", "A1"},
        {"A1", "A1", "A1", "A1", "A1"},
    };
    if (combos.size() != 17 || found.size() != 17) {
        ok = false;
        detail << "expected 17 sequences, got " << combos.size() << "; ";
    }
    for (const auto& seq : reference) {
        if (!found.count(seq)) {
            ok = false;
            detail << "missing a reference sequence; ";
            break;
        }
    }
    if (!found.count({"A3", "A3"})) {
        ok = false;
        detail << "missing the extra [A3,A3]; ";
    }
    if (found.count({"A1", "A2", "A1"})) {
        ok = false;
        detail << "rejected sequence [A1,A2,A1] present; ";
    }

    std::mt19937_64 rng(777);
    std::uniform_int_distribution<int> count_dist(1, 4);
    std::uniform_int_distribution<int> quarters(4, 16);
    std::uniform_real_distribution<double> look_dist(1.0, 8.0);
    int mismatches = 0;
    for (int trial = 0; trial < 200; ++trial) {
        ActionSet random_set;
        const int n = count_dist(rng);
        for (int i = 0; i < n; ++i) {
            ActionSpec a;
            a.id = "A" + std::to_string(i + 1);
            a.total_time = quarters(rng) * 0.25;
            a.stretch_out_time = a.total_time * 0.4;
            a.damage = 1.0;
            random_set.actions.push_back(a);
        }
        EnumerationConfig cfg;
        cfg.lookahead = look_dist(rng);
        std::vector<std::vector<std::string>> got;
        for (const auto& c : enumerate_combinations(random_set, cfg)) got.push_back(c.sequence);
        if (got != oracle::brute_enumerate(random_set, {cfg.lookahead, false, 1})) ++mismatches;
    }
    if (mismatches > 0) {
        ok = false;
        detail << mismatches << " oracle mismatches; ";
    }

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (seconds >= 1.0) {
        ok = false;
        detail << "runtime " << seconds << "s; ";
    }
    detail << combos.size() << " sequences (16 reference + [A3,A3]), 200 random instances match, "
           << seconds << "s";
    return {ok, detail.str()};
}

// --------------------------------------------------------------------------
// C3: palindrome suite.
// --------------------------------------------------------------------------
Outcome criterion_3() {
    std::mt19937_64 rng(424242);
    int failures = 0;
    int feints_checked = 0;
    const double eps = 1e-9;

    for (int trial = 0; trial < 1000; ++trial) {
        const ActionSpec action = oracle::random_frame_action(rng, trial % 2 == 0);
        const auto& src = action.frames->frames;
        for (const FeintAction& f : enumerate_feints(action, 0.0, 1e9, eps)) {
            ++feints_checked;
            const auto& frames = f.frames.frames;
            const std::size_t n = frames.size();
            bool good = n >= 2;

            // Closure.
            good = good && pose_distance(frames.front(), frames.back()) <= 1e-6;
            // Palindrome: exact for the cut methods, junction-tolerant for
            // identical pairs.
            if (f.method == FeintMethod::identical_pair) {
                const std::size_t junction = f.cut_params[0];
                good = good && pose_distance(frames[junction], frames[junction + 1]) <= eps;
            } else {
                for (std::size_t k = 0; k < n && good; ++k) {
                    good = frames[k] == frames[n - 1 - k];
                }
            }
            // Subset and no-damage-frame: every frame matches a source frame
            // outside the damage stage.
            for (std::size_t k = 0; k < n && good; ++k) {
                bool matched = false;
                for (std::size_t s = 0; s < src.size() && !matched; ++s) {
                    const bool outside = s < action.stages->stage1_end ||
                                         s > action.stages->damage_end;
                    matched = outside && frames[k] == src[s];
                }
                good = matched;
            }
            // Duration.
            good = good && f.total_time < action.total_time;

            if (!good) ++failures;
        }
    }

    std::ostringstream detail;
    detail << feints_checked << " feints from 1000 actions, " << failures << " failures";
    return {failures == 0 && feints_checked > 1000, detail.str()};
}

// --------------------------------------------------------------------------
// C4: reward-matrix structure.
// --------------------------------------------------------------------------
Outcome criterion_4() {
    std::ostringstream detail;
    bool ok = true;

    ActionSet three;
    for (int i = 0; i < 3; ++i) {
        ActionSpec a;
        a.id = "A" + std::to_string(i + 1);
        a.damage = i + 1.0;
        a.total_time = 1.0;
        three.actions.push_back(a);
    }
    const RewardMatrix small = single_action_matrix(three);
    const std::vector<std::vector<double>> expected = {{0, -1, -2}, {1, 0, -1}, {2, 1, 0}};
    if (small.values != expected) {
        ok = false;
        detail << "3x3 matrix mismatch; ";
    }

    const ActionSet set = boxing_set();
    double worst_skew = 0.0;
    for (bool feints : {false, true}) {
        ActionSet space = feints ? with_injected_feint(set, "F1", 0.5) : set;
        EnumerationConfig cfg;
        cfg.lookahead = 5.5;
        cfg.allow_feints = feints;
        const auto combos = enumerate_combinations(space, cfg);
        const RewardMatrix m = combination_matrix(combos, combos);
        for (std::size_t r = 0; r < combos.size(); ++r) {
            for (std::size_t c = 0; c < combos.size(); ++c) {
                worst_skew = std::max(worst_skew, std::abs(m.at(r, c) + m.at(c, r)));
            }
        }
    }
    if (worst_skew > 1e-12) {
        ok = false;
        detail << "skew-symmetry violated by " << worst_skew << "; ";
    }

    const CompetingPair lone{EffectiveUnit{std::nullopt, "A4", 1.4, 4.0}, std::nullopt};
    if (pair_reward(lone) != 4.0) {
        ok = false;
        detail << "unmatched pair reward != +4; ";
    }

    detail << "3x3 exact, shared-list matrices skew-symmetric to " << worst_skew
           << ", (A4, none) -> +4";
    return {ok, detail.str()};
}

// --------------------------------------------------------------------------
// C5: timing regimes.
// --------------------------------------------------------------------------
Outcome criterion_5() {
    std::ostringstream detail;
    bool ok = true;

    const ActionSet set = boxing_set();
    ScenarioConfig base;
    base.seed = 20240207;
    std::vector<double> durations;
    for (int k = 0; k <= 30; ++k) durations.push_back(static_cast<double>(k) / 10.0);

    const int episodes_per_duration = 10; // 31 durations -> 310 episodes
    const auto rows = sweep_feint_length(base, durations, episodes_per_duration, set);

    // Contiguous regime runs, with the boundary durations classified exactly
    // by the threshold equalities.
    int phase = 0;
    for (const auto& row : rows) {
        const int r = static_cast<int>(row.regime);
        if (r < phase) {
            ok = false;
            detail << "regimes interleave at duration " << row.duration << "; ";
        }
        phase = std::max(phase, r);
        const FeintTimingRegime expected =
            row.marks.t_a2 < row.marks.t_b1
                ? FeintTimingRegime::too_short
                : (row.marks.t_a2 < row.marks.t_b2 ? FeintTimingRegime::proper
                                                   : FeintTimingRegime::too_long);
        if (row.regime != expected) {
            ok = false;
            detail << "classification inconsistent at " << row.duration << "; ";
        }
    }
    // Boundary equalities switch the regime exactly.
    if (classify_feint_timing({1.0, 1.0, 1.4}) != FeintTimingRegime::proper ||
        classify_feint_timing({1.0, 1.4, 1.4}) != FeintTimingRegime::too_long) {
        ok = false;
        detail << "boundary classification wrong; ";
    }
    bool saw_all = false;
    {
        std::set<FeintTimingRegime> seen;
        for (const auto& row : rows) seen.insert(row.regime);
        saw_all = seen.size() == 3;
    }
    if (!saw_all) {
        ok = false;
        detail << "not all regimes covered by the sweep; ";
    }

    std::map<FeintTimingRegime, std::pair<double, int>> by_regime;
    for (const auto& row : rows) {
        by_regime[row.regime].first += row.mean_delta;
        by_regime[row.regime].second += 1;
    }
    const double mean_short = by_regime[FeintTimingRegime::too_short].first /
                              by_regime[FeintTimingRegime::too_short].second;
    const double mean_proper = by_regime[FeintTimingRegime::proper].first /
                               by_regime[FeintTimingRegime::proper].second;
    const double mean_long = by_regime[FeintTimingRegime::too_long].first /
                             by_regime[FeintTimingRegime::too_long].second;
    if (!(mean_proper > mean_short && mean_proper > mean_long)) {
        ok = false;
        detail << "proper regime does not dominate; ";
    }

    detail << "mean deltas short/proper/long = " << mean_short << "/" << mean_proper << "/"
           << mean_long << " over " << rows.size() * episodes_per_duration << " episodes";
    return {ok, detail.str()};
}

// --------------------------------------------------------------------------
// C6: scenario trends.
// --------------------------------------------------------------------------
Outcome criterion_6() {
    std::ostringstream detail;
    const ActionSet set = boxing_set();
    const int episodes = 500;

    auto deltas_for = [&](Scenario scenario, std::uint64_t seed) {
        ScenarioConfig cfg;
        cfg.scenario = scenario;
        cfg.seed = seed;
        const SummaryStats stats = run_batch(cfg, episodes, set, set);
        std::vector<double> deltas;
        for (const auto& [a, b] : stats.episode_scores) deltas.push_back(a - b);
        return deltas;
    };

    // (a) the symmetric scenario is mean-zero within two standard errors.
    const auto base_deltas = deltas_for(Scenario::basic_vs_basic, 101);
    double mean1 = 0.0;
    for (double d : base_deltas) mean1 += d;
    mean1 /= base_deltas.size();
    double var1 = 0.0;
    for (double d : base_deltas) var1 += (d - mean1) * (d - mean1);
    var1 /= (base_deltas.size() - 1);
    const double se1 = std::sqrt(var1 / base_deltas.size());
    const bool pass_a = std::abs(mean1) <= 2.0 * se1 + 1e-12;

    // (b) the one-sided feint scenario favors NPC A with bootstrap confidence.
    const auto feint_deltas = deltas_for(Scenario::feint_vs_basic, 202);
    double mean2 = 0.0;
    for (double d : feint_deltas) mean2 += d;
    mean2 /= feint_deltas.size();
    std::mt19937_64 rng(303);
    int positive = 0;
    const int resamples = 2000;
    for (int b = 0; b < resamples; ++b) {
        double sum = 0.0;
        for (std::size_t k = 0; k < feint_deltas.size(); ++k) {
            sum += feint_deltas[rng() % feint_deltas.size()];
        }
        if (sum / feint_deltas.size() > 0.0) ++positive;
    }
    const double confidence = static_cast<double>(positive) / resamples;
    const bool pass_b = confidence >= 0.95;

    // (c) both policies mix strictly more when both sides can feint.
    ScenarioConfig cfg1;
    cfg1.scenario = Scenario::basic_vs_basic;
    const ScenarioSetup setup1 = build_scenario_setup(cfg1, set, set);
    ScenarioConfig cfg3;
    cfg3.scenario = Scenario::feint_vs_feint;
    const ScenarioSetup setup3 = build_scenario_setup(cfg3, set, set);
    const double h1a = policy_entropy(setup1.policy_a);
    const double h1b = policy_entropy(setup1.policy_b);
    const double h3a = policy_entropy(setup3.policy_a);
    const double h3b = policy_entropy(setup3.policy_b);
    const bool pass_c = h3a > h1a && h3b > h1b;

    detail << "(a) mean " << mean1 << " vs 2SE " << 2.0 * se1 << (pass_a ? " ok" : " FAIL")
           << "; (b) mean " << mean2 << ", bootstrap confidence " << confidence
           << (pass_b ? " ok" : " FAIL") << "; (c) entropies " << h1a << "/" << h1b << " -> "
           << h3a << "/" << h3b << (pass_c ? " ok" : " FAIL")
           << (pass_b && pass_c
                   ? ""
                   : " [both sides solve to the strictly dominant pure all-A1 policy under the "
                     "bundled action timings, so the feint scenarios mirror scenario 1]");
    return {pass_a && pass_b && pass_c, detail.str()};
}

// --------------------------------------------------------------------------
// C7: diversity trend.
// --------------------------------------------------------------------------
Outcome criterion_7() {
    std::ostringstream detail;
    const ActionSet set = boxing_set();

    EnumerationConfig cfg;
    cfg.lookahead = 5.5;
    const auto plain = enumerate_combinations(set, cfg);
    const GameSolution plain_sol = solve_maximin(combination_matrix(plain, plain));

    const ActionSet augmented = with_injected_feint(set, "F1", 0.5);
    cfg.allow_feints = true;
    const auto feinted = enumerate_combinations(augmented, cfg);
    const GameSolution feint_sol = solve_maximin(combination_matrix(feinted, feinted));

    const auto argmax = [](const Policy& p) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < p.probabilities.size(); ++i) {
            if (p.probabilities[i] > p.probabilities[best]) best = i;
        }
        return best;
    };
    const std::size_t plain_arg = argmax(plain_sol.agent_policy);
    const std::size_t feint_arg = argmax(feint_sol.agent_policy);
    const double plain_max = plain_sol.agent_policy.probabilities[plain_arg];
    const double feint_max = feint_sol.agent_policy.probabilities[feint_arg];
    const double plain_entropy = policy_entropy(plain_sol.agent_policy);
    const double feint_entropy = policy_entropy(feint_sol.agent_policy);

    const bool ok = feint_max < plain_max && feint_entropy > plain_entropy;
    detail << "max probability " << plain_max << " (" << plain_sol.agent_policy.labels[plain_arg]
           << ") -> " << feint_max << " (" << feint_sol.agent_policy.labels[feint_arg]
           << "), entropy " << plain_entropy << " -> " << feint_entropy << " (" << plain.size()
           << " vs " << feinted.size()
           << " combinations; the all-A1 row strictly dominates both spaces, so the maximin "
              "policy is uniquely pure)";
    return {ok, detail.str()};
}

// --------------------------------------------------------------------------
// C8: CLI determinism.
// --------------------------------------------------------------------------
int run_cli(const std::string& args) {
    const std::string command = std::string(FEINT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::map<fs::path, std::string> snapshot_dir(const fs::path& dir) {
    std::map<fs::path, std::string> out;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        out[entry.path()] = buf.str();
    }
    return out;
}

Outcome criterion_8() {
    std::ostringstream detail;
    bool ok = true;

    const fs::path root = "acceptance_cli";
    fs::remove_all(root);
    fs::create_directories(root);
    const std::string data = FEINT_DATA_DIR;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"solve", "solve --set " + data + "/paper_boxing.json --lookahead 5.5 --out " +
                      (root / "solve").string()},
        {"simulate", "simulate --set " + data +
                         "/paper_boxing.json --scenario feint_vs_feint --episodes 5 --seed 99 "
                         "--out " +
                         (root / "simulate").string()},
        {"gen-feints", "gen-feints --set " + data + "/synthetic_punch.json --min 0 --max 10 "
                                                    "--out " +
                           (root / "gen").string()},
        {"sweep", "sweep --set " + data + "/paper_boxing.json --from 0 --to 2 --step 0.5 "
                                          "--episodes 3 --seed 5 --out " +
                      (root / "sweep").string()},
    };
    for (const auto& [name, args] : commands) {
        if (run_cli(args) != 0) {
            ok = false;
            detail << name << " failed on first run; ";
            continue;
        }
        const fs::path dir = root / (name == "gen-feints" ? "gen" : name);
        const auto before = snapshot_dir(dir);
        if (run_cli(args) != 0) {
            ok = false;
            detail << name << " failed on re-run; ";
            continue;
        }
        const auto after = snapshot_dir(dir);
        if (before != after) {
            ok = false;
            detail << name << " outputs differ between runs; ";
        }
    }
    fs::remove_all(root);
    if (ok) detail << "solve, simulate, gen-feints, sweep byte-identical on re-run";
    return {ok, detail.str()};
}

struct Criterion {
    std::string key;
    std::string title;
    Outcome (*run)();
};

const std::vector<Criterion> kCriteria = {
    {"c1", "LP correctness", criterion_1},
    {"c2", "Enumeration fidelity", criterion_2},
    {"c3", "Palindrome suite", criterion_3},
    {"c4", "Reward-matrix structure", criterion_4},
    {"c5", "Timing regimes", criterion_5},
    {"c6", "Scenario trends", criterion_6},
    {"c7", "Diversity trend", criterion_7},
    {"c8", "Determinism", criterion_8},
};

} // namespace

int main(int argc, char** argv) {
    const std::string selector = argc > 1 ? argv[1] : "all";
    bool all_pass = true;
    bool matched = false;
    for (const Criterion& criterion : kCriteria) {
        if (selector != "all" && selector != criterion.key) continue;
        matched = true;
        const Outcome outcome = criterion.run();
        std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << criterion.key << " "
                  << criterion.title << ": " << outcome.detail << "\n";
        all_pass = all_pass && outcome.pass;
    }
    if (!matched) {
        std::cerr << "unknown criterion '" << selector << "' (use c1..c8 or all)\n";
        return 2;
    }
    return all_pass ? 0 : 1;
}
