#include "feint/sim.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <queue>
#include <random>

#include "feint/num_format.hpp"

namespace feint {

const char* to_string(Scenario scenario) {
    switch (scenario) {
    case Scenario::basic_vs_basic: return "basic_vs_basic";
    case Scenario::feint_vs_basic: return "feint_vs_basic";
    case Scenario::feint_vs_feint: return "feint_vs_feint";
    }
    return "basic_vs_basic";
}

Scenario scenario_from_string(std::string_view name) {
    if (name == "basic_vs_basic") return Scenario::basic_vs_basic;
    if (name == "feint_vs_basic") return Scenario::feint_vs_basic;
    if (name == "feint_vs_feint") return Scenario::feint_vs_feint;
    throw ValidationError("unknown scenario '" + std::string(name) + "'");
}

const char* to_string(EventKind kind) {
    switch (kind) {
    case EventKind::combo_chosen: return "combo_chosen";
    case EventKind::damage_landed: return "damage_landed";
    case EventKind::interrupted: return "interrupted";
    case EventKind::knockdown_end: return "knockdown_end";
    }
    return "combo_chosen";
}

ActionSet with_injected_feint(const ActionSet& base, const std::string& id, double duration) {
    if (!(duration > 0.0)) throw ValidationError("feint duration must be > 0");
    if (base.find(id)) throw ValidationError("action id '" + id + "' already in set");
    ActionSet out = base;
    ActionSpec feint;
    feint.id = id;
    feint.kind = ActionKind::feint;
    feint.damage = 0.0;
    feint.total_time = duration;
    feint.stretch_out_time = duration / 2.0;
    out.actions.push_back(std::move(feint));
    return out;
}

namespace {

double canonical_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct NpcBehavior {
    std::vector<ActionCombination> combos;
    std::vector<double> probs; // same length; scripted = single combo, prob 1
    bool loop = true;          // re-plan when idle / after knockdown
};

enum class Phase { knockdown_end = 0, damage = 1, plan = 2 };

struct EngineEvent {
    double time = 0.0;
    Phase phase = Phase::plan;
    int actor = 0;
    std::uint64_t seq = 0;    // insertion order, final tiebreak
    std::uint64_t expect = 0; // generation the event belongs to
    std::string action_id;    // damage payload
    double damage = 0.0;
};

struct EventAfter {
    bool operator()(const EngineEvent& a, const EngineEvent& b) const {
        if (a.time != b.time) return a.time > b.time;
        if (a.phase != b.phase) return a.phase > b.phase;
        if (a.actor != b.actor) return a.actor > b.actor;
        return a.seq > b.seq;
    }
};

struct NpcState {
    std::uint64_t gen = 0;
    bool active = false;
    std::string combo_label;
    std::vector<std::pair<double, double>> defense_windows; // of the active combo
    std::mt19937_64 rng;
};

// Two-NPC discrete-event loop. Damage events sharing a timestamp resolve
// against the state as of that instant, so simultaneous hits both land.
class Engine {
public:
    Engine(const ScenarioConfig& cfg, const ActionSet& specs, NpcBehavior behavior_a,
           NpcBehavior behavior_b, std::uint64_t seed_a, std::uint64_t seed_b)
        : cfg_(cfg), specs_(specs), behaviors_{std::move(behavior_a), std::move(behavior_b)} {
        npcs_[0].rng.seed(seed_a);
        npcs_[1].rng.seed(seed_b);
    }

    EpisodeLog run() {
        schedule_plan(0.0, 0, npcs_[0].gen);
        schedule_plan(0.0, 1, npcs_[1].gen);
        while (!queue_.empty()) {
            EngineEvent ev = pop();
            switch (ev.phase) {
            case Phase::knockdown_end:
                if (npcs_[ev.actor].gen == ev.expect) {
                    log(ev.time, ev.actor, EventKind::knockdown_end, "", 0.0);
                }
                break;
            case Phase::damage: {
                std::vector<EngineEvent> batch{std::move(ev)};
                while (!queue_.empty() && queue_.top().time == batch.front().time &&
                       queue_.top().phase == Phase::damage) {
                    batch.push_back(pop());
                }
                resolve_damage_batch(batch);
                break;
            }
            case Phase::plan:
                handle_plan(ev);
                break;
            }
        }
        return std::move(log_);
    }

private:
    void log(double time, int actor, EventKind kind, std::string label, double value) {
        log_.events.push_back({time, actor, kind, std::move(label), value});
    }

    EngineEvent pop() {
        EngineEvent ev = queue_.top();
        queue_.pop();
        return ev;
    }

    void push(EngineEvent ev) {
        ev.seq = next_seq_++;
        queue_.push(std::move(ev));
    }

    void schedule_plan(double time, int actor, std::uint64_t expect) {
        if (time >= cfg_.episode_length) return;
        EngineEvent ev;
        ev.time = time;
        ev.phase = Phase::plan;
        ev.actor = actor;
        ev.expect = expect;
        push(std::move(ev));
    }

    int sample_combo(int actor) {
        const NpcBehavior& behavior = behaviors_[actor];
        const double u = canonical_uniform(npcs_[actor].rng);
        double acc = 0.0;
        int last_positive = 0;
        for (std::size_t i = 0; i < behavior.probs.size(); ++i) {
            if (behavior.probs[i] <= 0.0) continue;
            last_positive = static_cast<int>(i);
            acc += behavior.probs[i];
            if (u < acc) return last_positive;
        }
        return last_positive; // float residue pushed u past the cumulative sum
    }

    void handle_plan(const EngineEvent& ev) {
        NpcState& npc = npcs_[ev.actor];
        if (npc.gen != ev.expect) return; // combo was interrupted meanwhile
        if (ev.time >= cfg_.episode_length) return;

        const int choice = sample_combo(ev.actor);
        const ActionCombination& combo = behaviors_[ev.actor].combos[choice];
        npc.gen += 1;
        npc.active = true;
        npc.combo_label = combo.label();
        npc.defense_windows.clear();
        log(ev.time, ev.actor, EventKind::combo_chosen, npc.combo_label, 0.0);

        double offset = 0.0;
        for (const std::string& id : combo.sequence) {
            const ActionSpec& spec = *specs_.find(id);
            const double start = ev.time + offset;
            if (spec.kind == ActionKind::defense) {
                npc.defense_windows.emplace_back(start, start + spec.total_time);
            } else if (spec.kind == ActionKind::attack) {
                const double dmg_time = start + spec.stretch_out_time;
                if (dmg_time <= cfg_.episode_length) {
                    EngineEvent hit;
                    hit.time = dmg_time;
                    hit.phase = Phase::damage;
                    hit.actor = ev.actor;
                    hit.expect = npc.gen;
                    hit.action_id = spec.id;
                    hit.damage = spec.damage;
                    push(std::move(hit));
                }
            }
            offset += spec.total_time;
        }
        if (behaviors_[ev.actor].loop) {
            schedule_plan(ev.time + offset, ev.actor, npc.gen);
        }
    }

    bool defending_at(int actor, double time) const {
        if (!npcs_[actor].active) return false;
        for (const auto& [lo, hi] : npcs_[actor].defense_windows) {
            if (time >= lo && time < hi) return true;
        }
        return false;
    }

    void resolve_damage_batch(const std::vector<EngineEvent>& batch) {
        // Validate every hit against the pre-batch state first; a hit landing
        // in this instant must not cancel a simultaneous counter-hit.
        std::vector<bool> lands(batch.size(), false);
        for (std::size_t i = 0; i < batch.size(); ++i) {
            const EngineEvent& ev = batch[i];
            if (npcs_[ev.actor].gen != ev.expect) continue; // dealer was knocked down
            if (defending_at(1 - ev.actor, ev.time)) continue; // absorbed
            lands[i] = true;
        }
        for (std::size_t i = 0; i < batch.size(); ++i) {
            if (!lands[i]) continue;
            const EngineEvent& ev = batch[i];
            const int receiver = 1 - ev.actor;
            if (ev.actor == 0) {
                log_.score_a += ev.damage;
                log_.score_b -= ev.damage;
            } else {
                log_.score_b += ev.damage;
                log_.score_a -= ev.damage;
            }
            log(ev.time, ev.actor, EventKind::damage_landed, ev.action_id, ev.damage);

            NpcState& hit = npcs_[receiver];
            if (hit.active) {
                log(ev.time, receiver, EventKind::interrupted, hit.combo_label, 0.0);
                hit.active = false;
                hit.defense_windows.clear();
            }
            hit.gen += 1; // cancels pending damage, end-of-combo and wake plans
            const double wake = ev.time + cfg_.knockdown_recovery;
            if (wake <= cfg_.episode_length) {
                EngineEvent end;
                end.time = wake;
                end.phase = Phase::knockdown_end;
                end.actor = receiver;
                end.expect = hit.gen;
                push(std::move(end));
            }
            if (behaviors_[receiver].loop) {
                schedule_plan(wake, receiver, hit.gen);
            }
        }
    }

    const ScenarioConfig& cfg_;
    const ActionSet& specs_;
    NpcBehavior behaviors_[2];
    NpcState npcs_[2];
    std::priority_queue<EngineEvent, std::vector<EngineEvent>, EventAfter> queue_;
    std::uint64_t next_seq_ = 0;
    EpisodeLog log_;
};

void validate_config(const ScenarioConfig& cfg) {
    if (!(cfg.episode_length > 0.0)) throw ValidationError("episode_length must be > 0");
    if (!(cfg.lookahead > 0.0)) throw ValidationError("lookahead must be > 0");
    if (cfg.feint_duration < 0.0) throw ValidationError("feint_duration must be >= 0");
    if (cfg.knockdown_recovery < 0.0) throw ValidationError("knockdown_recovery must be >= 0");
    if (cfg.scenario != Scenario::basic_vs_basic && !(cfg.feint_duration > 0.0)) {
        throw ValidationError("feint scenarios need feint_duration > 0");
    }
}

NpcBehavior policy_behavior(const std::vector<ActionCombination>& combos, const Policy& policy) {
    NpcBehavior b;
    b.combos = combos;
    b.probs = policy.probabilities;
    b.loop = true;
    return b;
}

// Merged spec lookup for the engine; ids are unique across both sides by
// construction (same base set, same injected feint id).
ActionSet merged_specs(const ActionSet& a, const ActionSet& b) {
    ActionSet merged = a;
    for (const ActionSpec& spec : b.actions) {
        if (!merged.find(spec.id)) merged.actions.push_back(spec);
    }
    return merged;
}

} // namespace

ScenarioSetup build_scenario_setup(const ScenarioConfig& cfg, const ActionSet& base_a,
                                   const ActionSet& base_b) {
    validate_config(cfg);

    ScenarioSetup setup;
    const bool a_feints = cfg.scenario != Scenario::basic_vs_basic;
    const bool b_feints = cfg.scenario == Scenario::feint_vs_feint;
    setup.set_a = a_feints ? with_injected_feint(base_a, "F1", cfg.feint_duration) : base_a;
    setup.set_b = b_feints ? with_injected_feint(base_b, "F1", cfg.feint_duration) : base_b;

    EnumerationConfig ec;
    ec.lookahead = cfg.lookahead;
    ec.max_feints_per_combo = 1;

    ec.allow_feints = a_feints;
    setup.combos_a = enumerate_combinations(setup.set_a, ec);
    ec.allow_feints = b_feints;
    setup.combos_b = enumerate_combinations(setup.set_b, ec);
    if (setup.combos_a.empty() || setup.combos_b.empty()) {
        throw InfeasibleError("no admissible combinations for lookahead " +
                              format_double(cfg.lookahead));
    }

    const RewardMatrix matrix_a = combination_matrix(setup.combos_a, setup.combos_b);
    const GameSolution sol_a = solve_maximin(matrix_a);
    setup.policy_a = sol_a.agent_policy;
    setup.value_a = sol_a.value;
    const RewardMatrix matrix_b = combination_matrix(setup.combos_b, setup.combos_a);
    setup.policy_b = solve_maximin(matrix_b).agent_policy;
    return setup;
}

EpisodeLog run_episode(const ScenarioSetup& setup, const ScenarioConfig& cfg,
                       int episode_index) {
    const ActionSet specs = merged_specs(setup.set_a, setup.set_b);
    Engine engine(cfg, specs, policy_behavior(setup.combos_a, setup.policy_a),
                  policy_behavior(setup.combos_b, setup.policy_b),
                  mix_seed(cfg.seed, 2 * static_cast<std::uint64_t>(episode_index)),
                  mix_seed(cfg.seed, 2 * static_cast<std::uint64_t>(episode_index) + 1));
    return engine.run();
}

EpisodeLog run_episode(const ScenarioConfig& cfg, const ActionSet& base_a,
                       const ActionSet& base_b) {
    return run_episode(build_scenario_setup(cfg, base_a, base_b), cfg, 0);
}

SummaryStats run_batch(const ScenarioConfig& cfg, int episodes, const ActionSet& base_a,
                       const ActionSet& base_b) {
    if (episodes < 1) throw ValidationError("episode count must be >= 1");
    const ScenarioSetup setup = build_scenario_setup(cfg, base_a, base_b);

    SummaryStats stats;
    stats.episodes = episodes;
    for (int i = 0; i < episodes; ++i) {
        const EpisodeLog log = run_episode(setup, cfg, i);
        stats.episode_scores.emplace_back(log.score_a, log.score_b);
        std::string first_a, first_b;
        for (const SimEvent& ev : log.events) {
            if (ev.kind != EventKind::combo_chosen) continue;
            if (ev.actor == 0 && first_a.empty()) first_a = ev.label;
            if (ev.actor == 1 && first_b.empty()) first_b = ev.label;
            if (!first_a.empty() && !first_b.empty()) break;
        }
        stats.first_combo_a.push_back(first_a);
        stats.first_combo_b.push_back(first_b);
        stats.combo_counts_a[first_a] += 1;
        stats.combo_counts_b[first_b] += 1;
    }
    for (const auto& [a, b] : stats.episode_scores) {
        stats.mean_a += a;
        stats.mean_b += b;
    }
    stats.mean_a /= episodes;
    stats.mean_b /= episodes;
    return stats;
}

std::vector<SweepRow> sweep_feint_length(const ScenarioConfig& base,
                                         const std::vector<double>& durations,
                                         int episodes_per_duration, const ActionSet& base_set) {
    if (durations.empty()) throw std::invalid_argument("duration list must be non-empty");
    for (double d : durations) {
        if (d < 0.0) throw std::invalid_argument("feint durations must be >= 0");
    }
    if (episodes_per_duration < 1) throw ValidationError("episode count must be >= 1");
    if (!(base.episode_length > 0.0)) throw ValidationError("episode_length must be > 0");
    if (base.knockdown_recovery < 0.0) throw ValidationError("knockdown_recovery must be >= 0");

    // Canonical exchange around the set's quickest attack.
    const ActionSpec* attack = nullptr;
    for (const ActionSpec& a : base_set.actions) {
        if (a.kind != ActionKind::attack) continue;
        if (!attack || a.total_time < attack->total_time ||
            (a.total_time == attack->total_time && a.id < attack->id)) {
            attack = &a;
        }
    }
    if (!attack) throw ValidationError("action set has no attack actions");

    ActionSpec defense;
    defense.id = "D1";
    defense.kind = ActionKind::defense;
    defense.total_time = attack->total_time;
    defense.stretch_out_time = 0.0;

    std::vector<SweepRow> rows;
    for (std::size_t di = 0; di < durations.size(); ++di) {
        const double d = durations[di];
        ActionSpec feint;
        feint.id = "F1";
        feint.kind = ActionKind::feint;
        feint.total_time = d;
        feint.stretch_out_time = d / 2.0;

        ActionSet duel_set;
        duel_set.joint_dimension = base_set.joint_dimension;
        duel_set.actions = {*attack, defense, feint};

        const ActionCombination agent = make_combination(duel_set, {"F1", attack->id});
        const ActionCombination opp = make_combination(duel_set, {"D1", attack->id});

        SweepRow row;
        row.duration = d;
        row.marks = compute_timing_marks(agent.units[0], defense, opp.units[1]);
        row.regime = classify_feint_timing(row.marks);

        NpcBehavior agent_b{{agent}, {1.0}, false};
        NpcBehavior opp_b{{opp}, {1.0}, false};
        double delta_sum = 0.0;
        for (int ep = 0; ep < episodes_per_duration; ++ep) {
            Engine engine(base, duel_set, agent_b, opp_b,
                          mix_seed(mix_seed(base.seed, di), 2 * static_cast<std::uint64_t>(ep)),
                          mix_seed(mix_seed(base.seed, di), 2 * static_cast<std::uint64_t>(ep) + 1));
            const EpisodeLog log = engine.run();
            delta_sum += log.score_a - log.score_b;
        }
        row.mean_delta = delta_sum / episodes_per_duration;
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_episode_jsonl(const EpisodeLog& log, std::ostream& out) {
    for (const SimEvent& ev : log.events) {
        out << "{\"time\":" << format_double(ev.time) << ",\"actor\":\""
            << (ev.actor == 0 ? "A" : "B") << "\",\"kind\":\"" << to_string(ev.kind)
            << "\",\"label\":\"" << ev.label << "\",\"value\":" << format_double(ev.value)
            << "}\n";
    }
}

void write_summary_csv(const SummaryStats& stats, std::ostream& out) {
    out << "episode,score_a,score_b,first_combo_a,first_combo_b\n";
    for (std::size_t i = 0; i < stats.episode_scores.size(); ++i) {
        out << i << "," << format_double(stats.episode_scores[i].first) << ","
            << format_double(stats.episode_scores[i].second) << "," << stats.first_combo_a[i]
            << "," << stats.first_combo_b[i] << "\n";
    }
    out << "mean," << format_double(stats.mean_a) << "," << format_double(stats.mean_b)
        << ",,\n";
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << "duration,t_b1,t_a2,t_b2,regime,mean_delta\n";
    for (const SweepRow& row : rows) {
        out << format_double(row.duration) << "," << format_double(row.marks.t_b1) << ","
            << format_double(row.marks.t_a2) << "," << format_double(row.marks.t_b2) << ","
            << to_string(row.regime) << "," << format_double(row.mean_delta) << "\n";
    }
}

} // namespace feint
