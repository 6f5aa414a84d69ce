// Command-line front end: feint generation, combination solving, combat
// simulation and the feint-length sweep. Every command writes its outputs
// plus a manifest.json into --out, and is byte-identical on re-runs with the
// same inputs and seed.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "feint/action_model.hpp"
#include "feint/combo_enum.hpp"
#include "feint/feint_gen.hpp"
#include "feint/num_format.hpp"
#include "feint/reward.hpp"
#include "feint/sim.hpp"
#include "feint/strategy.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "0.1.0";

// Exit codes: 0 ok, 2 validation error, 3 infeasible configuration, 4 I/O.
enum ExitCode { kOk = 0, kValidation = 2, kInfeasible = 3, kIo = 4 };

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw feint::IoError("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw feint::IoError("write failed for '" + path.string() + "'");
}

void write_manifest(const fs::path& out_dir, const std::string& command,
                    const json& inputs, const json& config,
                    const std::vector<std::string>& outputs) {
    json manifest;
    manifest["tool"] = "feint";
    manifest["version"] = kToolVersion;
    manifest["command"] = command;
    manifest["inputs"] = inputs;
    manifest["config"] = config;
    manifest["outputs"] = outputs;
    write_text(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

fs::path prepare_out_dir(const std::string& out) {
    fs::path dir(out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw feint::IoError("cannot create output directory '" + out + "': " + ec.message());
    return dir;
}

struct GenFeintsArgs {
    std::string set_path;
    std::string action_id; // empty = every annotated action
    double duration_min = 0.0;
    double duration_max = 1e9;
    double eps = 1e-6;
    std::string out = "out";
};

int cmd_gen_feints(const GenFeintsArgs& args) {
    const feint::ActionSet set = feint::load_action_set(args.set_path);
    const fs::path out_dir = prepare_out_dir(args.out);

    std::vector<const feint::ActionSpec*> sources;
    for (const feint::ActionSpec& a : set.actions) {
        if (!args.action_id.empty() && a.id != args.action_id) continue;
        if (a.frames && a.stages) sources.push_back(&a);
    }
    if (sources.empty()) {
        throw feint::ValidationError("frame data required for feint generation");
    }

    std::vector<feint::FeintAction> feints;
    for (const feint::ActionSpec* src : sources) {
        auto generated =
            feint::enumerate_feints(*src, args.duration_min, args.duration_max, args.eps);
        for (auto& f : generated) feints.push_back(std::move(f));
    }
    feint::export_feints(feints, set.joint_dimension, out_dir / "feints.json");

    write_manifest(out_dir, "gen-feints", {{"action_set", args.set_path}},
                   {{"action", args.action_id},
                    {"duration_min", args.duration_min},
                    {"duration_max", args.duration_max},
                    {"eps", args.eps}},
                   {"feints.json"});
    std::cout << "generated " << feints.size() << " feints -> "
              << (out_dir / "feints.json").string() << "\n";
    return kOk;
}

struct SolveArgs {
    std::string set_path;
    double lookahead = 5.5;
    bool feints = false;
    double feint_duration = 0.5;
    int max_feints = 1;
    bool stance_links = false;
    std::string out = "out";
};

int cmd_solve(const SolveArgs& args) {
    feint::ActionSet set = feint::load_action_set(args.set_path);
    if (args.feints && !set.find("F1")) {
        set = feint::with_injected_feint(set, "F1", args.feint_duration);
    }

    feint::EnumerationConfig ec;
    ec.lookahead = args.lookahead;
    ec.allow_feints = args.feints;
    ec.max_feints_per_combo = args.max_feints;
    ec.enforce_stance_links = args.stance_links;
    const auto combos = feint::enumerate_combinations(set, ec);
    if (combos.empty()) throw feint::InfeasibleError("no admissible combinations");

    const feint::RewardMatrix matrix = feint::combination_matrix(combos, combos);
    const feint::GameSolution solution = feint::solve_maximin(matrix);

    const fs::path out_dir = prepare_out_dir(args.out);

    std::ostringstream combos_csv;
    combos_csv << "index,label,total_time,units\n";
    for (std::size_t i = 0; i < combos.size(); ++i) {
        combos_csv << i << "," << combos[i].label() << ","
                   << feint::format_double(combos[i].total_time) << "," << combos[i].units.size()
                   << "\n";
    }
    write_text(out_dir / "combinations.csv", combos_csv.str());

    std::ostringstream matrix_csv;
    feint::write_matrix_csv(matrix, matrix_csv);
    write_text(out_dir / "matrix.csv", matrix_csv.str());

    std::ostringstream policy_csv;
    policy_csv << "label,probability\n";
    for (std::size_t i = 0; i < solution.agent_policy.labels.size(); ++i) {
        policy_csv << solution.agent_policy.labels[i] << ","
                   << feint::format_double(solution.agent_policy.probabilities[i]) << "\n";
    }
    write_text(out_dir / "policy.csv", policy_csv.str());
    write_text(out_dir / "value.txt", feint::format_double(solution.value) + "\n");

    write_manifest(out_dir, "solve", {{"action_set", args.set_path}},
                   {{"lookahead", args.lookahead},
                    {"feints", args.feints},
                    {"feint_duration", args.feint_duration},
                    {"max_feints", args.max_feints},
                    {"stance_links", args.stance_links}},
                   {"combinations.csv", "matrix.csv", "policy.csv", "value.txt"});
    std::cout << combos.size() << " combinations, game value "
              << feint::format_double(solution.value) << "\n";
    return kOk;
}

struct SimulateArgs {
    std::string set_path;
    std::string scenario = "basic_vs_basic";
    int episodes = 20;
    std::uint64_t seed = 0;
    double episode_length = 25.0;
    double lookahead = 5.5;
    double feint_duration = 0.5;
    double recovery = 1.0;
    std::string out = "out";
};

int cmd_simulate(const SimulateArgs& args) {
    if (args.episodes < 1) throw feint::ValidationError("--episodes must be >= 1");
    const feint::ActionSet set = feint::load_action_set(args.set_path);

    feint::ScenarioConfig cfg;
    cfg.scenario = feint::scenario_from_string(args.scenario);
    cfg.episode_length = args.episode_length;
    cfg.lookahead = args.lookahead;
    cfg.feint_duration = args.feint_duration;
    cfg.knockdown_recovery = args.recovery;
    cfg.seed = args.seed;

    const feint::ScenarioSetup setup = feint::build_scenario_setup(cfg, set, set);
    const fs::path out_dir = prepare_out_dir(args.out);

    std::vector<std::string> outputs;
    feint::SummaryStats stats;
    stats.episodes = args.episodes;
    for (int i = 0; i < args.episodes; ++i) {
        const feint::EpisodeLog log = feint::run_episode(setup, cfg, i);
        stats.episode_scores.emplace_back(log.score_a, log.score_b);
        std::string first_a, first_b;
        for (const feint::SimEvent& ev : log.events) {
            if (ev.kind != feint::EventKind::combo_chosen) continue;
            if (ev.actor == 0 && first_a.empty()) first_a = ev.label;
            if (ev.actor == 1 && first_b.empty()) first_b = ev.label;
        }
        stats.first_combo_a.push_back(first_a);
        stats.first_combo_b.push_back(first_b);
        stats.combo_counts_a[first_a] += 1;
        stats.combo_counts_b[first_b] += 1;
        stats.mean_a += log.score_a;
        stats.mean_b += log.score_b;

        std::ostringstream jsonl;
        feint::write_episode_jsonl(log, jsonl);
        char name[32];
        std::snprintf(name, sizeof(name), "episode_%03d.jsonl", i);
        write_text(out_dir / name, jsonl.str());
        outputs.emplace_back(name);
    }
    stats.mean_a /= args.episodes;
    stats.mean_b /= args.episodes;

    std::ostringstream summary;
    feint::write_summary_csv(stats, summary);
    write_text(out_dir / "summary.csv", summary.str());
    outputs.emplace_back("summary.csv");

    write_manifest(out_dir, "simulate", {{"action_set", args.set_path}},
                   {{"scenario", args.scenario},
                    {"episodes", args.episodes},
                    {"seed", args.seed},
                    {"episode_length", args.episode_length},
                    {"lookahead", args.lookahead},
                    {"feint_duration", args.feint_duration},
                    {"recovery", args.recovery}},
                   outputs);
    std::cout << "mean score A " << feint::format_double(stats.mean_a) << ", B "
              << feint::format_double(stats.mean_b) << " over " << args.episodes
              << " episodes\n";
    return kOk;
}

struct SweepArgs {
    std::string set_path;
    double from = 0.0;
    double to = 3.0;
    double step = 0.1;
    int episodes = 20;
    std::uint64_t seed = 0;
    double episode_length = 25.0;
    double recovery = 1.0;
    std::string out = "out";
};

int cmd_sweep(const SweepArgs& args) {
    if (!(args.step > 0.0)) throw feint::ValidationError("--step must be > 0");
    if (args.to < args.from) throw feint::ValidationError("--to must be >= --from");
    const feint::ActionSet set = feint::load_action_set(args.set_path);

    std::vector<double> durations;
    for (int k = 0;; ++k) {
        const double d = args.from + static_cast<double>(k) * args.step;
        if (d > args.to + 1e-12) break;
        durations.push_back(d);
    }

    feint::ScenarioConfig base;
    base.episode_length = args.episode_length;
    base.knockdown_recovery = args.recovery;
    base.seed = args.seed;

    const auto rows = feint::sweep_feint_length(base, durations, args.episodes, set);
    const fs::path out_dir = prepare_out_dir(args.out);
    std::ostringstream csv;
    feint::write_sweep_csv(rows, csv);
    write_text(out_dir / "sweep.csv", csv.str());

    write_manifest(out_dir, "sweep", {{"action_set", args.set_path}},
                   {{"from", args.from},
                    {"to", args.to},
                    {"step", args.step},
                    {"episodes", args.episodes},
                    {"seed", args.seed},
                    {"episode_length", args.episode_length},
                    {"recovery", args.recovery}},
                   {"sweep.csv"});
    std::cout << rows.size() << " durations swept -> " << (out_dir / "sweep.csv").string()
              << "\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Feint-aware strategy engine and combat simulator"};
    app.require_subcommand(1);
    app.set_config("--config");

    GenFeintsArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen-feints", "Extract feints from annotated attacks");
    gen->add_option("--set", gen_args.set_path, "action-set JSON file")->required();
    gen->add_option("--action", gen_args.action_id, "restrict to one action id");
    gen->add_option("--min", gen_args.duration_min, "minimum feint duration");
    gen->add_option("--max", gen_args.duration_max, "maximum feint duration");
    gen->add_option("--eps", gen_args.eps, "pose matching tolerance");
    gen->add_option("--out", gen_args.out, "output directory");

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "Enumerate combinations and solve the policy");
    solve->add_option("--set", solve_args.set_path, "action-set JSON file")->required();
    solve->add_option("--lookahead", solve_args.lookahead, "planning horizon (unit time)");
    solve->add_flag("--feints", solve_args.feints, "admit feints into combinations");
    solve->add_option("--feint-duration", solve_args.feint_duration, "injected feint duration");
    solve->add_option("--max-feints", solve_args.max_feints, "feints per combination");
    solve->add_flag("--stance-links", solve_args.stance_links, "enforce stance transitions");
    solve->add_option("--out", solve_args.out, "output directory");

    SimulateArgs sim_args;
    CLI::App* sim = app.add_subcommand("simulate", "Run seeded two-NPC combat episodes");
    sim->add_option("--set", sim_args.set_path, "action-set JSON file")->required();
    sim->add_option("--scenario", sim_args.scenario,
                    "basic_vs_basic | feint_vs_basic | feint_vs_feint");
    sim->add_option("--episodes", sim_args.episodes, "episode count");
    sim->add_option("--seed", sim_args.seed, "base RNG seed");
    sim->add_option("--length", sim_args.episode_length, "episode length (unit time)");
    sim->add_option("--lookahead", sim_args.lookahead, "planning horizon");
    sim->add_option("--feint-duration", sim_args.feint_duration, "injected feint duration");
    sim->add_option("--recovery", sim_args.recovery, "knockdown recovery time");
    sim->add_option("--out", sim_args.out, "output directory");

    SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep", "Feint-length study over the canonical exchange");
    sweep->add_option("--set", sweep_args.set_path, "action-set JSON file")->required();
    sweep->add_option("--from", sweep_args.from, "first duration");
    sweep->add_option("--to", sweep_args.to, "last duration");
    sweep->add_option("--step", sweep_args.step, "duration step");
    sweep->add_option("--episodes", sweep_args.episodes, "episodes per duration");
    sweep->add_option("--seed", sweep_args.seed, "base RNG seed");
    sweep->add_option("--length", sweep_args.episode_length, "episode length");
    sweep->add_option("--recovery", sweep_args.recovery, "knockdown recovery time");
    sweep->add_option("--out", sweep_args.out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kValidation;
    }

    try {
        if (gen->parsed()) return cmd_gen_feints(gen_args);
        if (solve->parsed()) return cmd_solve(solve_args);
        if (sim->parsed()) return cmd_simulate(sim_args);
        if (sweep->parsed()) return cmd_sweep(sweep_args);
    } catch (const feint::InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInfeasible;
    } catch (const feint::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const feint::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const feint::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    }
    return kOk;
}
