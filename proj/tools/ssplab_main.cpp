#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ssplab/env.hpp"
#include "ssplab/harness.hpp"
#include "ssplab/oracle.hpp"

using namespace ssplab;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 2;
constexpr int kExitConfig = 3;

int cmd_gen_lower_bound(int d_action, long K, double B, const std::string& rho_str,
                        std::uint64_t rho_seed, const std::string& out) {
    LinearSsp env;
    if (!rho_str.empty()) {
        if (static_cast<int>(rho_str.size()) != d_action)
            throw SsplabError("--rho must have one +/- per coordinate");
        const double Delta = lower_bound_delta(K);
        Vec rho(d_action);
        for (int i = 0; i < d_action; ++i) {
            if (rho_str[i] != '+' && rho_str[i] != '-')
                throw SsplabError("--rho characters must be + or -");
            rho[i] = rho_str[i] == '+' ? Delta : -Delta;
        }
        env = make_lower_bound_instance(d_action, K, B, rho);
    } else {
        Rng rng(rho_seed);
        env = make_lower_bound_instance(d_action, K, B, rng);
    }
    save_env(out, env);
    std::cout << "wrote " << out << " (linear_ssp, d=" << env.d
              << ", actions=" << env.n_actions << ")\n";
    return kExitOk;
}

int cmd_validate(const std::string& path) {
    const EnvAny env = load_env(path);
    const ValidationReport rep = validate(env);
    if (rep.ok) {
        std::cout << "OK: " << path << " (" << env_type_name(env) << ")\n";
        return kExitOk;
    }
    std::cout << "INVALID: " << path << "\n";
    for (const std::string& issue : rep.issues) std::cout << "  - " << issue << "\n";
    return kExitInvariant;
}

int cmd_oracle(const std::string& path, double tol, long max_iter, int fh_horizon,
               const std::string& terminal, const std::string& out) {
    const EnvAny env = load_env(path);
    const TabularSsp tab =
        std::visit([](const auto& e) { return TabularSsp(materialize(e)); }, env);
    const OracleSolution sol = solve_ssp(tab, tol, max_iter);
    FhOracleSolution fh;
    const bool with_fh = fh_horizon > 0;
    if (with_fh) {
        const TerminalCostSpec spec = terminal == "zero"
                                          ? TerminalCostSpec::zero()
                                          : TerminalCostSpec::two_b_star(sol.b_star);
        fh = solve_fh(fh_wrap(tab, fh_horizon, spec));
    }
    save_oracle(out, sol, with_fh ? &fh : nullptr);
    std::cout << "B_star=" << format_double(sol.b_star) << " T_star=" << format_double(sol.t_star)
              << " c_min=" << format_double(sol.c_min) << " gap_min="
              << (std::isfinite(sol.gap_min) ? format_double(sol.gap_min) : "inf") << "\n";
    std::cout << "wrote " << out << "\n";
    return kExitOk;
}

int cmd_run_config(const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in) throw SsplabError("cannot open " + config_path);
    json j;
    in >> j;
    const std::string base = std::filesystem::path(config_path).parent_path().string();
    const ExperimentConfig cfg = parse_experiment_config(j, base.empty() ? "." : base);
    const ExperimentResult res = run_experiment(cfg);
    std::cout << "ran " << res.runs.size() << " runs -> " << cfg.out_dir << "\n";
    return kExitOk;
}

int cmd_run_single(const std::string& env_path, const std::string& algo, long K,
                   const std::string& h_arg, std::uint64_t seed, const std::string& out,
                   const std::string& b_arg, double delta, bool no_trace) {
    json cfg;
    cfg["envs"] = json::array({json{{"name", "env"}, {"file", env_path}}});
    json algo_obj = json{{"algo", algo}, {"delta", delta}};
    if (!b_arg.empty()) {
        if (b_arg == "auto")
            algo_obj["B"] = "auto";
        else
            algo_obj["B"] = std::stod(b_arg);
    }
    cfg["algos"] = json::array({algo_obj});
    cfg["K"] = json::array({K});
    cfg["seeds"] = json::array({seed});
    if (h_arg == "auto" || h_arg == "auto_4Tstar")
        cfg["H"] = json{{"policy", "auto_4Tstar"}};
    else if (h_arg == "auto_log")
        cfg["H"] = json{{"policy", "auto_log"}};
    else
        cfg["H"] = json{{"policy", "fixed"}, {"value", std::stoi(h_arg)}};
    cfg["out"] = out;
    cfg["record_steps"] = !no_trace;
    const ExperimentConfig parsed = parse_experiment_config(cfg, ".");
    const ExperimentResult res = run_experiment(parsed);
    for (const RunOutcome& run : res.runs) {
        std::cout << run.run_name << ": R_K=" << format_double(run.regret.r_k)
                  << " M=" << run.regret.m << " complete=" << (run.regret.complete ? 1 : 0)
                  << "\n";
    }
    return kExitOk;
}

int cmd_summarize(const std::string& dir) {
    const std::filesystem::path summary = std::filesystem::path(dir) / "summary.json";
    if (std::filesystem::exists(summary)) {
        std::ifstream in(summary);
        json j;
        in >> j;
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }
    // aggregate run.json files directly
    json runs = json::array();
    for (const auto& entry : std::filesystem::recursive_directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().filename() == "run.json") {
            std::ifstream in(entry.path());
            json j;
            in >> j;
            runs.push_back(j);
        }
    if (runs.empty()) throw SsplabError("no summary.json or run.json under " + dir);
    std::cout << json{{"runs", runs}}.dump(2) << "\n";
    return kExitOk;
}

int cmd_check(const std::string& dir, const std::string& oracle_path) {
    OracleSolution oracle;
    const OracleSolution* oracle_ptr = nullptr;
    if (!oracle_path.empty()) {
        std::ifstream in(oracle_path);
        if (!in) throw SsplabError("cannot open " + oracle_path);
        json j;
        in >> j;
        oracle.n_states = j.at("n_states").get<int>();
        oracle.n_actions = j.at("n_actions").get<int>();
        oracle.v_star = j.at("V_star").get<Vec>();
        oracle.b_star = j.at("B_star").get<double>();
        oracle.t_star = j.at("T_star").get<double>();
        oracle_ptr = &oracle;
    }
    const InvariantTally tally = invariant_suite(dir, oracle_ptr, json::object());
    std::cout << tally.to_json().dump(2) << "\n";
    return tally.pass ? kExitOk : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ssplab: stochastic-shortest-path learning laboratory"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate an environment file");
    gen->require_subcommand(1);
    auto* gen_lb = gen->add_subcommand("lower-bound", "two-state lower-bound family");
    int lb_d = 2;
    long lb_k = 10000;
    double lb_b = 5.0;
    std::string lb_rho;
    std::uint64_t lb_rho_seed = 0;
    std::string lb_out = "env.json";
    gen_lb->add_option("--d", lb_d, "action-cube dimension (>= 1)");
    gen_lb->add_option("--K", lb_k, "episode budget the instance is tuned for");
    gen_lb->add_option("--B", lb_b, "B* (>= 1)");
    gen_lb->add_option("--rho", lb_rho, "signs of rho, e.g. ++ or +-");
    gen_lb->add_option("--rho-seed", lb_rho_seed, "seed used when --rho is omitted");
    gen_lb->add_option("--out", lb_out, "output path");
    auto* gen_gap = gen->add_subcommand("gap-example", "four-state gap-separation instance");
    double gp = 0.5, gq = 0.1, geps = 0.01;
    std::string gap_out = "env.json";
    bool gap_one_hot = false;
    gen_gap->add_option("--p", gp);
    gen_gap->add_option("--q", gq);
    gen_gap->add_option("--eps", geps);
    gen_gap->add_flag("--one-hot", gap_one_hot, "emit the one-hot linear embedding");
    gen_gap->add_option("--out", gap_out, "output path");

    // validate
    auto* val = app.add_subcommand("validate", "validate an environment file");
    std::string val_path;
    val->add_option("env", val_path, "environment json")->required();

    // oracle
    auto* orc = app.add_subcommand("oracle", "solve an environment exactly");
    std::string orc_path, orc_out = "oracle.json", orc_terminal = "two_b_star";
    double orc_tol = 1e-10;
    long orc_max_iter = 1000000;
    int orc_fh = 0;
    orc->add_option("env", orc_path, "environment json")->required();
    orc->add_option("--tol", orc_tol, "value-iteration tolerance");
    orc->add_option("--max-iter", orc_max_iter);
    orc->add_option("--fh", orc_fh, "also solve the horizon-H wrapper");
    orc->add_option("--terminal", orc_terminal, "two_b_star | zero (with --fh)");
    orc->add_option("--out", orc_out, "output path");

    // run
    auto* run = app.add_subcommand("run", "run experiments");
    std::string run_config, run_env, run_algo = "lsvi", run_h = "auto", run_out = "runs";
    std::string run_b;
    long run_k = 100;
    std::uint64_t run_seed = 1;
    double run_delta = 0.05;
    bool run_no_trace = false;
    run->add_option("--config", run_config, "experiment config json");
    run->add_option("--env", run_env, "environment json (single-run mode)");
    run->add_option("--algo", run_algo, "lsvi | mvp | vtr | vagopo");
    run->add_option("--K", run_k, "episodes");
    run->add_option("--H", run_h, "auto | auto_log | integer");
    run->add_option("--seed", run_seed);
    run->add_option("--B", run_b, "value cap (auto = from oracle)");
    run->add_option("--delta", run_delta);
    run->add_flag("--no-trace", run_no_trace, "skip per-step CSV");
    run->add_option("--out", run_out, "output directory");

    // summarize / check
    auto* summ = app.add_subcommand("summarize", "print the summary of a run directory");
    std::string summ_dir;
    summ->add_option("dir", summ_dir)->required();
    auto* chk = app.add_subcommand("check", "replay artifacts and verify invariants");
    std::string chk_dir, chk_oracle;
    chk->add_option("dir", chk_dir)->required();
    chk->add_option("--oracle", chk_oracle, "oracle json for R_K cross-checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_lb->parsed())
            return cmd_gen_lower_bound(lb_d, lb_k, lb_b, lb_rho, lb_rho_seed, lb_out);
        if (gen_gap->parsed()) {
            const TabularSsp env = make_gap_example(gp, gq, geps);
            if (gap_one_hot)
                save_env(gap_out, tabular_to_linear(env));
            else
                save_env(gap_out, env);
            std::cout << "wrote " << gap_out << "\n";
            return kExitOk;
        }
        if (val->parsed()) return cmd_validate(val_path);
        if (orc->parsed())
            return cmd_oracle(orc_path, orc_tol, orc_max_iter, orc_fh, orc_terminal, orc_out);
        if (run->parsed()) {
            if (!run_config.empty()) return cmd_run_config(run_config);
            if (run_env.empty()) throw SsplabError("run: need --config or --env");
            return cmd_run_single(run_env, run_algo, run_k, run_h, run_seed, run_out, run_b,
                                  run_delta, run_no_trace);
        }
        if (summ->parsed()) return cmd_summarize(summ_dir);
        if (chk->parsed()) return cmd_check(chk_dir, chk_oracle);
    } catch (const SsplabError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}
