#include "ssplab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "ssplab/kernels.hpp"
#include "ssplab/lsvi.hpp"
#include "ssplab/mixture.hpp"
#include "ssplab/tabular_hf.hpp"
#include "ssplab/trace.hpp"
#include "ssplab/vagopo.hpp"

namespace ssplab {

namespace fs = std::filesystem;
using nlohmann::json;

int resolve_horizon(const HPolicy& policy, const OracleSolution& oracle, long K, int d) {
    switch (policy.kind) {
        case HPolicy::Kind::fixed:
            if (policy.value < 1) throw SsplabError("H policy: fixed value must be >= 1");
            return policy.value;
        case HPolicy::Kind::auto_4tstar:
            return static_cast<int>(
                std::ceil(4.0 * oracle.t_star * std::log(4.0 * static_cast<double>(K))));
        case HPolicy::Kind::auto_log: {
            if (oracle.c_min <= 0.0)
                throw SsplabError("H policy auto_log needs c_min > 0 (perturb costs first)");
            const double b = std::max(oracle.b_star, 1.0);
            return static_cast<int>(std::ceil(
                policy.b_prime * b / oracle.c_min *
                std::log(std::max(2.0, d * b * static_cast<double>(K) / oracle.c_min))));
        }
    }
    throw SsplabError("H policy: unknown kind");
}

ExperimentConfig parse_experiment_config(const json& j, const std::string& base_dir) {
    ExperimentConfig cfg;
    for (const auto& e : j.at("envs")) {
        EnvEntry entry;
        entry.name = e.at("name").get<std::string>();
        if (e.contains("file")) {
            fs::path p = e.at("file").get<std::string>();
            if (p.is_relative()) p = fs::path(base_dir) / p;
            entry.env = load_env(p.string());
        } else if (e.contains("gap_example")) {
            const auto& g = e.at("gap_example");
            TabularSsp env = make_gap_example(g.at("p").get<double>(), g.at("q").get<double>(),
                                              g.at("eps").get<double>());
            entry.env = env;
        } else if (e.contains("lower_bound")) {
            const auto& g = e.at("lower_bound");
            Rng rho_rng(g.value("rho_seed", 0));
            entry.env = make_lower_bound_instance(g.at("d_action").get<int>(),
                                                  g.at("K").get<long>(),
                                                  g.at("B_star").get<double>(), rho_rng);
        } else {
            throw SsplabError("env entry needs 'file', 'gap_example' or 'lower_bound'");
        }
        if (e.value("one_hot", false)) {
            if (!std::holds_alternative<TabularSsp>(entry.env))
                throw SsplabError("one_hot transform needs a tabular env");
            entry.env = tabular_to_linear(std::get<TabularSsp>(entry.env));
        }
        cfg.envs.push_back(std::move(entry));
    }
    for (const auto& a : j.at("algos")) {
        AlgoSpec spec;
        spec.algo = a.at("algo").get<std::string>();
        spec.params = a;
        cfg.algos.push_back(std::move(spec));
    }
    cfg.ks = j.at("K").get<std::vector<long>>();
    for (long k : cfg.ks)
        if (k < 2) throw SsplabError("config: K values must be >= 2");
    if (j.contains("seeds")) {
        cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    } else {
        for (std::uint64_t s = 1; s <= 20; ++s) cfg.seeds.push_back(s);  // default battery
    }
    if (cfg.seeds.empty()) throw SsplabError("config: seeds must be nonempty");
    {
        std::vector<std::uint64_t> sorted = cfg.seeds;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw SsplabError("config: seed collision");
    }
    if (j.contains("H")) {
        const auto& h = j.at("H");
        const std::string policy = h.value("policy", "auto_4Tstar");
        if (policy == "fixed") {
            cfg.h_policy.kind = HPolicy::Kind::fixed;
            cfg.h_policy.value = h.at("value").get<int>();
        } else if (policy == "auto_4Tstar") {
            cfg.h_policy.kind = HPolicy::Kind::auto_4tstar;
        } else if (policy == "auto_log") {
            cfg.h_policy.kind = HPolicy::Kind::auto_log;
            cfg.h_policy.b_prime = h.value("b_prime", 1.0);
        } else {
            throw SsplabError("config: unknown H policy '" + policy + "'");
        }
    }
    cfg.terminal = j.value("terminal", "two_b_star");
    if (cfg.terminal != "two_b_star" && cfg.terminal != "zero")
        throw SsplabError("config: terminal must be 'two_b_star' or 'zero'");
    cfg.out_dir = j.value("out", "runs");
    if (fs::path(cfg.out_dir).is_relative())
        cfg.out_dir = (fs::path(base_dir) / cfg.out_dir).string();
    cfg.record_steps = j.value("record_steps", true);
    if (j.contains("step_cap")) cfg.step_cap = j.at("step_cap").get<long>();
    cfg.oracle_tol = j.value("oracle_tol", 1e-10);
    cfg.thresholds = j.value("thresholds", json::object());
    return cfg;
}

FitResult fit_rate(const std::vector<std::pair<double, double>>& points) {
    FitResult fit;
    std::vector<std::pair<double, double>> logs;
    for (const auto& [k, r] : points) {
        if (r <= 0.0) {
            fit.warnings.push_back("dropped nonpositive point at K=" + std::to_string(k));
            continue;
        }
        logs.emplace_back(std::log(k), std::log(r));
    }
    if (logs.size() < 3) throw SsplabError("fit_rate: fewer than 3 positive points");
    fit.used_points = static_cast<int>(logs.size());
    double sx = 0, sy = 0;
    for (const auto& [x, y] : logs) {
        sx += x;
        sy += y;
    }
    const double mx = sx / logs.size(), my = sy / logs.size();
    double sxx = 0, sxy = 0, sse = 0;
    for (const auto& [x, y] : logs) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    fit.exponent = sxy / sxx;
    fit.intercept = my - fit.exponent * mx;
    for (const auto& [x, y] : logs) {
        const double e = y - (fit.intercept + fit.exponent * x);
        sse += e * e;
    }
    const int dof = static_cast<int>(logs.size()) - 2;
    fit.stderr_exponent = dof > 0 ? std::sqrt(sse / dof / sxx) : 0.0;
    return fit;
}

int worker_pool_size() {
    if (const char* env = std::getenv("SSPLAB_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::max(1u, std::min(hw, 4u)));
}

namespace {

struct RunTask {
    const EnvEntry* env;
    const AlgoSpec* algo;
    long K;
    std::uint64_t seed;
};

std::string run_name_of(const RunTask& task) {
    return task.env->name + "__" + task.algo->algo + "__K" + std::to_string(task.K) +
           "__s" + std::to_string(task.seed);
}

double param_or_auto(const json& params, const std::string& key, double auto_value) {
    if (!params.contains(key)) return auto_value;
    const auto& v = params.at(key);
    if (v.is_string()) {
        if (v.get<std::string>() == "auto") return auto_value;
        throw SsplabError("config: bad value for " + key);
    }
    return v.get<double>();
}

RunOutcome execute_run(const RunTask& task, const ExperimentConfig& cfg,
                       const TabularSsp& tab, const OracleSolution& oracle,
                       const FhOracleSolution* fh_oracle, int H) {
    RunOutcome out;
    out.run_name = run_name_of(task);
    out.env_name = task.env->name;
    out.algo = task.algo->algo;
    out.K = task.K;
    out.seed = task.seed;
    out.H = H;
    out.s_init = tab.s_init;
    out.goal = tab.goal();
    out.terminal = cfg.terminal;
    Rng rng = Rng(task.seed).split(out.run_name);

    const TerminalCostSpec terminal = cfg.terminal == "zero"
                                          ? TerminalCostSpec::zero()
                                          : TerminalCostSpec::two_b_star(oracle.b_star);
    ReductionConfig rcfg;
    rcfg.K = task.K;
    rcfg.H = H;
    rcfg.terminal_cost = terminal;
    rcfg.step_cap = cfg.step_cap;
    rcfg.record_steps = cfg.record_steps;
    const json& params = task.algo->params;

    RunTrace trace;
    json diag = json::object();
    if (task.algo->algo == "lsvi") {
        LinearSsp lin;
        if (std::holds_alternative<LinearSsp>(task.env->env))
            lin = std::get<LinearSsp>(task.env->env);
        else if (std::holds_alternative<TabularSsp>(task.env->env))
            lin = tabular_to_linear(std::get<TabularSsp>(task.env->env));
        else
            throw SsplabError("lsvi needs a linear or tabular env");
        LsviConfig lcfg;
        lcfg.H = H;
        lcfg.B = param_or_auto(params, "B", std::max(1.0, 3.0 * oracle.b_star));
        lcfg.delta = params.value("delta", 0.05);
        lcfg.lambda = params.value("lambda", 1.0);
        lcfg.bonus_scale = params.value("bonus_scale", 1.0);
        lcfg.c_f = terminal;
        LsviLearner learner(make_feature_map(lin), lcfg);
        trace = run_fha(tab, learner, rcfg, rng);
        diag["beta_final"] = learner.beta();
        diag["intervals"] = learner.interval_index() - 1;
        diag["B"] = lcfg.B;
    } else if (task.algo->algo == "mvp") {
        MvpConfig mcfg;
        mcfg.n_states = tab.n_states;
        mcfg.n_actions = tab.n_actions;
        mcfg.H = H;
        mcfg.B = param_or_auto(params, "B", std::max(1.0, 2.0 * oracle.b_star));
        mcfg.delta = params.value("delta", 0.05);
        MvpLearner learner(mcfg, tab);
        trace = run_fha(tab, learner, rcfg, rng);
        diag["total_observations"] = learner.total_observations();
        diag["min_bonus"] = learner.last_min_bonus();
        diag["B"] = mcfg.B;
    } else if (task.algo->algo == "vtr") {
        if (!std::holds_alternative<LinearMixtureSsp>(task.env->env))
            throw SsplabError("vtr needs a linear mixture env");
        const auto& mix = std::get<LinearMixtureSsp>(task.env->env);
        VtrConfig vcfg;
        vcfg.H = H;
        vcfg.B_star = param_or_auto(params, "B_star", oracle.b_star);
        vcfg.delta = params.value("delta", 0.05);
        VtrLearner learner(mix, vcfg);
        trace = run_fha(tab, learner, rcfg, rng);
        diag["intervals"] = learner.interval_index() - 1;
        diag["B_star"] = vcfg.B_star;
    } else if (task.algo->algo == "vagopo") {
        if (!std::holds_alternative<LinearSsp>(task.env->env))
            throw SsplabError("vagopo needs a linear env");
        const auto& lin = std::get<LinearSsp>(task.env->env);
        VagopoParams vp;
        vp.delta = params.value("delta", 0.05);
        if (params.contains("eps_conf") && !params.at("eps_conf").is_string())
            vp.eps_conf = params.at("eps_conf").get<double>();
        vp.net_w = params.value("net_w", 0.25);
        vp.net_nu = params.value("net_nu", 0.5);
        vp.candidate_budget = params.value("candidate_budget", 100000L);
        vp.step_cap = cfg.step_cap;
        vp.record_steps = cfg.record_steps;
        vp.whitebox_every = params.value("whitebox_every", 0L);
        VagopoResult res = vagopo_run(lin, task.K, vp, rng, &oracle);
        trace = std::move(res.trace);
        diag["updates"] = res.diag.updates;
        diag["updates_goal"] = res.diag.updates_goal;
        diag["updates_lazy"] = res.diag.updates_lazy;
        diag["updates_overestimate"] = res.diag.updates_overestimate;
        diag["doublings"] = res.diag.doublings;
        diag["infeasible_grid_events"] = res.diag.infeasible_grid_events;
        diag["max_b"] = res.diag.max_b;
        diag["whitebox_checks"] = res.diag.whitebox_checks;
        diag["whitebox_contained"] = res.diag.whitebox_contained;
        diag["optimism_checks"] = res.diag.optimism_checks;
        diag["optimism_holds"] = res.diag.optimism_holds;
    } else {
        throw SsplabError("unknown algo '" + task.algo->algo + "'");
    }

    out.regret = compute_regret(trace, oracle, fh_oracle);
    out.diagnostics = std::move(diag);
    out.dir = (fs::path(cfg.out_dir) / out.run_name).string();
    fs::create_directories(out.dir);
    if (cfg.record_steps) write_trace_csv((fs::path(out.dir) / "trace.csv").string(), trace);
    std::ofstream rf(fs::path(out.dir) / "run.json");
    rf << run_outcome_to_json(out).dump(2) << "\n";
    return out;
}

}  // namespace

json run_outcome_to_json(const RunOutcome& run) {
    json j;
    j["schema"] = 1;
    j["run"] = run.run_name;
    j["env"] = run.env_name;
    j["algo"] = run.algo;
    j["K"] = run.K;
    j["seed"] = run.seed;
    j["H"] = run.H;
    j["R_K"] = run.regret.r_k;
    if (std::isfinite(run.regret.r_tilde_m)) j["R_tilde_M"] = run.regret.r_tilde_m;
    j["M"] = run.regret.m;
    j["bad_intervals"] = run.regret.bad_intervals;
    if (std::isfinite(run.regret.lemma_fha_slack))
        j["lemma_fha_slack"] = run.regret.lemma_fha_slack;
    j["complete"] = run.regret.complete;
    j["s_init"] = run.s_init;
    j["goal"] = run.goal;
    j["terminal"] = run.terminal;
    j["diagnostics"] = run.diagnostics;
    return j;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    ExperimentResult result;
    fs::create_directories(cfg.out_dir);
    kernels::active_backend();  // settle dispatch before threads start

    struct EnvData {
        TabularSsp tab;
        OracleSolution oracle;
        std::map<int, FhOracleSolution> fh_by_h;  // per resolved horizon
        std::map<long, int> h_by_k;
    };
    std::map<std::string, EnvData> env_data;
    for (const EnvEntry& e : cfg.envs) {
        EnvData data;
        data.tab = std::visit([](const auto& env) { return TabularSsp(materialize(env)); },
                              e.env);
        data.oracle = solve_ssp(data.tab, cfg.oracle_tol);
        const int d = std::holds_alternative<LinearSsp>(e.env)
                          ? std::get<LinearSsp>(e.env).d
                          : (std::holds_alternative<LinearMixtureSsp>(e.env)
                                 ? std::get<LinearMixtureSsp>(e.env).d
                                 : data.tab.n_states * data.tab.n_actions);
        for (long k : cfg.ks) {
            const int h = resolve_horizon(cfg.h_policy, data.oracle, k, d);
            data.h_by_k[k] = h;
            if (!data.fh_by_h.count(h)) {
                const TerminalCostSpec terminal =
                    cfg.terminal == "zero" ? TerminalCostSpec::zero()
                                           : TerminalCostSpec::two_b_star(data.oracle.b_star);
                data.fh_by_h.emplace(h, solve_fh(fh_wrap(data.tab, h, terminal)));
            }
        }
        result.oracles.emplace(e.name, data.oracle);
        env_data.emplace(e.name, std::move(data));
    }

    std::vector<RunTask> tasks;
    for (const EnvEntry& e : cfg.envs)
        for (const AlgoSpec& a : cfg.algos)
            for (long k : cfg.ks)
                for (std::uint64_t seed : cfg.seeds)
                    tasks.push_back(RunTask{&e, &a, k, seed});

    result.runs.resize(tasks.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size() || failed.load()) break;
            const RunTask& task = tasks[i];
            try {
                EnvData& data = env_data.at(task.env->name);
                const int h = data.h_by_k.at(task.K);
                result.runs[i] = execute_run(task, cfg, data.tab, data.oracle,
                                             &data.fh_by_h.at(h), h);
            } catch (const std::exception& ex) {
                std::lock_guard<std::mutex> lock(error_mutex);
                error_message = std::string("run ") + run_name_of(task) + ": " + ex.what();
                failed.store(true);
            }
        }
    };
    const int n_workers = std::min<int>(worker_pool_size(), static_cast<int>(tasks.size()));
    std::vector<std::thread> pool;
    for (int i = 1; i < n_workers; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failed.load()) throw SsplabError(error_message);

    // summary: per (env, algo), R_K statistics across seeds and the rate fit
    json summary;
    summary["schema"] = 1;
    summary["thresholds"] = cfg.thresholds;
    json groups = json::object();
    for (const EnvEntry& e : cfg.envs) {
        for (const AlgoSpec& a : cfg.algos) {
            json group;
            std::vector<std::pair<double, double>> mean_points;
            json per_k = json::array();
            for (long k : cfg.ks) {
                std::vector<double> rks;
                double slack_min = 1e300;
                long m_total = 0;
                for (const RunOutcome& run : result.runs) {
                    if (run.env_name != e.name || run.algo != a.algo || run.K != k) continue;
                    rks.push_back(run.regret.r_k);
                    if (std::isfinite(run.regret.lemma_fha_slack))
                        slack_min = std::min(slack_min, run.regret.lemma_fha_slack);
                    m_total += run.regret.m;
                }
                double mean = 0.0;
                for (double v : rks) mean += v;
                mean /= std::max<std::size_t>(1, rks.size());
                double var = 0.0;
                for (double v : rks) var += (v - mean) * (v - mean);
                const double sd = rks.size() > 1 ? std::sqrt(var / (rks.size() - 1)) : 0.0;
                json row;
                row["K"] = k;
                row["mean_R_K"] = mean;
                row["sd_R_K"] = sd;
                row["mean_M"] = static_cast<double>(m_total) /
                                std::max<std::size_t>(1, rks.size());
                if (slack_min < 1e300) row["min_lemma_fha_slack"] = slack_min;
                const auto& data = env_data.at(e.name);
                const int h = data.h_by_k.at(k);
                row["H"] = h;
                // diagnostic overlays from the source formulas
                const double B = std::max(1.0, 3.0 * data.oracle.b_star);
                const int d = std::holds_alternative<LinearSsp>(e.env)
                                  ? std::get<LinearSsp>(e.env).d
                                  : data.tab.n_states * data.tab.n_actions;
                const double gamma1 = std::sqrt(static_cast<double>(d) * d * d * B * B * h);
                const double gamma0 = static_cast<double>(d) * d * B * h;
                row["bound_M_overlay"] =
                    bound_m_formula(gamma0, gamma1, data.oracle.b_star, k);
                const long mean_m = std::max<long>(
                    1, static_cast<long>(row["mean_M"].get<double>()));
                row["beta_m_overlay"] = lsvi_beta(mean_m, d, B, h, 0.05);
                if (data.oracle.c_min > 0.0)
                    row["u_b_overlay"] = pf_interval_budget(std::max(1.0, data.oracle.b_star),
                                                            d, data.oracle.c_min, k,
                                                            PfConfig{});
                per_k.push_back(row);
                mean_points.emplace_back(static_cast<double>(k), mean);
            }
            group["per_K"] = per_k;
            if (mean_points.size() >= 3) {
                try {
                    const FitResult fit = fit_rate(mean_points);
                    group["fit_exponent"] = fit.exponent;
                    group["fit_stderr"] = fit.stderr_exponent;
                    group["fit_points"] = fit.used_points;
                } catch (const SsplabError& ex) {
                    group["fit_error"] = ex.what();
                }
            }
            groups[e.name + "/" + a.algo] = group;
        }
    }
    summary["groups"] = groups;
    result.summary.json = summary;
    std::ofstream sf(fs::path(cfg.out_dir) / "summary.json");
    sf << summary.dump(2) << "\n";
    return result;
}

InvariantTally invariant_suite(const std::string& run_dir, const OracleSolution* oracle,
                               const json& thresholds) {
    InvariantTally tally;
    const double slack_tol = thresholds.value("slack_tol", 1e-9);
    InvariantTally::Item interval_acct{"interval_accounting", 0, 0, 1.0, 1.0, true};
    InvariantTally::Item dummy_feed{"dummy_feed_correctness", 0, 0, 1.0, 1.0, true};
    InvariantTally::Item chaining{"interval_chaining", 0, 0, 1.0, 1.0, true};
    InvariantTally::Item slack{"lemma_fha_slack_nonneg", 0, 0, 1.0, 1.0, true};
    InvariantTally::Item rk_consistency{"r_k_recompute", 0, 0, 1.0, 1.0, true};

    if (!fs::exists(run_dir)) throw SsplabError("invariant_suite: missing dir " + run_dir);
    std::vector<fs::path> run_jsons;
    for (const auto& entry : fs::recursive_directory_iterator(run_dir))
        if (entry.is_regular_file() && entry.path().filename() == "run.json")
            run_jsons.push_back(entry.path());
    std::sort(run_jsons.begin(), run_jsons.end());
    if (run_jsons.empty()) throw SsplabError("invariant_suite: no run.json artifacts found");

    for (const fs::path& rj : run_jsons) {
        std::ifstream in(rj);
        json run;
        in >> run;
        if (run.contains("lemma_fha_slack") && run.value("terminal", "") == "two_b_star") {
            ++slack.checked;
            if (run.at("lemma_fha_slack").get<double>() < -slack_tol) ++slack.violations;
        }
        const fs::path trace_path = rj.parent_path() / "trace.csv";
        if (!fs::exists(trace_path)) continue;
        const std::vector<StepRecord> steps = read_trace_csv(trace_path.string());
        if (steps.empty()) continue;
        const bool interval_based = run.value("algo", "") != "vagopo";
        if (!interval_based) continue;

        const StateId goal = run.value("goal", -1);
        const StateId s_init = run.value("s_init", 0);
        long episodes = 0;
        double real_cost = 0.0;
        long m_cur = -1;
        bool seen_goal_in_interval = false;
        StateId prev_end = -1;
        long prev_k = -1;
        bool chain_ok = true, dummy_ok = true;
        for (const StepRecord& st : steps) {
            if (st.m != m_cur) {
                if (m_cur >= 0 && prev_k == st.k && prev_end != st.s) chain_ok = false;
                m_cur = st.m;
                seen_goal_in_interval = false;
            }
            if (seen_goal_in_interval &&
                !(st.dummy && st.cost == 0.0 && st.s == goal && st.s_next == goal))
                dummy_ok = false;
            if (!st.dummy) {
                real_cost += st.cost;
                if (st.s_next == goal) {
                    ++episodes;
                    seen_goal_in_interval = true;
                }
            }
            prev_end = st.s_next;
            prev_k = st.k;
        }
        ++interval_acct.checked;
        if (run.value("complete", false) && episodes != run.at("K").get<long>())
            ++interval_acct.violations;
        ++dummy_feed.checked;
        if (!dummy_ok) ++dummy_feed.violations;
        ++chaining.checked;
        if (!chain_ok) ++chaining.violations;
        const bool oracle_matches =
            oracle != nullptr && oracle->n_states == run.value("goal", -1) &&
            run.value("s_init", 0) < oracle->n_states;
        if (oracle_matches && run.value("complete", false)) {
            ++rk_consistency.checked;
            const double rk = real_cost - static_cast<double>(run.at("K").get<long>()) *
                                              oracle->v_star[s_init];
            if (std::fabs(rk - run.at("R_K").get<double>()) >
                1e-6 * std::max(1.0, std::fabs(rk)))
                ++rk_consistency.violations;
        }
    }

    for (InvariantTally::Item* item :
         {&interval_acct, &dummy_feed, &chaining, &slack, &rk_consistency}) {
        if (item->checked > 0) {
            item->rate = 1.0 - static_cast<double>(item->violations) /
                                   static_cast<double>(item->checked);
            item->pass = item->violations == 0;
        }
        tally.items.push_back(*item);
        tally.pass = tally.pass && item->pass;
    }
    return tally;
}

json InvariantTally::to_json() const {
    json j;
    j["pass"] = pass;
    json arr = json::array();
    for (const Item& it : items) {
        arr.push_back(json{{"name", it.name},
                           {"checked", it.checked},
                           {"violations", it.violations},
                           {"rate", it.rate},
                           {"threshold", it.threshold},
                           {"pass", it.pass}});
    }
    j["invariants"] = arr;
    return j;
}

}  // namespace ssplab
