#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ssplab/env.hpp"
#include "ssplab/oracle.hpp"
#include "ssplab/reduction.hpp"

namespace ssplab {

struct HPolicy {
    enum class Kind { fixed, auto_4tstar, auto_log } kind = Kind::auto_4tstar;
    int value = 0;         // fixed
    double b_prime = 1.0;  // auto_log
};

// auto_4tstar: ceil(4 T* ln(4K)); auto_log: ceil(b' B*/c_min ln(d B* K / c_min))
int resolve_horizon(const HPolicy& policy, const OracleSolution& oracle, long K, int d);

struct AlgoSpec {
    std::string algo;  // lsvi | mvp | vtr | vagopo
    nlohmann::json params;
};

struct EnvEntry {
    std::string name;
    EnvAny env;
};

struct ExperimentConfig {
    std::vector<EnvEntry> envs;
    std::vector<AlgoSpec> algos;
    std::vector<long> ks;
    std::vector<std::uint64_t> seeds;
    HPolicy h_policy;
    std::string terminal = "two_b_star";  // or "zero"
    std::string out_dir;
    bool record_steps = true;
    std::optional<long> step_cap;
    double oracle_tol = 1e-10;
    nlohmann::json thresholds;  // echoed into reports
};

ExperimentConfig parse_experiment_config(const nlohmann::json& j, const std::string& base_dir);

struct RunOutcome {
    std::string run_name;
    std::string env_name;
    std::string algo;
    long K = 0;
    std::uint64_t seed = 0;
    int H = 0;
    StateId s_init = 0;
    StateId goal = 0;
    std::string terminal;
    RegretReport regret;
    nlohmann::json diagnostics;
    std::string dir;
};

struct FitResult {
    double exponent = 0.0;
    double intercept = 0.0;
    double stderr_exponent = 0.0;
    int used_points = 0;
    std::vector<std::string> warnings;
};

// OLS of ln R on ln K; nonpositive R points are dropped with a warning and
// fewer than 3 surviving points is an error.
FitResult fit_rate(const std::vector<std::pair<double, double>>& points);

struct SummaryReport {
    nlohmann::json json;  // full machine-readable summary
};

struct ExperimentResult {
    std::vector<RunOutcome> runs;
    SummaryReport summary;
    std::map<std::string, OracleSolution> oracles;  // per env name
};

// Runs the full cross product envs x algos x K x seeds on a worker pool
// (SSPLAB_WORKERS overrides the size), writes one trace CSV and one run.json
// per run plus summary.json, and returns everything in memory.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

int worker_pool_size();

struct InvariantTally {
    struct Item {
        std::string name;
        long checked = 0;
        long violations = 0;
        double rate = 1.0;
        double threshold = 1.0;
        bool pass = true;
    };
    std::vector<Item> items;
    bool pass = true;
    nlohmann::json to_json() const;
};

// Replays run artifacts from disk and tallies the trace-level invariants plus
// the learner diagnostics against thresholds (config keys: optimism_rate,
// slack_tol, ...). oracle, when provided, re-verifies R_K of recorded traces.
InvariantTally invariant_suite(const std::string& run_dir, const OracleSolution* oracle,
                               const nlohmann::json& thresholds);

// One run.json worth of data (used by the CLI and the acceptance suite).
nlohmann::json run_outcome_to_json(const RunOutcome& run);

}  // namespace ssplab
