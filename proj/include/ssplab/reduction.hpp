#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "ssplab/env.hpp"
#include "ssplab/oracle.hpp"
#include "ssplab/trace.hpp"

namespace ssplab {

// Interval protocol every finite-horizon learner implements. The driver calls
// begin_interval, then exactly H (act, observe) pairs, then end_interval.
// end_interval returns true when the learner flags an anomaly (its value cap B
// looks too small); only the adaptive driver reacts to it.
class FhLearner {
public:
    virtual ~FhLearner() = default;
    virtual void begin_interval(StateId s1) = 0;
    virtual int act(int h, StateId s) = 0;
    virtual void observe(int h, StateId s, int a, double cost, StateId s_next) = 0;
    virtual bool end_interval() = 0;
};

struct PfConfig {
    double b_init = 1.0;
    double u_c0 = 1.0;
    double u_c1 = 1.0;
    int u_log_power = 1;
};

struct ReductionConfig {
    long K = 0;
    int H = 0;
    TerminalCostSpec terminal_cost;
    std::optional<long> restart_threshold;  // M'
    std::optional<long> step_cap;           // real steps; default 50*K*H
    std::optional<PfConfig> pf;
    bool record_steps = true;
};

using LearnerFactory = std::function<std::unique_ptr<FhLearner>()>;
// B and the epoch horizon are handed to the factory by the adaptive driver.
using PfLearnerFactory = std::function<std::unique_ptr<FhLearner>(double B, int H)>;

RunTrace run_fha(const TabularSsp& env, FhLearner& learner, const ReductionConfig& cfg, Rng& rng);
RunTrace run_fha_restart(const TabularSsp& env, const LearnerFactory& make_learner,
                         const ReductionConfig& cfg, Rng& rng);

struct PfEnvInfo {
    double c_min = 0.0;  // must be > 0 (perturb costs first otherwise)
    int d = 0;           // learner feature dimension, used by U(B)
};

RunTrace run_fha_pf(const TabularSsp& env, const PfLearnerFactory& make_learner,
                    const ReductionConfig& cfg, const PfEnvInfo& info, Rng& rng);

// H = ceil((10 B / c_min) ln(8 B K)) for the zero-terminal-cost epochs.
int pf_horizon(double B, double c_min, long K);
// Bad-interval budget U(B); constants are configurable because the source
// bound hides them (see PfConfig and README).
double pf_interval_budget(double B, int d, double c_min, long K, const PfConfig& cfg);

struct RegretReport {
    double r_k = 0.0;
    double r_tilde_m = 0.0;  // NaN when the trace has non-uniform horizons
    long m = 0;
    long bad_intervals = 0;
    double lemma_fha_slack = 0.0;  // R~_M + B* - R_K
    bool complete = false;
};

RegretReport compute_regret(const RunTrace& trace, const OracleSolution& oracle,
                            const FhOracleSolution* fh_oracle);

// K + gamma1^2/B*^2 + gamma0/B* (diagnostic overlay for the interval count)
double bound_m_formula(double gamma0, double gamma1, double b_star, double K);

}  // namespace ssplab
