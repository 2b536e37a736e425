#include "ssplab/reduction.hpp"

#include <cmath>
#include <limits>

namespace ssplab {

namespace {

class DriveController {
public:
    virtual ~DriveController() = default;
    virtual FhLearner& learner() = 0;
    virtual int horizon() const = 0;
    virtual int epoch() const { return 1; }
    virtual double b_value() const { return 0.0; }
    virtual void after_interval(long m, bool anomaly, bool reached_goal, RunTrace& trace) {
        (void)m; (void)anomaly; (void)reached_goal; (void)trace;
    }
};

RunTrace drive(const TabularSsp& env, DriveController& ctl, const ReductionConfig& cfg,
               Rng& rng) {
    if (cfg.K < 1) throw SsplabError("reduction: K must be >= 1");
    RunTrace tr;
    tr.record_steps = cfg.record_steps;
    tr.s_init = env.s_init;
    tr.H = ctl.horizon();
    tr.terminal = cfg.terminal_cost;
    tr.target_episodes = cfg.K;
    const StateId goal = env.goal();
    const long step_cap = cfg.step_cap.value_or(50L * cfg.K * ctl.horizon());

    long t = 0;
    long m = 0;
    long k = 1;
    StateId s1 = env.s_init;
    while (tr.episodes_completed < cfg.K) {
        if (tr.total_real_steps >= step_cap) {
            tr.step_capped = true;
            break;
        }
        const int H = ctl.horizon();
        FhLearner& learner = ctl.learner();
        learner.begin_interval(s1);
        StateId s = s1;
        double cost_sum = 0.0;
        for (int h = 1; h <= H; ++h) {
            const int a = learner.act(h, s);
            double cost;
            StateId s_next;
            bool dummy;
            if (s != goal) {
                cost = env.cost(s, a);
                s_next = sample_transition(env, s, a, rng);
                dummy = false;
                ++tr.total_real_steps;
                tr.total_real_cost += cost;
            } else {
                cost = 0.0;
                s_next = goal;
                dummy = true;
            }
            ++t;
            cost_sum += cost;
            if (tr.record_steps)
                tr.steps.push_back(StepRecord{t, k, m + 1, h, s, a, cost, s_next, dummy,
                                              ctl.epoch(), ctl.b_value(), {}});
            learner.observe(h, s, a, cost, s_next);
            s = s_next;
        }
        const bool anomaly = learner.end_interval();
        ++m;
        tr.intervals.push_back(IntervalRecord{m, k, s1, s, cost_sum, s == goal, H, ctl.epoch(),
                                              ctl.b_value()});
        if (s == goal) {
            ++tr.episodes_completed;
            ++k;
            s1 = env.s_init;
        } else {
            s1 = s;
        }
        ctl.after_interval(m, anomaly, s == goal, tr);
    }
    tr.total_records = t;
    tr.complete = tr.episodes_completed == cfg.K;
    return tr;
}

}  // namespace

RunTrace run_fha(const TabularSsp& env, FhLearner& learner, const ReductionConfig& cfg,
                 Rng& rng) {
    if (cfg.restart_threshold || cfg.pf)
        throw SsplabError("run_fha: use run_fha_restart / run_fha_pf for those configs");
    class Plain : public DriveController {
    public:
        Plain(FhLearner& l, int h) : l_(l), h_(h) {}
        FhLearner& learner() override { return l_; }
        int horizon() const override { return h_; }

    private:
        FhLearner& l_;
        int h_;
    } ctl(learner, cfg.H);
    return drive(env, ctl, cfg, rng);
}

RunTrace run_fha_restart(const TabularSsp& env, const LearnerFactory& make_learner,
                         const ReductionConfig& cfg, Rng& rng) {
    if (!cfg.restart_threshold) throw SsplabError("run_fha_restart: restart_threshold missing");
    if (*cfg.restart_threshold < 1) throw SsplabError("run_fha_restart: threshold must be >= 1");
    class Restart : public DriveController {
    public:
        Restart(const LearnerFactory& make, int h, long m_prime)
            : make_(make), l_(make()), h_(h), m_prime_(m_prime) {}
        FhLearner& learner() override { return *l_; }
        int horizon() const override { return h_; }
        void after_interval(long m, bool, bool, RunTrace& tr) override {
            if (m % m_prime_ == 0) {
                l_ = make_();
                tr.events.emplace_back(m, "restart");
            }
        }

    private:
        const LearnerFactory& make_;
        std::unique_ptr<FhLearner> l_;
        int h_;
        long m_prime_;
    } ctl(make_learner, cfg.H, *cfg.restart_threshold);
    return drive(env, ctl, cfg, rng);
}

int pf_horizon(double B, double c_min, long K) {
    if (c_min <= 0.0) throw SsplabError("pf_horizon: c_min must be positive");
    return static_cast<int>(
        std::ceil(10.0 * B / c_min * std::log(8.0 * B * static_cast<double>(K))));
}

double pf_interval_budget(double B, int d, double c_min, long K, const PfConfig& cfg) {
    const double H = pf_horizon(B, c_min, K);
    const double gamma0 = static_cast<double>(d) * d * B * H;
    const double gamma1 = std::sqrt(static_cast<double>(d) * d * d * B * B * H);
    const double base = cfg.u_c0 * gamma0 / B +
                        cfg.u_c1 * (gamma1 * gamma1 / (B * B) +
                                    gamma1 * std::sqrt(static_cast<double>(K)) / B) +
                        H;
    const double lg = std::log(std::max(std::exp(1.0), 8.0 * B * static_cast<double>(K)));
    return base * std::pow(lg, cfg.u_log_power);
}

RunTrace run_fha_pf(const TabularSsp& env, const PfLearnerFactory& make_learner,
                    const ReductionConfig& cfg, const PfEnvInfo& info, Rng& rng) {
    if (!cfg.pf) throw SsplabError("run_fha_pf: pf config missing");
    if (info.c_min <= 0.0) throw SsplabError("run_fha_pf: c_min must be positive");
    if (cfg.terminal_cost.kind != TerminalCostSpec::Kind::zero)
        throw SsplabError("run_fha_pf: the adaptive reduction runs with zero terminal costs");
    class Adaptive : public DriveController {
    public:
        Adaptive(const PfLearnerFactory& make, const PfConfig& pf, const PfEnvInfo& info, long K)
            : make_(make), pf_(pf), info_(info), K_(K), b_(pf.b_init) {
            h_ = pf_horizon(b_, info_.c_min, K_);
            l_ = make_(b_, h_);
        }
        FhLearner& learner() override { return *l_; }
        int horizon() const override { return h_; }
        int epoch() const override { return epoch_; }
        double b_value() const override { return b_; }
        void after_interval(long m, bool anomaly, bool reached_goal, RunTrace& tr) override {
            if (!reached_goal) ++bad_;
            if (static_cast<double>(bad_) > pf_interval_budget(b_, info_.d, info_.c_min, K_, pf_) ||
                anomaly) {
                b_ *= 2.0;
                h_ = pf_horizon(b_, info_.c_min, K_);
                l_ = make_(b_, h_);
                bad_ = 0;
                ++epoch_;
                tr.events.emplace_back(m, anomaly ? "b_double_anomaly" : "b_double_budget");
            }
        }

    private:
        const PfLearnerFactory& make_;
        PfConfig pf_;
        PfEnvInfo info_;
        long K_;
        double b_;
        int h_ = 0;
        std::unique_ptr<FhLearner> l_;
        long bad_ = 0;
        int epoch_ = 1;
    } ctl(make_learner, *cfg.pf, info, cfg.K);
    return drive(env, ctl, cfg, rng);
}

RegretReport compute_regret(const RunTrace& trace, const OracleSolution& oracle,
                            const FhOracleSolution* fh_oracle) {
    RegretReport rep;
    rep.m = static_cast<long>(trace.intervals.size());
    rep.complete = trace.complete;
    for (const IntervalRecord& iv : trace.intervals)
        if (!iv.reached_goal) ++rep.bad_intervals;
    rep.r_k = trace.total_real_cost -
              static_cast<double>(trace.episodes_completed) * oracle.v_star[trace.s_init];

    bool uniform_h = fh_oracle != nullptr && !trace.intervals.empty();
    if (fh_oracle)
        for (const IntervalRecord& iv : trace.intervals)
            if (iv.H != fh_oracle->H) uniform_h = false;
    if (uniform_h && fh_oracle) {
        double r_tilde = 0.0;
        const StateId goal = static_cast<StateId>(fh_oracle->n_states);
        for (const IntervalRecord& iv : trace.intervals) {
            const double cf = iv.s_end == goal ? 0.0 : trace.terminal.at(iv.s_end, goal);
            r_tilde += iv.cost_sum + cf - fh_oracle->v_at(1, iv.s1);
        }
        rep.r_tilde_m = r_tilde;
        rep.lemma_fha_slack = r_tilde + oracle.b_star - rep.r_k;
    } else {
        rep.r_tilde_m = std::numeric_limits<double>::quiet_NaN();
        rep.lemma_fha_slack = std::numeric_limits<double>::quiet_NaN();
    }
    return rep;
}

double bound_m_formula(double gamma0, double gamma1, double b_star, double K) {
    if (b_star <= 0.0 || K <= 0.0 || gamma0 < 0.0 || gamma1 < 0.0)
        throw SsplabError("bound_m_formula: inputs must be positive");
    return K + gamma1 * gamma1 / (b_star * b_star) + gamma0 / b_star;
}

}  // namespace ssplab
