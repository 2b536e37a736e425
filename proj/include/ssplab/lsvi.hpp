#pragma once

#include <functional>
#include <map>
#include <vector>

#include "ssplab/env.hpp"
#include "ssplab/linalg.hpp"
#include "ssplab/reduction.hpp"

namespace ssplab {

// Feature access handed to linear learners; phi(goal, a) = 0 by convention.
struct FeatureMap {
    int d = 0;
    int n_actions = 0;
    StateId goal = 0;
    std::function<void(StateId, int, double*)> write_phi;
};

FeatureMap make_feature_map(const LinearSsp& env);

struct LsviConfig {
    int H = 0;
    double B = 1.0;            // [0,B] projection cap, B >= 1
    double delta = 0.05;
    double lambda = 1.0;
    double bonus_scale = 1.0;  // 1.0 = exact beta_m; 0 disables the bonus (white-box tests)
    TerminalCostSpec c_f;      // V^m_{H+1}
};

// beta_m = 50 d B sqrt(ln(16 B m H d / delta))
double lsvi_beta(long m, int d, double B, int H, double delta);

// Optimistic least-squares value iteration with one covariance matrix shared
// across layers. History is kept compressed as per-(s,a) visit counts, cost
// sums and next-state counts, which reproduces the full-data regression sums
// exactly; the learner never reads the environment's state space size.
class LsviLearner : public FhLearner {
public:
    LsviLearner(FeatureMap phi, LsviConfig cfg);

    void begin_interval(StateId s1) override;
    int act(int h, StateId s) override;
    void observe(int h, StateId s, int a, double cost, StateId s_next) override;
    bool end_interval() override;

    // white-box surface for tests and invariant checks
    long interval_index() const { return m_; }
    double beta() const { return beta_m_; }
    double q_hat(int h, StateId s, int a) const;
    double q_value(int h, StateId s, int a) const;  // [0,B] projection of q_hat
    double value(int h, StateId s) const;           // h = H+1 gives c_f
    const Mat& covariance() const { return cov_; }
    const std::vector<Vec>& weights() const { return w_; }
    Mat recompute_covariance() const;  // lambda I + sum_history phi phi^T
    Vec regression_rhs(int h) const;   // sum_history phi (c + V^m_{h+1}(s'))
    long history_size() const { return history_steps_; }

private:
    struct PairStats {
        Vec phi;
        long n = 0;
        double cost_sum = 0.0;
        std::map<StateId, long> next_counts;
    };

    void fetch_phi(StateId s, int a, double* out) const;
    double value_uncached(int h, StateId s) const;

    FeatureMap phi_;
    LsviConfig cfg_;
    Mat cov_;
    std::unique_ptr<LdltFactor> cov_factor_;
    std::map<std::pair<StateId, int>, PairStats> history_;
    long history_steps_ = 0;
    std::vector<std::pair<StateId, int>> interval_visits_;
    std::vector<Vec> w_;  // per layer, w_[h-1]
    long m_ = 1;
    double beta_m_ = 0.0;
    bool in_interval_ = false;
    bool anomaly_ = false;
    mutable std::map<std::pair<int, StateId>, double> value_cache_;
    mutable Vec phi_buf_;
};

}  // namespace ssplab
