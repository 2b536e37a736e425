#pragma once

#include <vector>

#include "ssplab/env.hpp"
#include "ssplab/reduction.hpp"

namespace ssplab {

// iota_{s,a} = 20 ln(2 S A max{1,n} / delta); max{1,n} keeps the log defined
// at n = 0, matching the max{1,n} convention of the bonus denominators.
double mvp_iota(long n, long sa_pairs, double delta);

// max{ 7 sqrt(var * iota / max{1,n}), 49 B iota / max{1,n} }
double mvp_bonus(long n, double var, double B, long sa_pairs, double delta);

struct MvpConfig {
    int n_states = 0;
    int n_actions = 0;
    int H = 0;
    double B = 1.0;  // input estimate >= B*
    double delta = 0.05;
};

// MVP+ with Bernstein-style bonuses and doubling-count recomputes. Costs are
// known and read from the environment; V_{H+1} is identically zero, so this
// learner pairs with zero-terminal-cost reductions.
class MvpLearner : public FhLearner {
public:
    MvpLearner(MvpConfig cfg, const TabularSsp& env);

    void begin_interval(StateId s1) override;
    int act(int h, StateId s) override;
    void observe(int h, StateId s, int a, double cost, StateId s_next) override;
    bool end_interval() override;

    void recompute();  // full backward sweep; callable directly for tests
    bool pending_recompute() const { return pending_; }

    long count(StateId s, int a) const { return n_[idx(s, a)]; }
    long count3(StateId s, int a, StateId next) const {
        return n3_[idx(s, a) * static_cast<std::size_t>(S_ + 1) + next];
    }
    long total_observations() const { return total_obs_; }
    double q(int h, StateId s, int a) const {
        return q_[(static_cast<std::size_t>(h - 1) * S_ + s) * A_ + a];
    }
    double v(int h, StateId s) const {
        return h == H_ + 1 ? 0.0 : v_[static_cast<std::size_t>(h - 1) * S_ + s];
    }
    double last_min_bonus() const { return min_bonus_; }

private:
    std::size_t idx(StateId s, int a) const { return static_cast<std::size_t>(s) * A_ + a; }

    int S_, A_, H_;
    MvpConfig cfg_;
    Vec cost_;                 // known c~, S x A
    std::vector<long> n_;      // S x A
    std::vector<long> n3_;     // S x A x (S+1)
    Vec q_;                    // H x S x A
    Vec v_;                    // H x S
    bool pending_ = true;
    long total_obs_ = 0;
    double min_bonus_ = 0.0;
};

}  // namespace ssplab
