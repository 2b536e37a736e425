#include "ssplab/tabular_hf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ssplab {

double mvp_iota(long n, long sa_pairs, double delta) {
    const double nn = static_cast<double>(std::max<long>(1, n));
    return 20.0 * std::log(2.0 * static_cast<double>(sa_pairs) * nn / delta);
}

double mvp_bonus(long n, double var, double B, long sa_pairs, double delta) {
    const double nn = static_cast<double>(std::max<long>(1, n));
    const double iota = mvp_iota(n, sa_pairs, delta);
    const double bernstein = 7.0 * std::sqrt(std::max(0.0, var) * iota / nn);
    const double range = 49.0 * B * iota / nn;
    return std::max(bernstein, range);
}

MvpLearner::MvpLearner(MvpConfig cfg, const TabularSsp& env)
    : S_(cfg.n_states), A_(cfg.n_actions), H_(cfg.H), cfg_(cfg) {
    if (S_ != env.n_states || A_ != env.n_actions)
        throw SsplabError("MvpLearner: config does not match environment");
    if (H_ < 1) throw SsplabError("MvpLearner: H must be >= 1");
    cost_ = env.c;
    n_.assign(static_cast<std::size_t>(S_) * A_, 0);
    n3_.assign(static_cast<std::size_t>(S_) * A_ * (S_ + 1), 0);
    q_.assign(static_cast<std::size_t>(H_) * S_ * A_, 0.0);
    v_.assign(static_cast<std::size_t>(H_) * S_, 0.0);
    recompute();
}

void MvpLearner::begin_interval(StateId) {}

int MvpLearner::act(int h, StateId s) {
    if (s == S_) return 0;  // goal: action is irrelevant
    if (pending_) recompute();
    const int hh = std::min(h, H_);
    int best = 0;
    double best_q = q(hh, s, 0);
    for (int a = 1; a < A_; ++a) {
        const double qa = q(hh, s, a);
        if (qa < best_q) {
            best_q = qa;
            best = a;
        }
    }
    return best;
}

void MvpLearner::observe(int, StateId s, int a, double, StateId s_next) {
    if (s == S_) return;  // dummy goal feed
    auto& n = n_[idx(s, a)];
    n += 1;
    n3_[idx(s, a) * static_cast<std::size_t>(S_ + 1) + s_next] += 1;
    ++total_obs_;
    if ((n & (n - 1)) == 0) pending_ = true;  // n hit a power of two
}

bool MvpLearner::end_interval() { return false; }

void MvpLearner::recompute() {
    pending_ = false;
    const long sa_pairs = static_cast<long>(S_) * A_;
    min_bonus_ = std::numeric_limits<double>::infinity();
    Vec p_hat(S_ + 1);
    for (int h = H_; h >= 1; --h) {
        const double* v_next =
            h == H_ ? nullptr : v_.data() + static_cast<std::size_t>(h) * S_;
        for (StateId s = 0; s < S_; ++s) {
            for (int a = 0; a < A_; ++a) {
                const long n = n_[idx(s, a)];
                const double nn = static_cast<double>(std::max<long>(1, n));
                double mean = 0.0, mean_sq = 0.0;
                for (StateId next = 0; next <= S_; ++next) {
                    const long cnt = n3_[idx(s, a) * static_cast<std::size_t>(S_ + 1) + next];
                    if (cnt == 0) continue;
                    const double pr = static_cast<double>(cnt) / nn;
                    const double vv = (next == S_ || v_next == nullptr) ? 0.0 : v_next[next];
                    mean += pr * vv;
                    mean_sq += pr * vv * vv;
                }
                const double var = std::max(0.0, mean_sq - mean * mean);
                const double b = mvp_bonus(n, var, cfg_.B, sa_pairs, cfg_.delta);
                min_bonus_ = std::min(min_bonus_, b);
                q_[(static_cast<std::size_t>(h - 1) * S_ + s) * A_ + a] =
                    std::max(0.0, cost_[idx(s, a)] + mean - b);
            }
            double best = q(h, s, 0);
            for (int a = 1; a < A_; ++a) best = std::min(best, q(h, s, a));
            v_[static_cast<std::size_t>(h - 1) * S_ + s] = best;
        }
    }
}

}  // namespace ssplab
