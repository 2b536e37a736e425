#include "ssplab/lsvi.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "ssplab/kernels.hpp"

namespace ssplab {

FeatureMap make_feature_map(const LinearSsp& env) {
    FeatureMap fm;
    fm.d = env.d;
    fm.n_actions = env.n_actions;
    fm.goal = env.goal();
    fm.write_phi = [&env](StateId s, int a, double* out) {
        if (s == env.goal()) {
            std::fill(out, out + env.d, 0.0);
        } else {
            std::memcpy(out, env.phi_at(s, a), sizeof(double) * env.d);
        }
    };
    return fm;
}

double lsvi_beta(long m, int d, double B, int H, double delta) {
    if (m < 1) throw SsplabError("lsvi_beta: m must be >= 1");
    return 50.0 * d * B *
           std::sqrt(std::log(16.0 * B * static_cast<double>(m) * H * d / delta));
}

LsviLearner::LsviLearner(FeatureMap phi, LsviConfig cfg)
    : phi_(std::move(phi)), cfg_(cfg), cov_(Mat::identity(phi_.d)) {
    if (cfg_.H < 1) throw SsplabError("LsviLearner: H must be >= 1");
    if (cfg_.B < 1.0) throw SsplabError("LsviLearner: B must be >= 1");
    kernels::scal(cfg_.lambda, cov_.a.data(), cov_.a.size());
    w_.assign(cfg_.H, Vec(phi_.d, 0.0));
    phi_buf_.assign(phi_.d, 0.0);
}

void LsviLearner::fetch_phi(StateId s, int a, double* out) const {
    phi_.write_phi(s, a, out);
}

void LsviLearner::begin_interval(StateId) {
    if (in_interval_) throw SsplabError("LsviLearner: begin_interval called twice");
    in_interval_ = true;
    anomaly_ = false;
    interval_visits_.clear();
    value_cache_.clear();
    beta_m_ = cfg_.bonus_scale * lsvi_beta(m_, phi_.d, cfg_.B, cfg_.H, cfg_.delta);
    cov_factor_ = std::make_unique<LdltFactor>(cov_);

    // Backward pass: the regression for layer h uses the whole history with
    // targets re-evaluated under this interval's V^m_{h+1}.
    const int d = phi_.d;
    Vec rhs(d);
    for (int h = cfg_.H; h >= 1; --h) {
        std::fill(rhs.begin(), rhs.end(), 0.0);
        for (const auto& [key, st] : history_) {
            double target = st.cost_sum;
            for (const auto& [s_next, count] : st.next_counts) {
                if (count == 0) continue;
                const double v = value(h + 1, s_next);
                if (v != 0.0) target += static_cast<double>(count) * v;
            }
            kernels::axpy(target, st.phi.data(), rhs.data(), d);
        }
        w_[h - 1] = cov_factor_->solve(rhs);
    }
}

double LsviLearner::q_hat(int h, StateId s, int a) const {
    fetch_phi(s, a, phi_buf_.data());
    const double lin = kernels::dot(phi_buf_.data(), w_[h - 1].data(), phi_.d);
    const double bonus = std::sqrt(std::max(0.0, cov_factor_->quad_inv(phi_buf_.data())));
    return lin - beta_m_ * bonus;
}

double LsviLearner::q_value(int h, StateId s, int a) const {
    return std::clamp(q_hat(h, s, a), 0.0, cfg_.B);
}

double LsviLearner::value_uncached(int h, StateId s) const {
    if (h == cfg_.H + 1) return cfg_.c_f.at(s, phi_.goal);
    if (s == phi_.goal) return 0.0;
    double best = q_value(h, s, 0);
    for (int a = 1; a < phi_.n_actions; ++a) best = std::min(best, q_value(h, s, a));
    return best;
}

double LsviLearner::value(int h, StateId s) const {
    const auto key = std::make_pair(h, s);
    auto it = value_cache_.find(key);
    if (it != value_cache_.end()) return it->second;
    const double v = value_uncached(h, s);
    value_cache_.emplace(key, v);
    return v;
}

int LsviLearner::act(int h, StateId s) {
    if (!in_interval_) throw SsplabError("LsviLearner: act outside an interval");
    int best = 0;
    double best_q = q_value(h, s, 0);
    for (int a = 1; a < phi_.n_actions; ++a) {
        const double q = q_value(h, s, a);
        if (q < best_q) {
            best_q = q;
            best = a;
        }
    }
    if (q_hat(h, s, best) > cfg_.B) anomaly_ = true;  // upper truncation on a visited pair
    return best;
}

void LsviLearner::observe(int h, StateId s, int a, double cost, StateId s_next) {
    if (!in_interval_) throw SsplabError("LsviLearner: observe outside an interval");
    (void)h;
    if (s == phi_.goal) return;  // phi(g,.) = 0 contributes nothing
    auto& st = history_[std::make_pair(s, a)];
    if (st.phi.empty()) {
        st.phi.assign(phi_.d, 0.0);
        fetch_phi(s, a, st.phi.data());
    }
    st.n += 1;
    st.cost_sum += cost;
    st.next_counts[s_next] += 1;
    ++history_steps_;
    interval_visits_.emplace_back(s, a);
}

bool LsviLearner::end_interval() {
    if (!in_interval_) throw SsplabError("LsviLearner: end_interval outside an interval");
    in_interval_ = false;
    for (const auto& [s, a] : interval_visits_) {
        fetch_phi(s, a, phi_buf_.data());
        kernels::rank1_update(cov_.a.data(), phi_.d, 1.0, phi_buf_.data());
    }
    cov_.symmetrize();
    ++m_;
    const bool flag = anomaly_;
    anomaly_ = false;
    return flag;
}

Mat LsviLearner::recompute_covariance() const {
    Mat m = Mat::identity(phi_.d);
    kernels::scal(cfg_.lambda, m.a.data(), m.a.size());
    for (const auto& [key, st] : history_)
        kernels::rank1_update(m.a.data(), phi_.d, static_cast<double>(st.n), st.phi.data());
    return m;
}

Vec LsviLearner::regression_rhs(int h) const {
    Vec rhs(phi_.d, 0.0);
    for (const auto& [key, st] : history_) {
        double target = st.cost_sum;
        for (const auto& [s_next, count] : st.next_counts)
            target += static_cast<double>(count) * value(h + 1, s_next);
        kernels::axpy(target, st.phi.data(), rhs.data(), phi_.d);
    }
    return rhs;
}

}  // namespace ssplab
