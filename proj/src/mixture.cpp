#include "ssplab/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "ssplab/kernels.hpp"

namespace ssplab {

std::array<double, 3> vtr_betas(long m, int d, int H, double B_star, double lambda,
                                double delta) {
    if (m < 1) throw SsplabError("vtr_betas: m must be >= 1");
    const double md = static_cast<double>(m);
    const double log_cov = std::log(4.0 * md * md * H * H / delta);
    const double sqrt_ld = std::sqrt(lambda * d);
    const double beta_hat =
        8.0 * std::sqrt(d * std::log(1.0 + d * md * H / lambda) * log_cov) +
        4.0 * std::sqrt(static_cast<double>(d)) * log_cov + sqrt_ld;
    const double b2 = B_star * B_star;
    const double beta_tilde =
        72.0 * b2 * std::sqrt(d * std::log(1.0 + 81.0 * d * md * H * b2 * b2 / lambda) * log_cov) +
        36.0 * b2 * log_cov + sqrt_ld;
    const double beta_check =
        8.0 * d * std::sqrt(std::log(1.0 + d * md * H / lambda) * log_cov) +
        4.0 * std::sqrt(static_cast<double>(d)) * log_cov + sqrt_ld;
    return {beta_hat, beta_tilde, beta_check};
}

double vtr_sigma_bar(double nu, double E, double B_star, int d) {
    return std::sqrt(std::max(9.0 * B_star * B_star / d, nu + E));
}

VtrLearner::VtrLearner(const LinearMixtureSsp& env, VtrConfig cfg)
    : env_(&env),
      cfg_(cfg),
      S_(env.n_states),
      A_(env.n_actions),
      d_(env.d),
      sigma_hat_(Mat::identity(env.d)),
      sigma_tilde_(Mat::identity(env.d)) {
    if (cfg_.H < 1) throw SsplabError("VtrLearner: H must be >= 1");
    kernels::scal(cfg_.lambda, sigma_hat_.a.data(), sigma_hat_.a.size());
    kernels::scal(cfg_.lambda, sigma_tilde_.a.data(), sigma_tilde_.a.size());
    b_hat_.assign(d_, 0.0);
    b_tilde_.assign(d_, 0.0);
    theta_hat_.assign(d_, 0.0);
    theta_tilde_.assign(d_, 0.0);
    q_.assign(static_cast<std::size_t>(cfg_.H) * S_ * A_, 0.0);
    v_.assign(static_cast<std::size_t>(cfg_.H + 1) * S_, 0.0);
}

double VtrLearner::v(int h, StateId s) const {
    if (h == cfg_.H + 1) return s == S_ ? 0.0 : 2.0 * cfg_.B_star;
    if (s == S_) return 0.0;
    return v_[static_cast<std::size_t>(h - 1) * S_ + s];
}

Vec VtrLearner::phi_for_value(StateId s, int a, int h_next, bool squared) const {
    Vec out(d_, 0.0);
    if (s == S_) {
        // from the goal the only reachable state is the goal, whose value is 0
        return out;
    }
    for (StateId next = 0; next < S_; ++next) {
        double vv = v(h_next, next);
        if (squared) vv *= vv;
        if (vv != 0.0) kernels::axpy(vv, env_->phi_at(s, a, next), out.data(), d_);
    }
    return out;
}

double VtrLearner::sigma_hat_norm(const Vec& x) const {
    LdltFactor f(sigma_hat_);
    return std::sqrt(std::max(0.0, f.quad_inv(x)));
}

void VtrLearner::backward_pass() {
    const auto betas_m = vtr_betas(m_, d_, cfg_.H, cfg_.B_star, cfg_.lambda, cfg_.delta);
    const double beta_hat = bonus_scale_ * betas_m[0];
    for (int h = cfg_.H; h >= 1; --h) {
        for (StateId s = 0; s < S_; ++s) {
            double best = 3.0 * cfg_.B_star;
            for (int a = 0; a < A_; ++a) {
                const Vec phi_v = phi_for_value(s, a, h + 1, false);
                const double lin = kernels::dot(phi_v.data(), theta_hat_.data(), d_);
                const double bonus =
                    std::sqrt(std::max(0.0, hat_factor_->quad_inv(phi_v.data())));
                const double qa = env_->cost(s, a) + lin - beta_hat * bonus;
                q_[(static_cast<std::size_t>(h - 1) * S_ + s) * A_ + a] = qa;
                best = std::min(best, std::clamp(qa, 0.0, 3.0 * cfg_.B_star));
            }
            v_[static_cast<std::size_t>(h - 1) * S_ + s] = best;
        }
    }
}

void VtrLearner::begin_interval(StateId) {
    if (in_interval_) throw SsplabError("VtrLearner: begin_interval called twice");
    in_interval_ = true;
    diag_.clear();
    hat_factor_ = std::make_unique<LdltFactor>(sigma_hat_);
    tilde_factor_ = std::make_unique<LdltFactor>(sigma_tilde_);
    backward_pass();
}

int VtrLearner::act(int h, StateId s) {
    if (!in_interval_) throw SsplabError("VtrLearner: act outside an interval");
    if (s == S_) return 0;
    const int hh = std::min(h, cfg_.H);
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

void VtrLearner::observe(int h, StateId s, int a, double, StateId s_next) {
    if (!in_interval_) throw SsplabError("VtrLearner: observe outside an interval");
    const auto betas_m = vtr_betas(m_, d_, cfg_.H, cfg_.B_star, cfg_.lambda, cfg_.delta);
    const double b2 = cfg_.B_star * cfg_.B_star;
    const Vec phi_v = phi_for_value(s, a, h + 1, false);
    const Vec phi_v2 = phi_for_value(s, a, h + 1, true);
    const double mean_est =
        std::clamp(kernels::dot(phi_v.data(), theta_hat_.data(), d_), 0.0, 3.0 * cfg_.B_star);
    const double sq_est =
        std::clamp(kernels::dot(phi_v2.data(), theta_tilde_.data(), d_), 0.0, 9.0 * b2);
    const double nu = sq_est - mean_est * mean_est;
    const double e1 = std::min(
        9.0 * b2,
        betas_m[1] * std::sqrt(std::max(0.0, tilde_factor_->quad_inv(phi_v2.data()))));
    const double e2 = std::min(
        9.0 * b2, 6.0 * cfg_.B_star * betas_m[2] *
                      std::sqrt(std::max(0.0, hat_factor_->quad_inv(phi_v.data()))));
    const double E = e1 + e2;
    diag_.push_back(VtrStepDiag{h, s, a, s_next, nu, E, vtr_sigma_bar(nu, E, cfg_.B_star, d_)});
}

bool VtrLearner::end_interval() {
    if (!in_interval_) throw SsplabError("VtrLearner: end_interval outside an interval");
    in_interval_ = false;
    for (const VtrStepDiag& st : diag_) {
        const Vec phi_v = phi_for_value(st.s, st.a, st.h + 1, false);
        const Vec phi_v2 = phi_for_value(st.s, st.a, st.h + 1, true);
        const double w = 1.0 / (st.sigma_bar * st.sigma_bar);
        kernels::rank1_update(sigma_hat_.a.data(), d_, w, phi_v.data());
        kernels::rank1_update(sigma_tilde_.a.data(), d_, 1.0, phi_v2.data());
        const double v_next = st.s_next == S_ ? 0.0 : v(st.h + 1, st.s_next);
        kernels::axpy(w * v_next, phi_v.data(), b_hat_.data(), d_);
        kernels::axpy(v_next * v_next, phi_v2.data(), b_tilde_.data(), d_);
    }
    sigma_hat_.symmetrize();
    sigma_tilde_.symmetrize();
    theta_hat_ = LdltFactor(sigma_hat_).solve(b_hat_);
    theta_tilde_ = LdltFactor(sigma_tilde_).solve(b_tilde_);
    ++m_;
    return false;
}

std::array<double, 3> VtrLearner::betas() const {
    return vtr_betas(m_, d_, cfg_.H, cfg_.B_star, cfg_.lambda, cfg_.delta);
}

void VtrLearner::force_theta_hat(const Vec& theta) { theta_hat_ = theta; }

void VtrLearner::force_theta_tilde(const Vec& theta) { theta_tilde_ = theta; }

}  // namespace ssplab
