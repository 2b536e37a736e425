#pragma once

#include <array>
#include <memory>
#include <vector>

#include "ssplab/env.hpp"
#include "ssplab/linalg.hpp"
#include "ssplab/reduction.hpp"

namespace ssplab {

// (beta_hat, beta_tilde, beta_check) at interval m.
std::array<double, 3> vtr_betas(long m, int d, int H, double B_star, double lambda,
                                double delta);

// sigma_bar = sqrt(max{9 B*^2 / d, nu + E})
double vtr_sigma_bar(double nu, double E, double B_star, int d);

struct VtrConfig {
    int H = 0;
    double B_star = 1.0;
    double delta = 0.05;
    double lambda = 1.0;
};

struct VtrStepDiag {
    int h = 0;
    StateId s = 0;
    int a = 0;
    StateId s_next = 0;
    double nu = 0.0;
    double E = 0.0;
    double sigma_bar = 0.0;
};

// Variance-weighted value-targeted regression for linear-mixture SSPs.
// Mixture features and costs are known, so the learner holds the environment.
class VtrLearner : public FhLearner {
public:
    VtrLearner(const LinearMixtureSsp& env, VtrConfig cfg);

    void begin_interval(StateId s1) override;
    int act(int h, StateId s) override;
    void observe(int h, StateId s, int a, double cost, StateId s_next) override;
    bool end_interval() override;

    // white-box surface
    long interval_index() const { return m_; }
    std::array<double, 3> betas() const;
    const Vec& theta_hat() const { return theta_hat_; }
    const Vec& theta_tilde() const { return theta_tilde_; }
    const Mat& sigma_hat() const { return sigma_hat_; }
    const Mat& sigma_tilde() const { return sigma_tilde_; }
    double q(int h, StateId s, int a) const {
        return q_[(static_cast<std::size_t>(h - 1) * S_ + s) * A_ + a];
    }
    double v(int h, StateId s) const;  // h = H+1 gives 2B* 1{s != g}
    const std::vector<VtrStepDiag>& last_interval_diag() const { return diag_; }
    // ||x||_{Sigma_hat^{-1}} for a feature vector (tests)
    double sigma_hat_norm(const Vec& x) const;
    Vec phi_for_value(StateId s, int a, int h_next, bool squared) const;

    // test hooks: force the regression estimates (used with zero bonus scaling)
    void force_theta_hat(const Vec& theta);
    void force_theta_tilde(const Vec& theta);
    void set_bonus_scale(double s) { bonus_scale_ = s; }

private:
    void backward_pass();

    const LinearMixtureSsp* env_;
    VtrConfig cfg_;
    int S_, A_, d_;

    Mat sigma_hat_, sigma_tilde_;
    Vec b_hat_, b_tilde_;
    Vec theta_hat_, theta_tilde_;
    std::unique_ptr<LdltFactor> hat_factor_, tilde_factor_;
    long m_ = 1;
    double bonus_scale_ = 1.0;

    Vec q_;  // H x S x A
    Vec v_;  // (H+1) x S, row H holds V_{H+1}
    std::vector<VtrStepDiag> diag_;
    bool in_interval_ = false;
};

}  // namespace ssplab
