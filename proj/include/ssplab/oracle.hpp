#pragma once

#include <vector>

#include "ssplab/env.hpp"
#include "ssplab/linalg.hpp"

namespace ssplab {

// Exact ground truth for an SSP: V*, Q*, pi*, B*, T*, c_min, gaps.
struct OracleSolution {
    int n_states = 0;
    int n_actions = 0;
    Vec v_star;            // per state
    Vec q_star;            // [s][a]
    std::vector<int> pi_star;
    Vec gap;               // [s][a], Q* - V*
    Vec hitting;           // expected steps to goal under pi*, per state
    double b_star = 0.0;
    double t_star = 0.0;
    double c_min = 0.0;
    double gap_min = 0.0;  // min positive gap (+inf when no gap exceeds 10*tol)
    double tol = 0.0;
    double residual = 0.0;
    long iterations = 0;

    double q_at(StateId s, int a) const { return q_star[static_cast<std::size_t>(s) * n_actions + a]; }
    double gap_at(StateId s, int a) const { return gap[static_cast<std::size_t>(s) * n_actions + a]; }
};

OracleSolution solve_ssp(const TabularSsp& env, double tol = 1e-10, long max_iter = 1000000);

// Layered optimum of the finite-horizon wrapper, by exact backward induction.
struct FhOracleSolution {
    int H = 0;
    int n_states = 0;
    int n_actions = 0;
    Vec v_h;      // [(H+1) x S]; row h-1 holds V*_h, row H holds V*_{H+1} = c_f
    Vec q_h;      // [H x S x A]
    Vec gap_h;    // [H x S x A]
    double gap_min_prime = 0.0;  // min positive layered gap (+inf if none)

    double v_at(int h, StateId s) const {
        return v_h[static_cast<std::size_t>(h - 1) * n_states + s];
    }
    double q_at(int h, StateId s, int a) const {
        return q_h[(static_cast<std::size_t>(h - 1) * n_states + s) * n_actions + a];
    }
    double gap_at(int h, StateId s, int a) const {
        return gap_h[(static_cast<std::size_t>(h - 1) * n_states + s) * n_actions + a];
    }
};

FhOracleSolution solve_fh(const FiniteHorizonView& view, double tol = 1e-12);

// Expected steps to the goal under a stationary policy, by solving
// (I - P_pi) T = 1 on the non-goal states. Throws on improper policies.
Vec hitting_times(const TabularSsp& env, const std::vector<int>& pi);

// Monte-Carlo check of the hitting-time tail bound: a policy with expected
// hitting time <= tau exceeds 4*tau*ln(2/delta) steps with probability <= delta.
struct HittingCheck {
    double tau = 0.0;
    double threshold = 0.0;  // 4 tau ln(2/delta)
    long trials = 0;
    long exceedances = 0;
    double fraction = 0.0;
    double sigma = 0.0;      // binomial sd of the fraction at rate delta
    bool pass = false;
};

HittingCheck empirical_hitting_check(const TabularSsp& env, const std::vector<int>& pi,
                                     double delta, long n_trials, Rng& rng);

// JSON emission for the CLI; includes the gap-convention note.
void save_oracle(const std::string& path, const OracleSolution& sol,
                 const FhOracleSolution* fh = nullptr);

}  // namespace ssplab
