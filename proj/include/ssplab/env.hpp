#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ssplab/linalg.hpp"
#include "ssplab/rng.hpp"

namespace ssplab {

// States are 0..n_states-1; the absorbing goal is index n_states (one past
// the end) and never appears in phi's domain.
using StateId = int;

struct TabularSsp {
    int n_states = 0;
    int n_actions = 0;
    StateId s_init = 0;
    Vec p;  // [s][a][s'] with s' in 0..n_states (goal last), size S*A*(S+1)
    Vec c;  // [s][a]

    StateId goal() const { return n_states; }
    double prob(StateId s, int a, StateId next) const {
        return p[(static_cast<std::size_t>(s) * n_actions + a) * (n_states + 1) + next];
    }
    double& prob(StateId s, int a, StateId next) {
        return p[(static_cast<std::size_t>(s) * n_actions + a) * (n_states + 1) + next];
    }
    const double* row(StateId s, int a) const {
        return p.data() + (static_cast<std::size_t>(s) * n_actions + a) * (n_states + 1);
    }
    double cost(StateId s, int a) const {
        return c[static_cast<std::size_t>(s) * n_actions + a];
    }
    double& cost(StateId s, int a) { return c[static_cast<std::size_t>(s) * n_actions + a]; }
    double c_min() const;
};

struct LinearSsp {
    int n_states = 0;
    int n_actions = 0;
    int d = 0;
    StateId s_init = 0;
    Vec phi;         // [s][a] -> d
    Vec mu;          // [s'] for s' in 0..n_states (goal last) -> d
    Vec theta_star;  // d
    double cost_perturbation = 0.0;  // eps applied by perturb_costs (cost cap is 1+eps)

    StateId goal() const { return n_states; }
    const double* phi_at(StateId s, int a) const {
        return phi.data() + (static_cast<std::size_t>(s) * n_actions + a) * d;
    }
    double* phi_at(StateId s, int a) {
        return phi.data() + (static_cast<std::size_t>(s) * n_actions + a) * d;
    }
    const double* mu_at(StateId next) const {
        return mu.data() + static_cast<std::size_t>(next) * d;
    }
    double* mu_at(StateId next) { return mu.data() + static_cast<std::size_t>(next) * d; }
    double cost(StateId s, int a) const;
    double prob(StateId s, int a, StateId next) const;
};

struct LinearMixtureSsp {
    int n_states = 0;
    int n_actions = 0;
    int d = 0;
    StateId s_init = 0;
    Vec phi_mix;     // [s][a][s'] -> d, s' in 0..n_states (goal last)
    Vec theta_star;  // d
    Vec c;           // known costs, [s][a]

    StateId goal() const { return n_states; }
    const double* phi_at(StateId s, int a, StateId next) const {
        return phi_mix.data() +
               ((static_cast<std::size_t>(s) * n_actions + a) * (n_states + 1) + next) * d;
    }
    double* phi_at(StateId s, int a, StateId next) {
        return phi_mix.data() +
               ((static_cast<std::size_t>(s) * n_actions + a) * (n_states + 1) + next) * d;
    }
    double cost(StateId s, int a) const {
        return c[static_cast<std::size_t>(s) * n_actions + a];
    }
    double prob(StateId s, int a, StateId next) const;
};

using EnvAny = std::variant<TabularSsp, LinearSsp, LinearMixtureSsp>;

// --- validation ----------------------------------------------------------

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> issues;
    void fail(std::string msg) {
        ok = false;
        issues.push_back(std::move(msg));
    }
};

ValidationReport validate(const TabularSsp& env, double tol = 1e-12);
ValidationReport validate(const LinearSsp& env, double tol = 1e-12);
ValidationReport validate(const LinearMixtureSsp& env, double tol = 1e-12);
ValidationReport validate(const EnvAny& env, double tol = 1e-12);

// --- materialization and sampling ----------------------------------------

// Exact tabular view of P and c. Entries in [-1e-12, 0) are clamped to 0 and
// the row renormalized; anything more negative is a validation error surfaced
// by validate(), not here.
TabularSsp materialize(const LinearSsp& env);
TabularSsp materialize(const LinearMixtureSsp& env);
const TabularSsp& materialize(const TabularSsp& env);

StateId sample_transition(const TabularSsp& env, StateId s, int a, Rng& rng);
StateId sample_transition(const LinearSsp& env, StateId s, int a, Rng& rng);

// --- generators -----------------------------------------------------------

// Two-state family from the regret lower-bound construction. Feature
// dimension is d_action + 2; actions are {-1,+1}^d_action enumerated in
// binary counting order (bit i <-> coordinate i, 0 <-> -1). rho must have
// d_action entries in {-Delta, +Delta}; the Rng overload draws it uniformly.
LinearSsp make_lower_bound_instance(int d_action, long K, double B_star, const Vec& rho);
LinearSsp make_lower_bound_instance(int d_action, long K, double B_star, Rng& rng);
double lower_bound_delta(long K);  // Delta = sqrt(delta/K)/(8 sqrt(2)), delta = 1/3

// Four-state instance separating the SSP gap from the finite-horizon gap.
TabularSsp make_gap_example(double p, double q, double eps);

// One-hot embedding: d = S*A, phi(s,a) = e_(s,a), mu(s')_(s,a) = P(s'|s,a),
// theta*_(s,a) = c(s,a).
LinearSsp tabular_to_linear(const TabularSsp& env);

// theta*_eps = theta* + eps * sum_s' mu(s'), so c_eps = c + eps everywhere.
LinearSsp perturb_costs(const LinearSsp& env, double eps);

int action_count(const EnvAny& env);
StateId initial_state(const EnvAny& env);

// --- finite-horizon wrapper -----------------------------------------------

struct TerminalCostSpec {
    enum class Kind { zero, two_b_star } kind = Kind::zero;
    double b_star = 0.0;

    static TerminalCostSpec zero() { return {Kind::zero, 0.0}; }
    static TerminalCostSpec two_b_star(double b) { return {Kind::two_b_star, b}; }
    double at(StateId s, StateId goal) const {
        if (kind == Kind::zero || s == goal) return 0.0;
        return 2.0 * b_star;
    }
    double max_value() const { return kind == Kind::zero ? 0.0 : 2.0 * b_star; }
};

struct FiniteHorizonView {
    const TabularSsp* base = nullptr;
    int H = 0;
    TerminalCostSpec c_f;

    StateId goal() const { return base->goal(); }
    double cost(StateId s, int a) const { return s == goal() ? 0.0 : base->cost(s, a); }
    double terminal(StateId s) const { return c_f.at(s, goal()); }
    StateId step(StateId s, int a, Rng& rng) const {
        return s == goal() ? goal() : sample_transition(*base, s, a, rng);
    }
};

FiniteHorizonView fh_wrap(const TabularSsp& env, int H, TerminalCostSpec c_f);

// --- serialization ----------------------------------------------------------

void save_env(const std::string& path, const EnvAny& env);
EnvAny load_env(const std::string& path);
std::string env_type_name(const EnvAny& env);

}  // namespace ssplab
