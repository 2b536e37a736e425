#include "ssplab/env.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "ssplab/kernels.hpp"

namespace ssplab {

namespace {

constexpr double kNegProbClamp = 1e-12;

std::string sa_label(StateId s, int a) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "(s=%d,a=%d)", s, a);
    return buf;
}

// ||sum_s' h(s') mu(s')||_2 for a test function h over S u {g}
double mu_weighted_norm(const LinearSsp& env, const Vec& h) {
    Vec acc(env.d, 0.0);
    for (StateId next = 0; next <= env.n_states; ++next)
        kernels::axpy(h[next], env.mu_at(next), acc.data(), env.d);
    return std::sqrt(kernels::sumsq(acc.data(), acc.size()));
}

}  // namespace

double TabularSsp::c_min() const {
    double m = c.empty() ? 0.0 : c[0];
    for (double v : c) m = std::min(m, v);
    return m;
}

double LinearSsp::cost(StateId s, int a) const {
    return kernels::dot(phi_at(s, a), theta_star.data(), d);
}

double LinearSsp::prob(StateId s, int a, StateId next) const {
    return kernels::dot(phi_at(s, a), mu_at(next), d);
}

double LinearMixtureSsp::prob(StateId s, int a, StateId next) const {
    return kernels::dot(phi_at(s, a, next), theta_star.data(), d);
}

// --- validation -------------------------------------------------------------

ValidationReport validate(const TabularSsp& env, double tol) {
    ValidationReport rep;
    if (env.n_states <= 0 || env.n_actions <= 0) rep.fail("empty state or action space");
    if (env.s_init < 0 || env.s_init >= env.n_states) rep.fail("s_init out of range");
    for (StateId s = 0; s < env.n_states; ++s)
        for (int a = 0; a < env.n_actions; ++a) {
            double rowsum = 0.0;
            for (StateId next = 0; next <= env.n_states; ++next) {
                const double pr = env.prob(s, a, next);
                if (pr < 0.0) rep.fail("negative probability at " + sa_label(s, a));
                rowsum += pr;
            }
            if (std::fabs(rowsum - 1.0) > tol)
                rep.fail("row sum " + std::to_string(rowsum) + " at " + sa_label(s, a));
            const double cost = env.cost(s, a);
            if (cost < 0.0 || cost > 1.0) rep.fail("cost outside [0,1] at " + sa_label(s, a));
        }
    return rep;
}

ValidationReport validate(const LinearSsp& env, double tol) {
    ValidationReport rep;
    if (env.n_states <= 0 || env.n_actions <= 0 || env.d <= 0)
        rep.fail("empty state/action/feature space");
    if (env.s_init < 0 || env.s_init >= env.n_states) rep.fail("s_init out of range");
    if (!rep.ok) return rep;

    const double sqrt_d = std::sqrt(static_cast<double>(env.d));
    const double theta_norm = std::sqrt(kernels::sumsq(env.theta_star.data(), env.d));
    if (theta_norm > sqrt_d + tol)
        rep.fail("||theta*|| = " + std::to_string(theta_norm) + " exceeds sqrt(d)");

    const double cost_cap = 1.0 + env.cost_perturbation;
    for (StateId s = 0; s < env.n_states; ++s)
        for (int a = 0; a < env.n_actions; ++a) {
            const double phi_norm = std::sqrt(kernels::sumsq(env.phi_at(s, a), env.d));
            if (phi_norm > 1.0 + tol)
                rep.fail("||phi|| = " + std::to_string(phi_norm) + " at " + sa_label(s, a));
            const double cost = env.cost(s, a);
            if (cost < -tol || cost > cost_cap + tol)
                rep.fail("cost " + std::to_string(cost) + " outside [0," +
                         std::to_string(cost_cap) + "] at " + sa_label(s, a));
            double rowsum = 0.0;
            for (StateId next = 0; next <= env.n_states; ++next) {
                const double pr = env.prob(s, a, next);
                if (pr < -kNegProbClamp)
                    rep.fail("probability " + std::to_string(pr) + " at " + sa_label(s, a));
                rowsum += pr;
            }
            if (std::fabs(rowsum - 1.0) > tol)
                rep.fail("row sum " + std::to_string(rowsum) + " at " + sa_label(s, a));
        }

    // ||int h dmu||_2 <= sqrt(d) ||h||_inf on the indicator basis plus a fixed
    // battery of random sign functions (covers the +-1 extremal case).
    Vec h(env.n_states + 1, 0.0);
    for (StateId next = 0; next <= env.n_states; ++next) {
        h.assign(env.n_states + 1, 0.0);
        h[next] = 1.0;
        const double norm = mu_weighted_norm(env, h);
        if (norm > sqrt_d + tol)
            rep.fail("||mu(s')|| = " + std::to_string(norm) + " at s'=" + std::to_string(next));
    }
    Rng battery(0xa55ab42ULL);
    for (int trial = 0; trial < 64; ++trial) {
        for (StateId next = 0; next <= env.n_states; ++next)
            h[next] = battery.next_u64() & 1 ? 1.0 : -1.0;
        const double norm = mu_weighted_norm(env, h);
        if (norm > sqrt_d + tol)
            rep.fail("random-sign mu bound violated: " + std::to_string(norm));
    }
    return rep;
}

ValidationReport validate(const LinearMixtureSsp& env, double tol) {
    ValidationReport rep;
    if (env.n_states <= 0 || env.n_actions <= 0 || env.d <= 0)
        rep.fail("empty state/action/feature space");
    if (env.s_init < 0 || env.s_init >= env.n_states) rep.fail("s_init out of range");
    if (!rep.ok) return rep;

    const double sqrt_d = std::sqrt(static_cast<double>(env.d));
    const double theta_norm = std::sqrt(kernels::sumsq(env.theta_star.data(), env.d));
    if (theta_norm > sqrt_d + tol) rep.fail("||theta*|| exceeds sqrt(d)");

    for (StateId s = 0; s < env.n_states; ++s)
        for (int a = 0; a < env.n_actions; ++a) {
            const double cost = env.cost(s, a);
            if (cost < 0.0 || cost > 1.0) rep.fail("cost outside [0,1] at " + sa_label(s, a));
            double rowsum = 0.0;
            for (StateId next = 0; next <= env.n_states; ++next) {
                const double pr = env.prob(s, a, next);
                if (pr < -kNegProbClamp)
                    rep.fail("probability " + std::to_string(pr) + " at " + sa_label(s, a));
                rowsum += pr;
            }
            if (std::fabs(rowsum - 1.0) > tol)
                rep.fail("row sum " + std::to_string(rowsum) + " at " + sa_label(s, a));

            // ||phi_F|| <= sqrt(d) for F into [0,1], checked on the indicator basis
            // plus the all-ones F.
            Vec acc(env.d, 0.0);
            for (StateId next = 0; next <= env.n_states; ++next) {
                const double norm =
                    std::sqrt(kernels::sumsq(env.phi_at(s, a, next), env.d));
                if (norm > sqrt_d + tol)
                    rep.fail("||phi_mix|| exceeds sqrt(d) at " + sa_label(s, a));
                kernels::axpy(1.0, env.phi_at(s, a, next), acc.data(), env.d);
            }
            if (std::sqrt(kernels::sumsq(acc.data(), acc.size())) > sqrt_d + tol)
                rep.fail("||phi_F|| (F=1) exceeds sqrt(d) at " + sa_label(s, a));
        }
    return rep;
}

ValidationReport validate(const EnvAny& env, double tol) {
    return std::visit([tol](const auto& e) { return validate(e, tol); }, env);
}

// --- materialization ----------------------------------------------------------

namespace {

TabularSsp materialize_rows(int S, int A, StateId s_init,
                            const std::function<double(StateId, int, StateId)>& prob,
                            const std::function<double(StateId, int)>& cost) {
    TabularSsp tab;
    tab.n_states = S;
    tab.n_actions = A;
    tab.s_init = s_init;
    tab.p.assign(static_cast<std::size_t>(S) * A * (S + 1), 0.0);
    tab.c.assign(static_cast<std::size_t>(S) * A, 0.0);
    for (StateId s = 0; s < S; ++s)
        for (int a = 0; a < A; ++a) {
            double rowsum = 0.0;
            for (StateId next = 0; next <= S; ++next) {
                double pr = prob(s, a, next);
                if (pr < 0.0 && pr >= -kNegProbClamp) pr = 0.0;
                tab.prob(s, a, next) = pr;
                rowsum += pr;
            }
            if (rowsum > 0.0 && std::fabs(rowsum - 1.0) <= 1e-9) {
                for (StateId next = 0; next <= S; ++next) tab.prob(s, a, next) /= rowsum;
            }
            tab.cost(s, a) = cost(s, a);
        }
    return tab;
}

}  // namespace

TabularSsp materialize(const LinearSsp& env) {
    return materialize_rows(
        env.n_states, env.n_actions, env.s_init,
        [&](StateId s, int a, StateId next) { return env.prob(s, a, next); },
        [&](StateId s, int a) { return env.cost(s, a); });
}

TabularSsp materialize(const LinearMixtureSsp& env) {
    return materialize_rows(
        env.n_states, env.n_actions, env.s_init,
        [&](StateId s, int a, StateId next) { return env.prob(s, a, next); },
        [&](StateId s, int a) { return env.cost(s, a); });
}

const TabularSsp& materialize(const TabularSsp& env) { return env; }

StateId sample_transition(const TabularSsp& env, StateId s, int a, Rng& rng) {
    if (s == env.goal()) throw SsplabError("sample_transition: cannot sample from the goal");
    return rng.sample_discrete({env.row(s, a), static_cast<std::size_t>(env.n_states + 1)});
}

StateId sample_transition(const LinearSsp& env, StateId s, int a, Rng& rng) {
    if (s == env.goal()) throw SsplabError("sample_transition: cannot sample from the goal");
    Vec row(env.n_states + 1);
    for (StateId next = 0; next <= env.n_states; ++next)
        row[next] = std::max(0.0, env.prob(s, a, next));
    return rng.sample_discrete(row);
}

// --- generators ----------------------------------------------------------------

double lower_bound_delta(long K) {
    const double delta = 1.0 / 3.0;
    return std::sqrt(delta / static_cast<double>(K)) / (8.0 * std::sqrt(2.0));
}

LinearSsp make_lower_bound_instance(int d_action, long K, double B_star, const Vec& rho) {
    if (d_action < 1) throw SsplabError("make_lower_bound_instance: d_action must be >= 1");
    if (B_star < 1.0) throw SsplabError("make_lower_bound_instance: B_star must be >= 1");
    const double delta = 1.0 / 3.0;
    if (static_cast<double>(K) < static_cast<double>(d_action) * d_action / (2.0 * delta))
        throw SsplabError("make_lower_bound_instance: K below d_action^2/(2 delta)");
    if (static_cast<int>(rho.size()) != d_action)
        throw SsplabError("make_lower_bound_instance: rho has wrong dimension");
    const double Delta = lower_bound_delta(K);
    for (double r : rho)
        if (std::fabs(std::fabs(r) - Delta) > 1e-15 * std::max(1.0, Delta))
            throw SsplabError("make_lower_bound_instance: rho entries must be +-Delta");

    LinearSsp env;
    env.n_states = 2;  // s0, s1
    env.n_actions = 1 << d_action;
    env.d = d_action + 2;
    env.s_init = 0;
    env.phi.assign(static_cast<std::size_t>(env.n_states) * env.n_actions * env.d, 0.0);
    env.mu.assign(static_cast<std::size_t>(env.n_states + 1) * env.d, 0.0);
    env.theta_star.assign(env.d, 0.0);
    env.theta_star[env.d - 1] = 1.0;

    const double dd = static_cast<double>(d_action) * Delta;
    const double alpha = std::sqrt(1.0 / (1.0 + dd));
    const double beta = std::sqrt(Delta / (1.0 + dd));

    for (int a = 0; a < env.n_actions; ++a) {
        double* f0 = env.phi_at(0, a);
        f0[0] = alpha;
        for (int i = 0; i < d_action; ++i) f0[1 + i] = beta * ((a >> i) & 1 ? 1.0 : -1.0);
        env.phi_at(1, a)[env.d - 1] = 1.0;
    }
    // mu(s0) stays zero: s0 is never re-entered.
    double* mu1 = env.mu_at(1);
    mu1[0] = (1.0 - delta) / alpha;
    for (int i = 0; i < d_action; ++i) mu1[1 + i] = -rho[i] / beta;
    mu1[env.d - 1] = 1.0 - 1.0 / B_star;
    double* mug = env.mu_at(2);
    mug[0] = delta / alpha;
    for (int i = 0; i < d_action; ++i) mug[1 + i] = rho[i] / beta;
    mug[env.d - 1] = 1.0 / B_star;
    return env;
}

LinearSsp make_lower_bound_instance(int d_action, long K, double B_star, Rng& rng) {
    const double Delta = lower_bound_delta(K);
    Vec rho(d_action);
    for (int i = 0; i < d_action; ++i) rho[i] = rng.next_u64() & 1 ? Delta : -Delta;
    return make_lower_bound_instance(d_action, K, B_star, rho);
}

TabularSsp make_gap_example(double p, double q, double eps) {
    if (!(p > 0.0 && p < 1.0) || !(q > 0.0 && q < 1.0) || !(eps > 0.0 && eps < 1.0))
        throw SsplabError("make_gap_example: p, q, eps must lie in (0,1)");
    TabularSsp env;
    env.n_states = 4;  // s0, s1, s2, s3
    env.n_actions = 2;
    env.s_init = 0;
    env.p.assign(static_cast<std::size_t>(4) * 2 * 5, 0.0);
    env.c.assign(static_cast<std::size_t>(4) * 2, 0.0);
    const StateId g = env.goal();
    for (int a = 0; a < 2; ++a) {
        env.prob(0, a, 1) = p;
        env.prob(0, a, 0) = 1.0 - p;
        env.cost(0, a) = 0.0;
        env.prob(2, a, g) = q;
        env.prob(2, a, 1) = 1.0 - q;
        env.cost(2, a) = 1.0;
        env.prob(3, a, g) = 1.0;
        env.cost(3, a) = 0.0;
    }
    env.prob(1, 0, 2) = 1.0;  // a1 in the construction
    env.cost(1, 0) = 0.0;
    env.prob(1, 1, 3) = 1.0;  // a2
    env.cost(1, 1) = eps;
    return env;
}

LinearSsp tabular_to_linear(const TabularSsp& env) {
    LinearSsp lin;
    lin.n_states = env.n_states;
    lin.n_actions = env.n_actions;
    lin.d = env.n_states * env.n_actions;
    lin.s_init = env.s_init;
    lin.phi.assign(static_cast<std::size_t>(lin.n_states) * lin.n_actions * lin.d, 0.0);
    lin.mu.assign(static_cast<std::size_t>(lin.n_states + 1) * lin.d, 0.0);
    lin.theta_star.assign(lin.d, 0.0);
    for (StateId s = 0; s < env.n_states; ++s)
        for (int a = 0; a < env.n_actions; ++a) {
            const int idx = s * env.n_actions + a;
            lin.phi_at(s, a)[idx] = 1.0;
            lin.theta_star[idx] = env.cost(s, a);
            for (StateId next = 0; next <= env.n_states; ++next)
                lin.mu_at(next)[idx] = env.prob(s, a, next);
        }
    return lin;
}

LinearSsp perturb_costs(const LinearSsp& env, double eps) {
    if (eps < 0.0) throw SsplabError("perturb_costs: eps must be >= 0");
    LinearSsp out = env;
    if (eps == 0.0) return out;
    for (StateId next = 0; next <= env.n_states; ++next)
        kernels::axpy(eps, env.mu_at(next), out.theta_star.data(), env.d);
    out.cost_perturbation = env.cost_perturbation + eps;
    return out;
}

int action_count(const EnvAny& env) {
    return std::visit([](const auto& e) { return e.n_actions; }, env);
}

StateId initial_state(const EnvAny& env) {
    return std::visit([](const auto& e) { return e.s_init; }, env);
}

FiniteHorizonView fh_wrap(const TabularSsp& env, int H, TerminalCostSpec c_f) {
    if (H < 1) throw SsplabError("fh_wrap: H must be >= 1");
    return FiniteHorizonView{&env, H, c_f};
}

}  // namespace ssplab
