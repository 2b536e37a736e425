#include "ssplab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ssplab/kernels.hpp"

namespace ssplab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// one Bellman backup sweep; returns sup-norm change
double vi_sweep(const TabularSsp& env, Vec& v, Vec& q) {
    const int S = env.n_states, A = env.n_actions;
    double change = 0.0;
    for (StateId s = 0; s < S; ++s) {
        double best = kInf;
        for (int a = 0; a < A; ++a) {
            // goal column contributes 0
            const double qa = env.cost(s, a) + kernels::dot(env.row(s, a), v.data(), S);
            q[static_cast<std::size_t>(s) * A + a] = qa;
            best = std::min(best, qa);
        }
        change = std::max(change, std::fabs(best - v[s]));
        v[s] = best;
    }
    return change;
}

Vec policy_value_exact(const TabularSsp& env, const std::vector<int>& pi) {
    const int S = env.n_states;
    Mat m(S, S);
    Vec rhs(S);
    for (StateId s = 0; s < S; ++s) {
        const double* row = env.row(s, pi[s]);
        for (StateId next = 0; next < S; ++next) m(s, next) = (s == next ? 1.0 : 0.0) - row[next];
        rhs[s] = env.cost(s, pi[s]);
    }
    LuFactor lu(m);
    if (lu.singular()) throw SsplabError("policy evaluation: singular system (improper policy?)");
    return lu.solve(rhs);
}

}  // namespace

OracleSolution solve_ssp(const TabularSsp& env, double tol, long max_iter) {
    if (tol <= 0.0) throw SsplabError("solve_ssp: tol must be positive");
    const int S = env.n_states, A = env.n_actions;
    OracleSolution sol;
    sol.n_states = S;
    sol.n_actions = A;
    sol.tol = tol;
    sol.v_star.assign(S, 0.0);
    sol.q_star.assign(static_cast<std::size_t>(S) * A, 0.0);

    // VI from V = 0: iterates are nondecreasing because costs are nonnegative.
    long it = 0;
    double change = kInf;
    for (; it < max_iter; ++it) {
        change = vi_sweep(env, sol.v_star, sol.q_star);
        if (change <= tol) break;
    }
    sol.iterations = it + 1;
    if (change > tol)
        throw SsplabError("solve_ssp: no proper policy detected or tol unreachable");

    sol.pi_star.assign(S, 0);
    for (StateId s = 0; s < S; ++s) {
        int best = 0;
        for (int a = 1; a < A; ++a)
            if (sol.q_star[static_cast<std::size_t>(s) * A + a] <
                sol.q_star[static_cast<std::size_t>(s) * A + best])
                best = a;
        sol.pi_star[s] = best;
    }

    // Refine with one exact greedy-policy evaluation; keep it if it is
    // Bellman-consistent (VI error is amplified by the hitting time, the
    // linear solve is not).
    try {
        Vec refined = policy_value_exact(env, sol.pi_star);
        Vec q(static_cast<std::size_t>(S) * A);
        double resid = 0.0;
        for (StateId s = 0; s < S; ++s) {
            double best = kInf;
            for (int a = 0; a < A; ++a) {
                const double qa = env.cost(s, a) + kernels::dot(env.row(s, a), refined.data(), S);
                q[static_cast<std::size_t>(s) * A + a] = qa;
                best = std::min(best, qa);
            }
            resid = std::max(resid, std::fabs(best - refined[s]));
        }
        bool nonneg = std::all_of(refined.begin(), refined.end(),
                                  [](double v) { return v >= -1e-12; });
        if (nonneg && resid <= 10.0 * tol) {
            sol.v_star = std::move(refined);
            sol.q_star = std::move(q);
            sol.residual = resid;
        } else {
            sol.residual = change;
        }
    } catch (const SsplabError&) {
        sol.residual = change;
    }

    sol.gap.assign(static_cast<std::size_t>(S) * A, 0.0);
    sol.gap_min = kInf;
    for (StateId s = 0; s < S; ++s)
        for (int a = 0; a < A; ++a) {
            const double g = sol.q_at(s, a) - sol.v_star[s];
            sol.gap[static_cast<std::size_t>(s) * A + a] = g;
            if (g > 10.0 * tol) sol.gap_min = std::min(sol.gap_min, g);
        }
    sol.b_star = *std::max_element(sol.v_star.begin(), sol.v_star.end());
    sol.c_min = env.c_min();
    sol.hitting = hitting_times(env, sol.pi_star);
    sol.t_star = *std::max_element(sol.hitting.begin(), sol.hitting.end());
    return sol;
}

FhOracleSolution solve_fh(const FiniteHorizonView& view, double tol) {
    const TabularSsp& env = *view.base;
    const int S = env.n_states, A = env.n_actions, H = view.H;
    FhOracleSolution sol;
    sol.H = H;
    sol.n_states = S;
    sol.n_actions = A;
    sol.v_h.assign(static_cast<std::size_t>(H + 1) * S, 0.0);
    sol.q_h.assign(static_cast<std::size_t>(H) * S * A, 0.0);
    sol.gap_h.assign(static_cast<std::size_t>(H) * S * A, 0.0);

    for (StateId s = 0; s < S; ++s)
        sol.v_h[static_cast<std::size_t>(H) * S + s] = view.terminal(s);

    sol.gap_min_prime = kInf;
    for (int h = H; h >= 1; --h) {
        const double* v_next = sol.v_h.data() + static_cast<std::size_t>(h) * S;
        double* v_cur = sol.v_h.data() + static_cast<std::size_t>(h - 1) * S;
        for (StateId s = 0; s < S; ++s) {
            double best = kInf;
            for (int a = 0; a < A; ++a) {
                const double qa = env.cost(s, a) + kernels::dot(env.row(s, a), v_next, S);
                sol.q_h[(static_cast<std::size_t>(h - 1) * S + s) * A + a] = qa;
                best = std::min(best, qa);
            }
            v_cur[s] = best;
        }
        for (StateId s = 0; s < S; ++s)
            for (int a = 0; a < A; ++a) {
                const double g = sol.q_at(h, s, a) - v_cur[s];
                sol.gap_h[(static_cast<std::size_t>(h - 1) * S + s) * A + a] = g;
                if (g > 10.0 * tol) sol.gap_min_prime = std::min(sol.gap_min_prime, g);
            }
    }
    return sol;
}

Vec hitting_times(const TabularSsp& env, const std::vector<int>& pi) {
    const int S = env.n_states;
    Mat m(S, S);
    Vec rhs(S, 1.0);
    for (StateId s = 0; s < S; ++s) {
        const double* row = env.row(s, pi[s]);
        for (StateId next = 0; next < S; ++next) m(s, next) = (s == next ? 1.0 : 0.0) - row[next];
    }
    LuFactor lu(m);
    if (lu.singular()) throw SsplabError("hitting_times: singular system, policy improper");
    Vec t = lu.solve(rhs);
    for (double v : t)
        if (!(v >= 1.0 - 1e-9) || !std::isfinite(v))
            throw SsplabError("hitting_times: negative or non-finite solution, policy improper");
    // residual check: (I - P_pi) T = 1
    Vec res = mat_vec(m, t);
    for (double v : res)
        if (std::fabs(v - 1.0) > 1e-10)
            throw SsplabError("hitting_times: residual above 1e-10");
    return t;
}

HittingCheck empirical_hitting_check(const TabularSsp& env, const std::vector<int>& pi,
                                     double delta, long n_trials, Rng& rng) {
    if (n_trials < 1000) throw SsplabError("empirical_hitting_check: need n_trials >= 1000");
    Vec tau_vec = hitting_times(env, pi);
    HittingCheck chk;
    chk.tau = *std::max_element(tau_vec.begin(), tau_vec.end());
    chk.threshold = 4.0 * chk.tau * std::log(2.0 / delta);
    chk.trials = n_trials;
    const long cap = static_cast<long>(chk.threshold) + 1;
    for (long trial = 0; trial < n_trials; ++trial) {
        StateId s = env.s_init;
        long steps = 0;
        while (s != env.goal() && steps <= cap) {
            s = sample_transition(env, s, pi[s], rng);
            ++steps;
        }
        if (s != env.goal() || static_cast<double>(steps) > chk.threshold) ++chk.exceedances;
    }
    chk.fraction = static_cast<double>(chk.exceedances) / static_cast<double>(n_trials);
    chk.sigma = std::sqrt(delta * (1.0 - delta) / static_cast<double>(n_trials));
    chk.pass = chk.fraction <= delta + 3.0 * chk.sigma;
    return chk;
}

}  // namespace ssplab
