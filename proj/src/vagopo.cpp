#include "ssplab/vagopo.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include "ssplab/kernels.hpp"

namespace ssplab {

double clip_j(int j, double x) {
    const double lim = std::ldexp(1.0, j);
    return std::clamp(x, -lim, lim);
}

double f_j(int j, double x) { return clip_j(j, x) * x; }

double g_j(int j, double x) {
    const double lim = std::ldexp(1.0, j);
    if (x > lim) return 2.0 * lim * x - lim * lim;
    if (x < -lim) return -2.0 * lim * x - lim * lim;
    return x * x;
}

JRange j_range(double eps, int d, double B) {
    if (eps <= 0.0) throw SsplabError("j_range: eps must be positive");
    JRange r;
    r.lo = static_cast<int>(std::ceil(std::log2(eps)));
    r.hi = static_cast<int>(std::ceil(std::log2(6.0 * std::sqrt(static_cast<double>(d)) * B)));
    if (r.lo > r.hi) r.lo = r.hi;
    return r;
}

double iota_bt(double B, long t, double eps, double delta, int d) {
    return 2048.0 * d * std::log(48.0 * d * B * static_cast<double>(t) / (eps * delta));
}

double default_eps_conf(double c_min, int d, long K) {
    const double dd = static_cast<double>(d);
    return std::max(1e-8, c_min / (150.0 * dd * dd * dd * static_cast<double>(K)));
}

double value_of(const LinearSsp& env, const Vec& w, double B, StateId s) {
    if (s == env.goal()) return 0.0;
    double best = 2.0 * B;
    for (int a = 0; a < env.n_actions; ++a) {
        const double q = kernels::dot(env.phi_at(s, a), w.data(), env.d);
        best = std::min(best, std::clamp(q, 0.0, 2.0 * B));
    }
    return best;
}

Vec values_of(const LinearSsp& env, const Vec& w, double B) {
    Vec vals(env.n_states);
    for (StateId s = 0; s < env.n_states; ++s) vals[s] = value_of(env, w, B, s);
    return vals;
}

Vec u_operator(const LinearSsp& env, const Vec& w, double B) {
    Vec out = env.theta_star;
    for (StateId s = 0; s < env.n_states; ++s) {
        const double v = value_of(env, w, B, s);
        if (v != 0.0) kernels::axpy(v, env.mu_at(s), out.data(), env.d);
    }
    return out;
}

std::vector<Vec> make_lattice(int d, double radius, double spacing, long budget) {
    if (spacing <= 0.0 || radius <= 0.0) throw SsplabError("make_lattice: bad parameters");
    const long n = static_cast<long>(std::floor(radius / spacing));
    double raw = 1.0;
    for (int i = 0; i < d; ++i) raw *= static_cast<double>(2 * n + 1);
    if (raw > static_cast<double>(budget))
        throw SsplabError("make_lattice: lattice of " + std::to_string(raw) +
                          " points exceeds the candidate budget");
    std::vector<Vec> points;
    Vec p(d);
    std::vector<long> idx(d, -n);
    const double r2 = radius * radius * (1.0 + 1e-12);
    while (true) {
        for (int i = 0; i < d; ++i) p[i] = spacing * static_cast<double>(idx[i]);
        if (kernels::sumsq(p.data(), d) <= r2) points.push_back(p);
        int carry = d - 1;
        while (carry >= 0 && ++idx[carry] > n) {
            idx[carry] = -n;
            --carry;
        }
        if (carry < 0) break;
    }
    return points;
}

OmegaReport omega_contains(const LinearSsp& env, const std::vector<HistoryStep>& history,
                           const Vec& w_candidate, const Vec& w_anchor, double B, double eps,
                           double delta, double net_nu, long budget) {
    const int d = env.d;
    OmegaReport rep;
    rep.worst_violation = -1.0;
    const double ball = 3.0 * std::sqrt(static_cast<double>(d)) * B;
    if (std::sqrt(kernels::sumsq(w_candidate.data(), d)) > ball * (1.0 + 1e-12)) {
        rep.contained = false;
        rep.worst_violation = 1.0;
        return rep;
    }
    const Vec vals = values_of(env, w_anchor, B);
    const JRange jr = j_range(eps, d, B);
    const double nu_radius = 6.0 * std::sqrt(static_cast<double>(d)) * B;
    const std::vector<Vec> nu_net = make_lattice(d, nu_radius, net_nu * nu_radius, budget);
    const long t = static_cast<long>(history.size()) + 1;
    const double iota = iota_bt(B, t, eps, delta, d);

    Vec resid(history.size());
    for (std::size_t i = 0; i < history.size(); ++i) {
        const HistoryStep& hs = history[i];
        const double v = hs.s_next == env.goal() ? 0.0 : vals[hs.s_next];
        resid[i] = kernels::dot(hs.phi.data(), w_candidate.data(), d) - hs.cost - v;
    }
    rep.contained = true;
    for (int j = jr.lo; j <= jr.hi; ++j) {
        const double two_j = std::ldexp(1.0, j);
        for (const Vec& nu : nu_net) {
            double lhs = 0.0, eta_sum = 0.0;
            for (std::size_t i = 0; i < history.size(); ++i) {
                const double cl = clip_j(j, kernels::dot(history[i].phi.data(), nu.data(), d));
                lhs += cl * resid[i];
                eta_sum += cl * cl * resid[i] * resid[i];
            }
            const double rhs = std::sqrt(std::max(0.0, eta_sum) * iota) + B * two_j * iota;
            const double violation = (std::fabs(lhs) - rhs) / std::max(rhs, 1e-300);
            if (violation > rep.worst_violation) {
                rep.worst_violation = violation;
                rep.worst_j = j;
            }
            if (std::fabs(lhs) > rhs) rep.contained = false;
        }
    }
    return rep;
}

// --- fast-path confidence-set cache ----------------------------------------

struct ConfSetCache::Cell {
    double sum_f = 0.0;       // sum_i f_j(phi_i^T nu)
    double phi_cached = 0.0;  // Phi^j_{t'}(nu) snapshot
    Vec acc_phi;              // sum clip * phi_i
    double acc_c = 0.0;       // sum clip * c_i
    Mat m2;                   // sum clip^2 phi phi^T
    Vec c2phi;                // sum clip^2 c phi
    double c2sq = 0.0;        // sum clip^2 c^2
    Vec g_state;              // per s': sum clip
    Vec v1;                   // per s': sum clip^2 phi (flattened (S+1) x d)
    Vec vc_state;             // per s': sum clip^2 c
    Vec v0_state;             // per s': sum clip^2
};

ConfSetCache::ConfSetCache(const LinearSsp& env, const VagopoParams& params, double eps,
                           double B)
    : env_(&env), params_(&params), eps_(eps), d_(env.d), S_(env.n_states) {
    reset(B, {});
}

ConfSetCache::~ConfSetCache() = default;

void ConfSetCache::reset(double B, const std::vector<HistoryStep>& history) {
    B_ = B;
    jr_ = j_range(eps_, d_, B_);
    const double sqd = std::sqrt(static_cast<double>(d_));
    nu_net_ = make_lattice(d_, 6.0 * sqd * B_, params_->net_nu * 6.0 * sqd * B_,
                           params_->candidate_budget);
    nu_sq_.resize(nu_net_.size());
    for (std::size_t i = 0; i < nu_net_.size(); ++i)
        nu_sq_[i] = kernels::sumsq(nu_net_[i].data(), d_);
    cells_.assign(static_cast<std::size_t>(jr_.size()) * nu_net_.size(), Cell{});
    for (Cell& c : cells_) {
        c.acc_phi.assign(d_, 0.0);
        c.m2 = Mat(d_, d_);
        c.c2phi.assign(d_, 0.0);
        c.g_state.assign(S_ + 1, 0.0);
        c.v1.assign(static_cast<std::size_t>(S_ + 1) * d_, 0.0);
        c.vc_state.assign(S_ + 1, 0.0);
        c.v0_state.assign(S_ + 1, 0.0);
    }
    for (const HistoryStep& hs : history) add_step(hs);
    snapshot();
}

void ConfSetCache::add_step(const HistoryStep& hs) {
    for (std::size_t ni = 0; ni < nu_net_.size(); ++ni) {
        const double x = kernels::dot(hs.phi.data(), nu_net_[ni].data(), d_);
        for (int j = jr_.lo; j <= jr_.hi; ++j) {
            Cell& c = cells_[static_cast<std::size_t>(j - jr_.lo) * nu_net_.size() + ni];
            const double cl = clip_j(j, x);
            c.sum_f += cl * x;
            if (cl == 0.0) continue;
            kernels::axpy(cl, hs.phi.data(), c.acc_phi.data(), d_);
            c.acc_c += cl * hs.cost;
            const double cl2 = cl * cl;
            kernels::rank1_update(c.m2.a.data(), d_, cl2, hs.phi.data());
            kernels::axpy(cl2 * hs.cost, hs.phi.data(), c.c2phi.data(), d_);
            c.c2sq += cl2 * hs.cost * hs.cost;
            c.g_state[hs.s_next] += cl;
            kernels::axpy(cl2, hs.phi.data(),
                          c.v1.data() + static_cast<std::size_t>(hs.s_next) * d_, d_);
            c.vc_state[hs.s_next] += cl2 * hs.cost;
            c.v0_state[hs.s_next] += cl2;
        }
    }
}

void ConfSetCache::snapshot() {
    for (std::size_t ni = 0; ni < nu_net_.size(); ++ni)
        for (int j = jr_.lo; j <= jr_.hi; ++j) {
            Cell& c = cells_[static_cast<std::size_t>(j - jr_.lo) * nu_net_.size() + ni];
            c.phi_cached = c.sum_f + std::ldexp(1.0, j) * nu_sq_[ni];
        }
}

bool ConfSetCache::lazy_triggered() const {
    const double factor = 8.0 * static_cast<double>(d_) * d_;
    for (std::size_t ni = 0; ni < nu_net_.size(); ++ni)
        for (int j = jr_.lo; j <= jr_.hi; ++j) {
            const Cell& c = cells_[static_cast<std::size_t>(j - jr_.lo) * nu_net_.size() + ni];
            const double phi_now = c.sum_f + std::ldexp(1.0, j) * nu_sq_[ni];
            if (phi_now > factor * c.phi_cached) return true;
        }
    return false;
}

// Membership of a candidate with anchor == candidate, evaluated from grouped
// sums: exact up to floating-point reassociation of the reference test.
bool ConfSetCache::contains(const Vec& cand, const Vec& values, long t) const {
    const double iota = iota_bt(B_, t, eps_, *delta_ptr(), d_);
    Vec m2w(d_);
    for (int j = jr_.lo; j <= jr_.hi; ++j) {
        const double bound_tail = B_ * std::ldexp(1.0, j) * iota;
        for (std::size_t ni = 0; ni < nu_net_.size(); ++ni) {
            const Cell& c = cells_[static_cast<std::size_t>(j - jr_.lo) * nu_net_.size() + ni];
            double lhs = kernels::dot(c.acc_phi.data(), cand.data(), d_) - c.acc_c;
            kernels::matvec(c.m2.a.data(), d_, d_, cand.data(), m2w.data());
            double eta = c.c2sq + kernels::dot(m2w.data(), cand.data(), d_) -
                         2.0 * kernels::dot(c.c2phi.data(), cand.data(), d_);
            for (StateId next = 0; next <= S_; ++next) {
                const double v = next == S_ ? 0.0 : values[next];
                if (v == 0.0) continue;
                lhs -= c.g_state[next] * v;
                const double v1w = kernels::dot(
                    c.v1.data() + static_cast<std::size_t>(next) * d_, cand.data(), d_);
                eta += v * (v * c.v0_state[next] + 2.0 * (c.vc_state[next] - v1w));
            }
            const double rhs = std::sqrt(std::max(0.0, eta) * iota) + bound_tail;
            if (std::fabs(lhs) > rhs) return false;
        }
    }
    return true;
}

const double* ConfSetCache::delta_ptr() const { return &params_->delta; }

// --- runner ------------------------------------------------------------------

namespace {

struct GridOrder {
    std::vector<Vec> points;
    std::vector<double> norms;
};

GridOrder build_grid(const LinearSsp& env, const VagopoParams& params, double B) {
    GridOrder g;
    const double sqd = std::sqrt(static_cast<double>(env.d));
    g.points = make_lattice(env.d, 3.0 * sqd * B, params.net_w * 3.0 * sqd * B,
                            params.candidate_budget);
    g.norms.resize(g.points.size());
    for (std::size_t i = 0; i < g.points.size(); ++i)
        g.norms[i] = kernels::sumsq(g.points[i].data(), env.d);
    return g;
}

}  // namespace

VagopoResult vagopo_run(const LinearSsp& env, long K, const VagopoParams& params, Rng& rng,
                        const OracleSolution* oracle) {
    const TabularSsp tab = materialize(env);
    const double eps =
        params.eps_conf.value_or(default_eps_conf(tab.c_min(), env.d, K));
    VagopoResult res;
    RunTrace& tr = res.trace;
    tr.record_steps = params.record_steps;
    tr.s_init = env.s_init;
    tr.target_episodes = K;
    VagopoDiagnostics& diag = res.diag;

    double B = params.b_init;
    Vec w(env.d, 0.0);
    std::vector<HistoryStep> history;
    ConfSetCache cache(env, params, eps, B);
    GridOrder grid = build_grid(env, params, B);
    diag.candidate_count = static_cast<long>(grid.points.size());
    diag.nu_count = cache.nu_count();

    const long step_cap = params.step_cap.value_or(50L * K * 200L);
    const double sqd = std::sqrt(static_cast<double>(env.d));
    long t = 1;
    StateId s = env.s_init;
    long k = 1;
    long h_in_episode = 0;
    StateId prev_next = env.goal();  // s'_0 = g
    std::string pending_event;

    auto update_w = [&](StateId s_t, const char* trigger) {
        ++diag.updates;
        while (true) {
            std::vector<double> val_at(grid.points.size());
            for (std::size_t i = 0; i < grid.points.size(); ++i)
                val_at[i] = value_of(env, grid.points[i], B, s_t);
            std::vector<std::size_t> order(grid.points.size());
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                if (val_at[a] != val_at[b]) return val_at[a] < val_at[b];
                if (grid.norms[a] != grid.norms[b]) return grid.norms[a] < grid.norms[b];
                return a < b;
            });
            bool found = false;
            for (std::size_t i : order) {
                const Vec vals = values_of(env, grid.points[i], B);
                if (cache.contains(grid.points[i], vals, t)) {
                    w = grid.points[i];
                    found = true;
                    break;
                }
            }
            if (!found) {
                ++diag.infeasible_grid_events;
                tr.events.emplace_back(t, std::string("infeasible_grid:") + trigger);
                return;
            }
            if (value_of(env, w, B, s_t) > B) {
                B *= 2.0;
                ++diag.doublings;
                tr.events.emplace_back(t, "b_double");
                cache.reset(B, history);
                grid = build_grid(env, params, B);
                diag.candidate_count = static_cast<long>(grid.points.size());
                diag.nu_count = cache.nu_count();
                continue;
            }
            break;
        }
    };

    while (tr.episodes_completed < K) {
        if (tr.total_real_steps >= step_cap) {
            tr.step_capped = true;
            break;
        }
        const char* trigger = nullptr;
        if (prev_next == env.goal()) {
            trigger = "epoch_goal";
            ++diag.updates_goal;
        } else if (cache.lazy_triggered()) {
            trigger = "epoch_lazy";
            ++diag.updates_lazy;
        } else if (value_of(env, w, B, s) >= 2.0 * B * (1.0 - 1e-12)) {
            trigger = "epoch_over";  // overestimate condition: the cap was hit
            ++diag.updates_overestimate;
        }
        if (trigger) {
            update_w(s, trigger);
            cache.snapshot();
            pending_event = trigger;
            if (oracle) {
                ++diag.optimism_checks;
                const double slack = 0.5 * params.net_w * 3.0 * sqd * B * sqd + 1e-9;
                if (value_of(env, w, B, s) <= oracle->v_star[s] + slack)
                    ++diag.optimism_holds;
            }
        }
        diag.max_b = std::max(diag.max_b, B);

        int a = 0;
        double best_q = kernels::dot(env.phi_at(s, 0), w.data(), env.d);
        for (int cand = 1; cand < env.n_actions; ++cand) {
            const double q = kernels::dot(env.phi_at(s, cand), w.data(), env.d);
            if (q < best_q) {
                best_q = q;
                a = cand;
            }
        }
        const double cost = tab.cost(s, a);
        const StateId s_next = sample_transition(tab, s, a, rng);
        ++h_in_episode;
        ++tr.total_real_steps;
        tr.total_real_cost += cost;
        if (tr.record_steps)
            tr.steps.push_back(StepRecord{t, k, diag.updates, static_cast<int>(h_in_episode),
                                          s, a, cost, s_next, false,
                                          static_cast<int>(diag.updates), B, pending_event});
        pending_event.clear();

        HistoryStep hs;
        hs.phi.assign(env.phi_at(s, a), env.phi_at(s, a) + env.d);
        hs.cost = cost;
        hs.s_next = s_next;
        history.push_back(hs);
        cache.add_step(history.back());

        if (params.whitebox_every > 0 && t % params.whitebox_every == 0) {
            ++diag.whitebox_checks;
            const Vec w_tilde = u_operator(env, w, B);
            const OmegaReport rep = omega_contains(env, history, w_tilde, w, B, eps,
                                                   params.delta, params.net_nu,
                                                   params.candidate_budget);
            if (rep.contained) ++diag.whitebox_contained;
        }

        if (s_next == env.goal()) {
            ++tr.episodes_completed;
            ++k;
            s = env.s_init;
            h_in_episode = 0;
        } else {
            s = s_next;
        }
        prev_next = s_next;
        ++t;
    }
    tr.total_records = t - 1;
    tr.complete = tr.episodes_completed == K;
    res.final_w = w;
    res.final_b = B;
    return res;
}

}  // namespace ssplab
