#pragma once

#include <optional>
#include <vector>

#include "ssplab/env.hpp"
#include "ssplab/oracle.hpp"
#include "ssplab/trace.hpp"

namespace ssplab {

// clip_j(x) = [x]_{[-2^j, 2^j]}; f_j(x) = clip_j(x) x; g_j is the convex
// envelope-style majorant with f_j <= g_j <= 2 f_j.
double clip_j(int j, double x);
double f_j(int j, double x);
double g_j(int j, double x);

// J_B = { ceil(log2 eps), ..., ceil(log2(6 sqrt(d) B)) }, inclusive
struct JRange {
    int lo = 0;
    int hi = 0;
    int size() const { return hi - lo + 1; }
};
JRange j_range(double eps, int d, double B);

// iota_{B,t} = 2^11 d ln(48 d B t / (eps delta))
double iota_bt(double B, long t, double eps, double delta, int d);

// V_{w,B}(s) = min_a [phi(s,a)^T w]_{[0,2B]}, V(g) = 0
double value_of(const LinearSsp& env, const Vec& w, double B, StateId s);
Vec values_of(const LinearSsp& env, const Vec& w, double B);  // per non-goal state

// U_B w = theta* + sum_s' V_{w,B}(s') mu(s')  (white-box utility)
Vec u_operator(const LinearSsp& env, const Vec& w, double B);

// lattice {xi n : n in Z}^d intersected with the L2 ball of the given radius
std::vector<Vec> make_lattice(int d, double radius, double spacing, long budget);

struct VagopoParams {
    double delta = 0.05;
    std::optional<double> eps_conf;  // default c_min/(150 d^3 K), clamped at >= 1e-8
    double net_w = 0.25;             // lattice spacing as a fraction of the ball radius
    double net_nu = 0.5;
    long candidate_budget = 100000;
    double b_init = 1.0;
    std::optional<long> step_cap;
    bool record_steps = true;
    long whitebox_every = 0;  // if > 0, run the U_B-image membership check every N steps
};

double default_eps_conf(double c_min, int d, long K);

struct HistoryStep {
    Vec phi;
    double cost = 0.0;
    StateId s_next = 0;
};

struct OmegaReport {
    bool contained = false;
    double worst_violation = 0.0;  // max over (j, nu) of (lhs - rhs) / max(rhs, eps)
    int worst_j = 0;
};

// Reference membership test for the variance-aware confidence set: candidate
// w' against the set anchored at w_anchor (the algorithm uses anchor ==
// candidate). History is the full prefix i < t.
OmegaReport omega_contains(const LinearSsp& env, const std::vector<HistoryStep>& history,
                           const Vec& w_candidate, const Vec& w_anchor, double B,
                           double eps, double delta, double net_nu, long budget);

// Running per-(j, nu) sums over the history that make candidate membership
// O(d^2 + S) instead of O(t); equivalence-tested against omega_contains.
class ConfSetCache {
public:
    ConfSetCache(const LinearSsp& env, const VagopoParams& params, double eps, double B);
    ~ConfSetCache();

    void reset(double B, const std::vector<HistoryStep>& history);
    void add_step(const HistoryStep& step);
    void snapshot();  // records Phi^j_{t'}(nu) for the lazy-update test
    bool lazy_triggered() const;
    // anchor == candidate; `values` is values_of(env, candidate, B)
    bool contains(const Vec& candidate, const Vec& values, long t) const;
    long nu_count() const { return static_cast<long>(nu_net_.size()); }
    JRange jrange() const { return jr_; }

private:
    struct Cell;
    const double* delta_ptr() const;

    const LinearSsp* env_;
    const VagopoParams* params_;
    double eps_;
    int d_;
    int S_;
    double B_ = 1.0;
    JRange jr_;
    std::vector<Vec> nu_net_;
    Vec nu_sq_;
    std::vector<Cell> cells_;
};

struct VagopoDiagnostics {
    long updates = 0;
    long updates_goal = 0;
    long updates_lazy = 0;
    long updates_overestimate = 0;  // L'
    long doublings = 0;
    long infeasible_grid_events = 0;
    double max_b = 0.0;
    long whitebox_checks = 0;
    long whitebox_contained = 0;
    long optimism_checks = 0;   // V_t(s_t) <= V*(s_t) + slack at update steps
    long optimism_holds = 0;
    long candidate_count = 0;   // w-grid size at the final B
    long nu_count = 0;
};

struct VagopoResult {
    RunTrace trace;
    VagopoDiagnostics diag;
    Vec final_w;
    double final_b = 0.0;
};

// Full desk-scale run of the variance-aware global-optimization learner. The
// oracle pointer only feeds the optimism diagnostic; decisions never use it.
VagopoResult vagopo_run(const LinearSsp& env, long K, const VagopoParams& params, Rng& rng,
                        const OracleSolution* oracle = nullptr);

}  // namespace ssplab
