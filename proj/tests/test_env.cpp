#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>

#include "doctest.h"
#include "ssplab/env.hpp"

using namespace ssplab;

namespace {

// upper critical values of chi-square at significance 1e-4
double chi2_crit(int df) {
    static const std::map<int, double> table{
        {1, 15.136705226623606}, {2, 18.420680743952584}, {3, 21.107513466160444},
        {4, 23.512742444991076}, {5, 25.74483195905612},  {6, 27.85634123601417},
        {7, 29.87750390922517},  {8, 31.827628001262585}};
    return table.at(df);
}

LinearSsp lb_plus_plus(int d_action, long K, double B) {
    const double D = lower_bound_delta(K);
    Vec rho(d_action, D);
    return make_lower_bound_instance(d_action, K, B, rho);
}

}  // namespace

TEST_CASE("lower-bound instance matches the closed-form transitions") {
    const LinearSsp env = lb_plus_plus(2, 10000, 5.0);
    CHECK(env.d == 4);
    CHECK(env.n_actions == 4);
    const ValidationReport rep = validate(env);
    for (const auto& issue : rep.issues) MESSAGE(issue);
    CHECK(rep.ok);

    // action (+1,+1) is index 3 in binary counting order
    CHECK(env.prob(0, 3, env.goal()) == doctest::Approx(0.33435395405949299).epsilon(1e-12));
    const double delta = 1.0 / 3.0;
    const double D = lower_bound_delta(10000);
    for (int a = 0; a < env.n_actions; ++a) {
        const double rho_dot_a =
            D * ((a & 1 ? 1 : -1) + (a & 2 ? 1 : -1));
        CHECK(std::fabs(env.prob(0, a, env.goal()) - (delta + rho_dot_a)) < 1e-12);
        CHECK(env.prob(0, a, 1) + env.prob(0, a, env.goal()) == doctest::Approx(1.0));
        CHECK(env.cost(0, a) == doctest::Approx(0.0));
        CHECK(env.cost(1, a) == doctest::Approx(1.0));
        CHECK(env.prob(1, a, env.goal()) == doctest::Approx(1.0 / 5.0));
    }
}

TEST_CASE("lower-bound preconditions") {
    Rng rng(1);
    CHECK_THROWS_AS(make_lower_bound_instance(0, 100, 2.0, rng), SsplabError);
    CHECK_THROWS_AS(make_lower_bound_instance(2, 5, 2.0, rng), SsplabError);  // K too small
    CHECK_THROWS_AS(make_lower_bound_instance(2, 10000, 0.5, rng), SsplabError);
    // d_action = 1 is allowed (feature dimension 3 satisfies the model)
    const LinearSsp env = make_lower_bound_instance(1, 50, 2.0, rng);
    CHECK(env.d == 3);
    CHECK(validate(env).ok);
}

TEST_CASE("gap example matches the four-state table") {
    const TabularSsp env = make_gap_example(0.5, 0.1, 0.01);
    CHECK(validate(env).ok);
    CHECK(env.prob(0, 0, 1) == doctest::Approx(0.5));
    CHECK(env.prob(0, 1, 1) == doctest::Approx(0.5));
    CHECK(env.cost(1, 1) == doctest::Approx(0.01));
    CHECK(env.cost(1, 0) == doctest::Approx(0.0));
    CHECK(env.prob(2, 0, env.goal()) == doctest::Approx(0.1));
    CHECK(env.prob(2, 1, 1) == doctest::Approx(0.9));
    CHECK(env.prob(3, 0, env.goal()) == doctest::Approx(1.0));
    for (StateId s = 0; s < env.n_states; ++s)
        for (int a = 0; a < env.n_actions; ++a) {
            double sum = 0.0;
            for (StateId next = 0; next <= env.n_states; ++next) sum += env.prob(s, a, next);
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
        }
    CHECK_THROWS_AS(make_gap_example(0.0, 0.1, 0.01), SsplabError);
    CHECK_THROWS_AS(make_gap_example(0.5, 1.0, 0.01), SsplabError);
}

TEST_CASE("one-hot embedding reproduces P and c exactly") {
    const TabularSsp tab = make_gap_example(0.5, 0.1, 0.01);
    const LinearSsp lin = tabular_to_linear(tab);
    CHECK(lin.d == 8);
    CHECK(validate(lin).ok);
    for (StateId s = 0; s < tab.n_states; ++s)
        for (int a = 0; a < tab.n_actions; ++a) {
            double norm = 0.0;
            for (int i = 0; i < lin.d; ++i) norm += lin.phi_at(s, a)[i] * lin.phi_at(s, a)[i];
            CHECK(norm == doctest::Approx(1.0));
            CHECK(lin.cost(s, a) == tab.cost(s, a));
            for (StateId next = 0; next <= tab.n_states; ++next)
                CHECK(std::fabs(lin.prob(s, a, next) - tab.prob(s, a, next)) <= 1e-15);
        }
    // materialization round-trip
    const TabularSsp back = materialize(lin);
    for (std::size_t i = 0; i < tab.p.size(); ++i)
        CHECK(std::fabs(back.p[i] - tab.p[i]) <= 1e-15);
}

TEST_CASE("perturb_costs shifts every cost by eps and commutes with embedding") {
    const LinearSsp env = lb_plus_plus(2, 10000, 5.0);
    const LinearSsp same = perturb_costs(env, 0.0);
    CHECK(same.theta_star == env.theta_star);
    CHECK(same.phi == env.phi);
    CHECK(same.mu == env.mu);

    const LinearSsp shifted = perturb_costs(env, 0.1);
    for (int a = 0; a < env.n_actions; ++a) {
        CHECK(shifted.cost(0, a) == doctest::Approx(0.1).epsilon(1e-12));
        CHECK(shifted.cost(1, a) == doctest::Approx(1.1).epsilon(1e-12));
        CHECK(shifted.cost(1, a) <= 1.1 + 1e-12);
        for (StateId next = 0; next <= env.n_states; ++next)
            CHECK(shifted.prob(0, a, next) == doctest::Approx(env.prob(0, a, next)));
    }
    CHECK(validate(shifted).ok);

    // perturb-then-embed equals embed-then-perturb on a tabular instance
    const TabularSsp tab = make_gap_example(0.4, 0.2, 0.05);
    const LinearSsp embed_first = perturb_costs(tabular_to_linear(tab), 0.1);
    TabularSsp tab_shift = tab;
    for (double& c : tab_shift.c) c += 0.1;
    // direct one-hot of the shifted tabular instance (costs above 1 are fine here)
    LinearSsp shift_first = tabular_to_linear(tab);
    for (StateId s = 0; s < tab.n_states; ++s)
        for (int a = 0; a < tab.n_actions; ++a)
            shift_first.theta_star[s * tab.n_actions + a] = tab_shift.cost(s, a);
    for (StateId s = 0; s < tab.n_states; ++s)
        for (int a = 0; a < tab.n_actions; ++a)
            CHECK(std::fabs(embed_first.cost(s, a) - shift_first.cost(s, a)) <= 1e-12);
    CHECK_THROWS_AS(perturb_costs(env, -0.5), SsplabError);
}

TEST_CASE("sampler determinism and goal rejection") {
    const LinearSsp env = lb_plus_plus(2, 10000, 5.0);
    const TabularSsp tab = materialize(env);
    Rng a(11), b(11);
    for (int i = 0; i < 200; ++i)
        CHECK(sample_transition(tab, 0, 2, a) == sample_transition(tab, 0, 2, b));
    Rng c(12);
    CHECK_THROWS_AS(sample_transition(tab, tab.goal(), 0, c), SsplabError);
    // deterministic row
    const TabularSsp gap = make_gap_example(0.5, 0.1, 0.01);
    Rng d(13);
    for (int i = 0; i < 20; ++i) CHECK(sample_transition(gap, 3, 0, d) == gap.goal());
}

TEST_CASE("sampler Monte-Carlo frequency at s1 matches 1/B*") {
    const LinearSsp env = lb_plus_plus(2, 10000, 5.0);
    const TabularSsp tab = materialize(env);
    Rng rng(2024);
    const long n = 1000000;
    long goals = 0;
    for (long i = 0; i < n; ++i)
        if (sample_transition(tab, 1, 0, rng) == tab.goal()) ++goals;
    const double p = 1.0 / 5.0;
    const double sigma = std::sqrt(p * (1 - p) / n);
    CHECK(std::fabs(goals / double(n) - p) <= 3.0 * sigma);
}

TEST_CASE("sampler chi-square goodness of fit over a seed battery") {
    const TabularSsp gap = make_gap_example(0.5, 0.1, 0.01);
    const long n = 100000;
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
        Rng rng(seed);
        for (StateId s = 0; s < gap.n_states; ++s) {
            const int a = 0;
            std::vector<long> counts(gap.n_states + 1, 0);
            Rng row_rng = rng.split(static_cast<std::uint64_t>(s));
            for (long i = 0; i < n; ++i) ++counts[sample_transition(gap, s, a, row_rng)];
            double stat = 0.0;
            int df = -1;
            for (StateId next = 0; next <= gap.n_states; ++next) {
                const double expect = gap.prob(s, a, next) * n;
                if (expect == 0.0) {
                    CHECK(counts[next] == 0);
                    continue;
                }
                stat += (counts[next] - expect) * (counts[next] - expect) / expect;
                ++df;
            }
            if (df >= 1) CHECK(stat <= chi2_crit(df));
        }
    }
}

TEST_CASE("fh wrapper semantics") {
    const TabularSsp tab = make_gap_example(0.5, 0.1, 0.01);
    const FiniteHorizonView view = fh_wrap(tab, 4, TerminalCostSpec::two_b_star(5.0));
    CHECK(view.terminal(0) == doctest::Approx(10.0));
    CHECK(view.terminal(tab.goal()) == 0.0);
    Rng rng(5);
    CHECK(view.step(tab.goal(), 1, rng) == tab.goal());
    CHECK(view.cost(tab.goal(), 0) == 0.0);
    const FiniteHorizonView zero = fh_wrap(tab, 4, TerminalCostSpec::zero());
    CHECK(zero.terminal(0) == 0.0);
    CHECK_THROWS_AS(fh_wrap(tab, 0, TerminalCostSpec::zero()), SsplabError);
}

TEST_CASE("env serialization round-trips bit-exactly") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "ssplab_env_io_test";
    fs::create_directories(dir);

    const LinearSsp lin = lb_plus_plus(2, 10000, 5.0);
    save_env((dir / "lin.json").string(), lin);
    const EnvAny lin2 = load_env((dir / "lin.json").string());
    REQUIRE(std::holds_alternative<LinearSsp>(lin2));
    CHECK(std::get<LinearSsp>(lin2).phi == lin.phi);
    CHECK(std::get<LinearSsp>(lin2).mu == lin.mu);
    CHECK(std::get<LinearSsp>(lin2).theta_star == lin.theta_star);

    const TabularSsp tab = make_gap_example(0.5, 0.1, 0.01);
    save_env((dir / "tab.json").string(), tab);
    const EnvAny tab2 = load_env((dir / "tab.json").string());
    REQUIRE(std::holds_alternative<TabularSsp>(tab2));
    CHECK(std::get<TabularSsp>(tab2).p == tab.p);
    CHECK(std::get<TabularSsp>(tab2).c == tab.c);
    fs::remove_all(dir);
}

TEST_CASE("validation rejects broken instances") {
    LinearSsp env = lb_plus_plus(2, 10000, 5.0);
    env.theta_star[0] = 10.0;  // breaks both the norm and the cost range
    CHECK_FALSE(validate(env).ok);

    TabularSsp tab = make_gap_example(0.5, 0.1, 0.01);
    tab.prob(0, 0, 0) += 0.5;  // row no longer sums to 1
    CHECK_FALSE(validate(tab).ok);
}
