#include <cmath>
#include <fstream>

#include "json.hpp"
#include "ssplab/env.hpp"
#include "ssplab/oracle.hpp"

namespace ssplab {

using nlohmann::json;

namespace {

json vec_to_json(const Vec& v) { return json(v); }

Vec vec_from_json(const json& j) { return j.get<Vec>(); }

json to_json(const TabularSsp& env) {
    return json{{"type", "tabular_ssp"}, {"n_states", env.n_states},
                {"n_actions", env.n_actions}, {"s_init", env.s_init},
                {"p", vec_to_json(env.p)},   {"c", vec_to_json(env.c)}};
}

json to_json(const LinearSsp& env) {
    return json{{"type", "linear_ssp"},
                {"n_states", env.n_states},
                {"n_actions", env.n_actions},
                {"d", env.d},
                {"s_init", env.s_init},
                {"phi", vec_to_json(env.phi)},
                {"mu", vec_to_json(env.mu)},
                {"theta_star", vec_to_json(env.theta_star)},
                {"cost_perturbation", env.cost_perturbation}};
}

json to_json(const LinearMixtureSsp& env) {
    return json{{"type", "linear_mixture_ssp"}, {"n_states", env.n_states},
                {"n_actions", env.n_actions},   {"d", env.d},
                {"s_init", env.s_init},         {"phi_mix", vec_to_json(env.phi_mix)},
                {"theta_star", vec_to_json(env.theta_star)}, {"c", vec_to_json(env.c)}};
}

template <typename T>
void check_size(const Vec& v, std::size_t want, const char* field) {
    if (v.size() != want)
        throw SsplabError(std::string("env file: field '") + field + "' has wrong length");
}

}  // namespace

void save_env(const std::string& path, const EnvAny& env) {
    json j = std::visit([](const auto& e) { return to_json(e); }, env);
    std::ofstream out(path);
    if (!out) throw SsplabError("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

EnvAny load_env(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SsplabError("cannot open " + path);
    json j;
    in >> j;
    const std::string type = j.at("type").get<std::string>();
    if (type == "tabular_ssp") {
        TabularSsp env;
        env.n_states = j.at("n_states").get<int>();
        env.n_actions = j.at("n_actions").get<int>();
        env.s_init = j.at("s_init").get<int>();
        env.p = vec_from_json(j.at("p"));
        env.c = vec_from_json(j.at("c"));
        check_size<TabularSsp>(env.p,
                               static_cast<std::size_t>(env.n_states) * env.n_actions *
                                   (env.n_states + 1),
                               "p");
        check_size<TabularSsp>(env.c, static_cast<std::size_t>(env.n_states) * env.n_actions,
                               "c");
        return env;
    }
    if (type == "linear_ssp") {
        LinearSsp env;
        env.n_states = j.at("n_states").get<int>();
        env.n_actions = j.at("n_actions").get<int>();
        env.d = j.at("d").get<int>();
        env.s_init = j.at("s_init").get<int>();
        env.phi = vec_from_json(j.at("phi"));
        env.mu = vec_from_json(j.at("mu"));
        env.theta_star = vec_from_json(j.at("theta_star"));
        env.cost_perturbation = j.value("cost_perturbation", 0.0);
        check_size<LinearSsp>(
            env.phi, static_cast<std::size_t>(env.n_states) * env.n_actions * env.d, "phi");
        check_size<LinearSsp>(env.mu, static_cast<std::size_t>(env.n_states + 1) * env.d, "mu");
        check_size<LinearSsp>(env.theta_star, static_cast<std::size_t>(env.d), "theta_star");
        return env;
    }
    if (type == "linear_mixture_ssp") {
        LinearMixtureSsp env;
        env.n_states = j.at("n_states").get<int>();
        env.n_actions = j.at("n_actions").get<int>();
        env.d = j.at("d").get<int>();
        env.s_init = j.at("s_init").get<int>();
        env.phi_mix = vec_from_json(j.at("phi_mix"));
        env.theta_star = vec_from_json(j.at("theta_star"));
        env.c = vec_from_json(j.at("c"));
        check_size<LinearMixtureSsp>(env.phi_mix,
                                     static_cast<std::size_t>(env.n_states) * env.n_actions *
                                         (env.n_states + 1) * env.d,
                                     "phi_mix");
        return env;
    }
    throw SsplabError("env file: unknown type '" + type + "'");
}

void save_oracle(const std::string& path, const OracleSolution& sol,
                 const FhOracleSolution* fh) {
    json j;
    j["schema"] = 1;
    j["n_states"] = sol.n_states;
    j["n_actions"] = sol.n_actions;
    j["V_star"] = sol.v_star;
    j["Q_star"] = sol.q_star;
    j["pi_star"] = sol.pi_star;
    j["gap"] = sol.gap;
    j["hitting"] = sol.hitting;
    j["B_star"] = sol.b_star;
    j["T_star"] = sol.t_star;
    j["c_min"] = sol.c_min;
    j["gap_min"] = std::isfinite(sol.gap_min) ? json(sol.gap_min) : json("inf");
    j["tol"] = sol.tol;
    j["residual"] = sol.residual;
    j["iterations"] = sol.iterations;
    j["gap_note"] =
        "gap(s,a) = Q*(s,a) - V*(s) is the one-step Bellman gap. For instances where a "
        "suboptimal action leads back to the same state this differs from the value of "
        "committing to that action on every return (gap example at (s1,a1): Bellman gap "
        "1 - q*eps versus commit value 1/q - eps).";
    if (fh) {
        json f;
        f["H"] = fh->H;
        f["gap_min_prime"] =
            std::isfinite(fh->gap_min_prime) ? json(fh->gap_min_prime) : json("inf");
        f["V_1"] = Vec(fh->v_h.begin(), fh->v_h.begin() + fh->n_states);
        j["finite_horizon"] = f;
    }
    std::ofstream out(path);
    if (!out) throw SsplabError("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

std::string env_type_name(const EnvAny& env) {
    return std::visit([](const auto& e) {
        return to_json(e).at("type").template get<std::string>();
    }, env);
}

}  // namespace ssplab
