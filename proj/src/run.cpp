#include "hew/run.hpp"

#include "hew/config.hpp"
#include "hew/errors.hpp"
#include "hew/geometry.hpp"
#include "hew/lagrangian.hpp"
#include "hew/optimizer.hpp"
#include "hew/residuals.hpp"
#include "hew/spectral.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace hew {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw NumericError("cannot open output file: " + path.string());
    out << content;
    if (!out)
        throw NumericError("failed writing output file: " + path.string());
}

ordered_json geometry_json(const GeometryReport& g) {
    ordered_json j;
    j["ell"] = g.ell;
    j["m"] = g.m;
    j["theta_osc"] = g.theta_osc;
    j["self_intersects"] = g.self_intersects;
    j["supnorm_bound_ok"] = g.supnorm_bound_ok;
    j["area_bound_ok"] = g.area_bound_ok;
    j["log_omega_mean"] = g.log_omega_mean;
    return j;
}

ordered_json residuals_json(const ResidualReport& r) {
    ordered_json j;
    j["euler_chi_std"] = r.euler_chi_std;
    j["gamma0"] = r.gamma0;
    j["euler_w_sup"] = r.euler_w_sup;
    j["euler_w_primitive_sup"] = r.euler_w_primitive_sup;
    j["material_sup"] = r.material_sup;
    j["dynamic_sup"] = r.dynamic_sup;
    j["rh_sup"] = r.rh_sup;
    return j;
}

ordered_json solve_body(const SolveResult& res) {
    ordered_json j;
    j["converged"] = res.converged;
    j["iterations"] = res.iterations;
    j["j0"] = res.j0_value;
    j["height"] = res.height;
    j["grad_sup"] = res.grad_sup;
    j["gamma0"] = res.state.gamma0;
    j["trivial"] = res.trivial;
    j["below_threshold"] = res.below_threshold;
    j["geometry"] = geometry_json(res.geometry);
    j["residuals"] = residuals_json(res.residuals);
    return j;
}

ordered_json settings_json(const AppConfig& cfg) {
    ordered_json j;
    j["physics"] = {{"c2", cfg.solve.c2}, {"g", cfg.solve.g}, {"mu_star", cfg.solve.mu_star}};
    j["numerics"] = {{"N", cfg.solve.n},
                     {"M", 2 * cfg.solve.n},
                     {"eps0", cfg.solve.eps0},
                     {"tol_grad", cfg.solve.tol_grad},
                     {"max_iter", cfg.solve.max_iter},
                     {"seed", cfg.seed}};
    ordered_json en;
    en["family"] = "illustrative";
    en["a"] = cfg.energy.a;
    en["b"] = cfg.energy.b;
    en["beta"] = cfg.energy.beta;
    en["d"] = cfg.energy.d;
    en["r"] = cfg.energy.r;
    en["s"] = cfg.energy.s;
    en["p"] = cfg.energy.p;
    en["alpha"] = cfg.energy.alpha;
    en["delta"] = cfg.energy.delta;
    j["energy"] = en;
    return j;
}

std::string profile_csv(const WaveState& state, const Field& p) {
    const std::size_t m = state.grid();
    const Field cw = hilbert(state.w());
    std::string out = "tau,w,Cw,Omega,Theta,sigma,chi_prime,nu,mu,P\n";
    for (std::size_t j = 0; j < m; ++j) {
        const double nu = state.frame.omega_m[j] / state.chi_prime[j];
        const double mu = nu * state.frame.sigma_m[j];
        out += num17(grid_point(m, j));
        out += ',';
        out += num17(state.w()[j]);
        out += ',';
        out += num17(cw[j]);
        out += ',';
        out += num17(state.frame.omega_m[j]);
        out += ',';
        out += num17(state.frame.theta_m[j]);
        out += ',';
        out += num17(state.frame.sigma_m[j]);
        out += ',';
        out += num17(state.chi_prime[j]);
        out += ',';
        out += num17(nu);
        out += ',';
        out += num17(mu);
        out += ',';
        out += num17(p[j]);
        out += '\n';
    }
    return out;
}

ordered_json hypothesis_json(const HypothesisReport& rep) {
    ordered_json results = ordered_json::array();
    for (const auto& r : rep.results) {
        ordered_json item;
        item["key"] = r.key;
        switch (r.status) {
        case CheckStatus::pass: item["status"] = "pass"; break;
        case CheckStatus::fail: item["status"] = "fail"; break;
        case CheckStatus::not_checked: item["status"] = "not_checked"; break;
        }
        item["detail"] = r.detail;
        if (r.witness)
            item["witness"] = {(*r.witness)[0], (*r.witness)[1]};
        else
            item["witness"] = nullptr;
        results.push_back(std::move(item));
    }
    ordered_json j;
    j["results"] = std::move(results);
    j["mandatory_pass"] = rep.mandatory_pass();
    if (rep.admissible_c2) {
        j["admissible_c2"] = {{"lo", rep.admissible_c2->lo},
                              {"hi", rep.admissible_c2->hi},
                              {"empty", rep.admissible_c2->empty}};
    } else {
        j["admissible_c2"] = nullptr;
    }
    return j;
}

int run_solve(const AppConfig& cfg, const std::filesystem::path& out_dir,
              const std::string& command) {
    IllustrativeEnergy model(cfg.energy);
    SolveResult res = maximize(model, cfg.solve);

    ordered_json j;
    j["command"] = command;
    j.update(solve_body(res));
    j.update(settings_json(cfg));
    write_file(out_dir / "result.json", j.dump(2) + "\n");
    write_file(out_dir / "profile.csv", profile_csv(res.state, res.residuals.pressure));

    if (!res.converged) {
        std::cerr << "solve did not converge: gradient sup " << res.grad_sup << " after "
                  << res.iterations << " iterations\n";
        return 3;
    }
    return 0;
}

int run_sweep(const AppConfig& cfg, const std::filesystem::path& out_dir) {
    if (cfg.sweep_c2.empty())
        throw ConfigError("sweep requires a nonempty sweep.c2_values list");
    IllustrativeEnergy model(cfg.energy);
    const std::vector<SweepEntry> entries =
        continuation_sweep(model, cfg.solve, cfg.sweep_c2, cfg.sweep_warm_start);

    std::string csv = "c2,J0,height,ell,gamma0,residual_dynamic\n";
    ordered_json list = ordered_json::array();
    bool any_good = false;
    for (const auto& e : entries) {
        ordered_json item;
        item["c2"] = e.c2;
        item["solved"] = e.solved;
        if (e.solved) {
            const SolveResult& r = *e.result;
            item["result"] = solve_body(r);
            csv += num17(e.c2) + "," + num17(r.j0_value) + "," + num17(r.height) + "," +
                   num17(r.geometry.ell) + "," + num17(r.state.gamma0) + "," +
                   num17(r.residuals.dynamic_sup) + "\n";
            any_good = any_good || r.converged;
        } else {
            item["error"] = e.error;
        }
        list.push_back(std::move(item));
    }

    ordered_json j;
    j["command"] = "sweep";
    j["warm_start"] = cfg.sweep_warm_start;
    j["entries"] = std::move(list);
    j.update(settings_json(cfg));
    write_file(out_dir / "result.json", j.dump(2) + "\n");
    write_file(out_dir / "summary.csv", csv);

    if (!any_good) {
        std::cerr << "sweep produced no converged solution\n";
        return 3;
    }
    return 0;
}

int run_check(const AppConfig& cfg, const std::filesystem::path& out_dir) {
    IllustrativeEnergy model(cfg.energy);
    const HypothesisReport rep = check_hypotheses(model, cfg.solve.c2, cfg.solve.g,
                                                  cfg.solve.mu_star, cfg.hyp_grid,
                                                  cfg.hyp_constants);
    ordered_json j;
    j["command"] = "check";
    j.update(hypothesis_json(rep));
    j.update(settings_json(cfg));
    write_file(out_dir / "result.json", j.dump(2) + "\n");
    return 0;
}

int run_geometry(const std::filesystem::path& out_dir) {
    std::string csv = "ell,theta,A,A_prime\n";
    const double lo = std::log(1.0 + 1e-8), hi = std::log(1e4);
    const int n = 200;
    for (int i = 0; i < n; ++i) {
        const double ell = std::exp(lo + (hi - lo) * i / (n - 1));
        csv += num17(ell) + "," + num17(theta_of_ell(ell)) + "," + num17(area_A(ell)) + "," +
               num17(area_A_prime(ell)) + "\n";
    }
    write_file(out_dir / "geometry.csv", csv);
    return 0;
}

} // namespace

int run(const RunConfig& run_config) {
    try {
        std::string text = run_config.config_path.empty() ? std::string("{}")
                                                          : read_file(run_config.config_path);
        if (!run_config.overrides.empty())
            text = apply_overrides(text, run_config.overrides);
        const AppConfig cfg = parse_config(text);

        const std::filesystem::path out_dir(run_config.output_dir);
        std::filesystem::create_directories(out_dir);

        const std::string& cmd = run_config.command;
        if (cmd == "solve" || cmd == "residuals")
            return run_solve(cfg, out_dir, cmd);
        if (cmd == "sweep")
            return run_sweep(cfg, out_dir);
        if (cmd == "check")
            return run_check(cfg, out_dir);
        if (cmd == "geometry")
            return run_geometry(out_dir);
        throw ConfigError("unknown command \"" + cmd +
                          "\"; expected solve, sweep, check, geometry or residuals");
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace hew
