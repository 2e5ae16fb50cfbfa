#include "hew/config.hpp"

#include "hew/errors.hpp"

#include <json.hpp>

#include <initializer_list>
#include <string>

namespace hew {

namespace {

using json = nlohmann::json;

[[noreturn]] void bad(const std::string& pointer, const std::string& what) {
    throw ConfigError("config error at " + (pointer.empty() ? "/" : pointer) + ": " + what);
}

void require_object(const json& node, const std::string& pointer) {
    if (!node.is_object())
        bad(pointer, "expected an object");
}

void reject_unknown(const json& obj, const std::string& pointer,
                    std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key)
                known = true;
        if (!known)
            bad(pointer + "/" + item.key(), "unknown key");
    }
}

double as_number(const json& node, const std::string& pointer) {
    if (!node.is_number())
        bad(pointer, "expected a number");
    return node.get<double>();
}

void read_number(const json& obj, const std::string& pointer, const char* key, double& out) {
    if (obj.contains(key))
        out = as_number(obj.at(key), pointer + "/" + key);
}

void read_optional(const json& obj, const std::string& pointer, const char* key,
                   std::optional<double>& out) {
    if (obj.contains(key))
        out = as_number(obj.at(key), pointer + "/" + key);
}

void read_size(const json& obj, const std::string& pointer, const char* key, std::size_t& out) {
    if (!obj.contains(key))
        return;
    const json& node = obj.at(key);
    if (!node.is_number_unsigned())
        bad(pointer + "/" + key, "expected a nonnegative integer");
    out = node.get<std::size_t>();
}

void read_int(const json& obj, const std::string& pointer, const char* key, int& out) {
    if (!obj.contains(key))
        return;
    const json& node = obj.at(key);
    if (!node.is_number_integer())
        bad(pointer + "/" + key, "expected an integer");
    out = node.get<int>();
}

void read_bool(const json& obj, const std::string& pointer, const char* key, bool& out) {
    if (!obj.contains(key))
        return;
    const json& node = obj.at(key);
    if (!node.is_boolean())
        bad(pointer + "/" + key, "expected a boolean");
    out = node.get<bool>();
}

} // namespace

AppConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not well-formed JSON: ") + e.what());
    }
    require_object(doc, "");
    reject_unknown(doc, "", {"energy", "physics", "numerics", "sweep", "hypotheses"});

    AppConfig cfg;

    if (doc.contains("energy")) {
        const json& e = doc.at("energy");
        require_object(e, "/energy");
        reject_unknown(e, "/energy",
                       {"family", "a", "b", "beta", "d", "r", "s", "p", "alpha", "delta"});
        if (e.contains("family")) {
            const json& fam = e.at("family");
            if (!fam.is_string() || fam.get<std::string>() != "illustrative")
                bad("/energy/family", "unknown energy family; supported: \"illustrative\"");
        }
        read_number(e, "/energy", "a", cfg.energy.a);
        read_number(e, "/energy", "b", cfg.energy.b);
        read_number(e, "/energy", "beta", cfg.energy.beta);
        read_number(e, "/energy", "d", cfg.energy.d);
        read_number(e, "/energy", "r", cfg.energy.r);
        read_number(e, "/energy", "s", cfg.energy.s);
        read_number(e, "/energy", "p", cfg.energy.p);
        read_number(e, "/energy", "alpha", cfg.energy.alpha);
        read_number(e, "/energy", "delta", cfg.energy.delta);
    }

    // Constructing the model validates the family's own parameter ranges.
    try {
        IllustrativeEnergy probe(cfg.energy);
        (void)probe;
    } catch (const ConfigError& err) {
        bad("/energy", err.what());
    }
    if (!(cfg.energy.alpha > cfg.energy.delta + 1.0))
        bad("/energy",
            "mixed-term joint convexity requires alpha > delta + 1; got alpha = " +
                std::to_string(cfg.energy.alpha) + ", delta = " + std::to_string(cfg.energy.delta));

    if (doc.contains("physics")) {
        const json& ph = doc.at("physics");
        require_object(ph, "/physics");
        reject_unknown(ph, "/physics", {"c2", "g", "mu_star"});
        read_number(ph, "/physics", "c2", cfg.solve.c2);
        read_number(ph, "/physics", "g", cfg.solve.g);
        read_number(ph, "/physics", "mu_star", cfg.solve.mu_star);
    }
    if (!(cfg.solve.c2 > 0.0))
        bad("/physics/c2", "wave speed squared must be positive");
    if (!(cfg.solve.g > 0.0))
        bad("/physics/g", "gravity must be positive");
    if (!(cfg.solve.mu_star > 0.0 && cfg.solve.mu_star < 1.0))
        bad("/physics/mu_star", "mu_star must lie strictly between 0 and 1");

    std::size_t grid_m = 0;
    if (doc.contains("numerics")) {
        const json& nm = doc.at("numerics");
        require_object(nm, "/numerics");
        reject_unknown(nm, "/numerics", {"N", "M", "eps0", "tol_grad", "max_iter", "seed"});
        read_size(nm, "/numerics", "N", cfg.solve.n);
        read_size(nm, "/numerics", "M", grid_m);
        read_number(nm, "/numerics", "eps0", cfg.solve.eps0);
        read_number(nm, "/numerics", "tol_grad", cfg.solve.tol_grad);
        read_int(nm, "/numerics", "max_iter", cfg.solve.max_iter);
        std::size_t seed = cfg.seed;
        read_size(nm, "/numerics", "seed", seed);
        cfg.seed = seed;
    }
    if (cfg.solve.n < 2)
        bad("/numerics/N", "mode count must be at least 2");
    if (grid_m != 0 && grid_m != 2 * cfg.solve.n)
        bad("/numerics/M", "grid size must equal 2N (got M = " + std::to_string(grid_m) +
                               ", N = " + std::to_string(cfg.solve.n) + ")");
    if (!(cfg.solve.eps0 > 0.0))
        bad("/numerics/eps0", "initial amplitude must be positive");
    if (!(cfg.solve.tol_grad > 0.0))
        bad("/numerics/tol_grad", "gradient tolerance must be positive");
    if (cfg.solve.max_iter < 1)
        bad("/numerics/max_iter", "iteration budget must be at least 1");

    if (doc.contains("sweep")) {
        const json& sw = doc.at("sweep");
        require_object(sw, "/sweep");
        reject_unknown(sw, "/sweep", {"c2_values", "warm_start"});
        if (sw.contains("c2_values")) {
            const json& vals = sw.at("c2_values");
            if (!vals.is_array())
                bad("/sweep/c2_values", "expected an array of numbers");
            for (std::size_t i = 0; i < vals.size(); ++i) {
                const double v =
                    as_number(vals[i], "/sweep/c2_values/" + std::to_string(i));
                if (!(v > 0.0))
                    bad("/sweep/c2_values/" + std::to_string(i),
                        "wave speed squared must be positive");
                cfg.sweep_c2.push_back(v);
            }
        }
        read_bool(sw, "/sweep", "warm_start", cfg.sweep_warm_start);
    }

    if (doc.contains("hypotheses")) {
        const json& hy = doc.at("hypotheses");
        require_object(hy, "/hypotheses");
        reject_unknown(hy, "/hypotheses", {"grid", "constants"});
        if (hy.contains("grid")) {
            const json& gr = hy.at("grid");
            require_object(gr, "/hypotheses/grid");
            reject_unknown(gr, "/hypotheses/grid",
                           {"nu_min", "nu_max", "mu_max", "nu_points", "mu_points", "mu_floor"});
            read_number(gr, "/hypotheses/grid", "nu_min", cfg.hyp_grid.nu_min);
            read_number(gr, "/hypotheses/grid", "nu_max", cfg.hyp_grid.nu_max);
            read_number(gr, "/hypotheses/grid", "mu_max", cfg.hyp_grid.mu_max);
            read_size(gr, "/hypotheses/grid", "nu_points", cfg.hyp_grid.nu_points);
            read_size(gr, "/hypotheses/grid", "mu_points", cfg.hyp_grid.mu_points);
            read_number(gr, "/hypotheses/grid", "mu_floor", cfg.hyp_grid.mu_floor);
            if (!(cfg.hyp_grid.nu_min > 0.0) || !(cfg.hyp_grid.nu_max > cfg.hyp_grid.nu_min))
                bad("/hypotheses/grid", "need 0 < nu_min < nu_max");
            if (!(cfg.hyp_grid.mu_floor > 0.0) || !(cfg.hyp_grid.mu_max > cfg.hyp_grid.mu_floor))
                bad("/hypotheses/grid", "need 0 < mu_floor < mu_max");
            if (cfg.hyp_grid.nu_points < 2 || cfg.hyp_grid.mu_points < 2)
                bad("/hypotheses/grid", "need at least 2 points per axis");
        }
        if (hy.contains("constants")) {
            const json& ct = hy.at("constants");
            require_object(ct, "/hypotheses/constants");
            reject_unknown(ct, "/hypotheses/constants",
                           {"k0", "k0_offset", "k1", "nu_bar1", "mu_bar1", "k2", "nu_bar2",
                            "mu_bar2", "pinch_lo", "pinch_hi", "pinch_nu_bar", "pinch_mu_bar",
                            "pinch_gammas", "k3", "eps3", "nu_bar3", "mu_bar3"});
            auto& cc = cfg.hyp_constants;
            read_optional(ct, "/hypotheses/constants", "k0", cc.k0);
            read_optional(ct, "/hypotheses/constants", "k0_offset", cc.k0_offset);
            read_optional(ct, "/hypotheses/constants", "k1", cc.k1);
            read_optional(ct, "/hypotheses/constants", "nu_bar1", cc.nu_bar1);
            read_optional(ct, "/hypotheses/constants", "mu_bar1", cc.mu_bar1);
            read_optional(ct, "/hypotheses/constants", "k2", cc.k2);
            read_optional(ct, "/hypotheses/constants", "nu_bar2", cc.nu_bar2);
            read_optional(ct, "/hypotheses/constants", "mu_bar2", cc.mu_bar2);
            read_optional(ct, "/hypotheses/constants", "pinch_lo", cc.pinch_lo);
            read_optional(ct, "/hypotheses/constants", "pinch_hi", cc.pinch_hi);
            read_optional(ct, "/hypotheses/constants", "pinch_nu_bar", cc.pinch_nu_bar);
            read_optional(ct, "/hypotheses/constants", "pinch_mu_bar", cc.pinch_mu_bar);
            read_optional(ct, "/hypotheses/constants", "k3", cc.k3);
            read_optional(ct, "/hypotheses/constants", "eps3", cc.eps3);
            read_optional(ct, "/hypotheses/constants", "nu_bar3", cc.nu_bar3);
            read_optional(ct, "/hypotheses/constants", "mu_bar3", cc.mu_bar3);
            if (ct.contains("pinch_gammas")) {
                const json& gs = ct.at("pinch_gammas");
                if (!gs.is_array())
                    bad("/hypotheses/constants/pinch_gammas", "expected an array of numbers");
                cc.pinch_gammas.clear();
                for (std::size_t i = 0; i < gs.size(); ++i)
                    cc.pinch_gammas.push_back(as_number(
                        gs[i], "/hypotheses/constants/pinch_gammas/" + std::to_string(i)));
            }
        }
    }

    return cfg;
}

std::string apply_overrides(const std::string& text, const std::vector<std::string>& sets) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not well-formed JSON: ") + e.what());
    }
    for (const std::string& item : sets) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("override must look like path.to.key=value, got \"" + item + "\"");
        const std::string path = item.substr(0, eq);
        const std::string raw = item.substr(eq + 1);

        json value = json::parse(raw, nullptr, false);
        if (value.is_discarded())
            value = raw; // not valid JSON: keep as a string

        json* node = &doc;
        std::size_t start = 0;
        while (true) {
            const auto dotpos = path.find('.', start);
            const std::string key = path.substr(start, dotpos - start);
            if (key.empty())
                throw ConfigError("override path has an empty segment: \"" + path + "\"");
            if (dotpos == std::string::npos) {
                (*node)[key] = std::move(value);
                break;
            }
            if (!node->contains(key) || !(*node)[key].is_object())
                (*node)[key] = json::object();
            node = &(*node)[key];
            start = dotpos + 1;
        }
    }
    return doc.dump();
}

} // namespace hew
