#include "hew/energy.hpp"

#include "hew/errors.hpp"
#include "hew/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hew {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double sgn(double x) { return (x > 0.0) ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// |x|^e with the IEEE conventions pow(0, 0) = 1, pow(0, e>0) = 0.
double abs_pow(double x, double e) { return std::pow(std::abs(x), e); }

// sgn(x) |x|^e, zero at x = 0.
double odd_pow(double x, double e) { return (x == 0.0) ? 0.0 : sgn(x) * abs_pow(x, e); }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    if (n == 1) {
        g[0] = lo;
        return g;
    }
    const double llo = std::log(lo), lhi = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

} // namespace

IllustrativeEnergy::IllustrativeEnergy(const IllustrativeParams& params) : p_(params) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0))
            throw ConfigError(std::string("stored-energy modulus ") + name + " must be positive");
    };
    positive(p_.a, "a");
    positive(p_.b, "b");
    positive(p_.beta, "beta");
    positive(p_.d, "d");
    positive(p_.s, "s");
    positive(p_.delta, "delta");
    if (!(p_.r > 1.0))
        throw ConfigError("stored-energy exponent r must exceed 1");
    if (!(p_.alpha >= 2.0))
        throw ConfigError("stored-energy exponent alpha must be at least 2 (C2 smoothness)");
    if (!(p_.p > 2.0))
        throw ConfigError("stored-energy exponent p must exceed 2");
}

bool IllustrativeEnergy::alpha_is_two() const { return std::abs(p_.alpha - 2.0) < 1e-12; }

double IllustrativeEnergy::beta0() const { return alpha_is_two() ? p_.beta + p_.d : p_.beta; }

double IllustrativeEnergy::eval(double nu, double mu) const {
    if (!(nu > 0.0))
        throw DomainError("stored energy requires stretch nu > 0");
    const auto& c = p_;
    return c.a / c.s * std::pow(nu, -c.s) + c.a / c.r * std::pow(nu, c.r) +
           c.b * abs_pow(mu, c.p) + c.beta * mu * mu +
           c.d * abs_pow(mu, c.alpha) * std::pow(nu, -c.delta) -
           c.a * (c.s + c.r) / (c.s * c.r);
}

std::array<double, 2> IllustrativeEnergy::grad(double nu, double mu) const {
    if (!(nu > 0.0))
        throw DomainError("stored energy requires stretch nu > 0");
    const auto& c = p_;
    const double e1 = -c.a * std::pow(nu, -c.s - 1.0) + c.a * std::pow(nu, c.r - 1.0) -
                      c.d * c.delta * abs_pow(mu, c.alpha) * std::pow(nu, -c.delta - 1.0);
    const double e2 = c.b * c.p * odd_pow(mu, c.p - 1.0) + 2.0 * c.beta * mu +
                      c.d * c.alpha * odd_pow(mu, c.alpha - 1.0) * std::pow(nu, -c.delta);
    return {e1, e2};
}

std::array<double, 3> IllustrativeEnergy::hess(double nu, double mu) const {
    if (!(nu > 0.0))
        throw DomainError("stored energy requires stretch nu > 0");
    const auto& c = p_;
    const double e11 = c.a * (c.s + 1.0) * std::pow(nu, -c.s - 2.0) +
                       c.a * (c.r - 1.0) * std::pow(nu, c.r - 2.0) +
                       c.d * c.delta * (c.delta + 1.0) * abs_pow(mu, c.alpha) *
                           std::pow(nu, -c.delta - 2.0);
    const double e12 = -c.d * c.delta * c.alpha * odd_pow(mu, c.alpha - 1.0) *
                       std::pow(nu, -c.delta - 1.0);
    const double e22 = c.b * c.p * (c.p - 1.0) * abs_pow(mu, c.p - 2.0) + 2.0 * c.beta +
                       c.d * c.alpha * (c.alpha - 1.0) * abs_pow(mu, c.alpha - 2.0) *
                           std::pow(nu, -c.delta);
    return {e11, e12, e22};
}

double estar(const EnergyModel& model, double t, double sigma) {
    if (!(t > 0.0))
        throw DomainError("dual density requires t > 0");
    return t * model.eval(1.0 / t, sigma / t);
}

std::array<double, 2> estar_grad(const EnergyModel& model, double t, double sigma) {
    if (!(t > 0.0))
        throw DomainError("dual density requires t > 0");
    const double nu = 1.0 / t, mu = sigma / t;
    const double e = model.eval(nu, mu);
    const auto [e1, e2] = model.grad(nu, mu);
    // d/dt [t E(1/t, sigma/t)] = E - nu E1 - mu E2; d/dsigma = E2.
    return {e - nu * e1 - mu * e2, e2};
}

std::array<double, 3> estar_hess(const EnergyModel& model, double t, double sigma) {
    if (!(t > 0.0))
        throw DomainError("dual density requires t > 0");
    const double nu = 1.0 / t, mu = sigma / t;
    const auto [e11, e12, e22] = model.hess(nu, mu);
    const double s11 = nu * nu * nu * e11 + 2.0 * nu * nu * mu * e12 + nu * mu * mu * e22;
    const double s12 = -(nu * nu * e12 + nu * mu * e22);
    const double s22 = nu * e22;
    return {s11, s12, s22};
}

double varpi(const EnergyModel& model, double sigma, double gamma, double warm_start) {
    constexpr double kTMin = 1e-8, kTMax = 1e8;
    auto f = [&](double t) { return estar_grad(model, t, sigma)[0] - gamma; };

    double t = std::clamp(warm_start, kTMin, kTMax);
    double f_t = f(t);
    if (f_t == 0.0)
        return t;

    // f is strictly increasing in t: expand geometrically toward the root.
    double lo = t, hi = t;
    double f_lo = f_t, f_hi = f_t;
    for (int it = 0; f_lo > 0.0; ++it) {
        if (it >= 200 || lo <= kTMin)
            throw NumericError("dual stationarity has no root above the bracket floor");
        lo = std::max(lo / 2.0, kTMin);
        f_lo = f(lo);
    }
    for (int it = 0; f_hi < 0.0; ++it) {
        if (it >= 200 || hi >= kTMax)
            throw NumericError("dual stationarity has no root below the bracket ceiling");
        hi = std::min(hi * 2.0, kTMax);
        f_hi = f(hi);
    }

    t = std::clamp(t, lo, hi);
    f_t = f(t);
    const double f_tol = 1e-13 * std::max(1.0, std::abs(gamma));
    for (int it = 0; it < 200; ++it) {
        if (std::abs(f_t) <= f_tol)
            break;
        if (f_t > 0.0)
            hi = t;
        else
            lo = t;
        const double deriv = estar_hess(model, t, sigma)[0];
        double t_next = (deriv > 0.0) ? t - f_t / deriv : 0.5 * (lo + hi);
        if (!(t_next > lo && t_next < hi))
            t_next = 0.5 * (lo + hi);
        if (std::abs(t_next - t) <= 2.0 * std::numeric_limits<double>::epsilon() * t) {
            t = t_next;
            break;
        }
        t = t_next;
        f_t = f(t);
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi)
            break;
    }
    return t;
}

double psi_map(const EnergyModel& model, double y, double gamma) {
    const double t = varpi(model, y, gamma);
    return estar_grad(model, t, y)[1];
}

double psi_inverse(const EnergyModel& model, double v, double gamma) {
    auto f = [&](double y) { return psi_map(model, y, gamma) - v; };

    double lo = -1.0, hi = 1.0;
    double f_lo = f(lo), f_hi = f(hi);
    for (int it = 0; f_lo > 0.0; ++it) {
        if (it >= 200)
            throw NumericError("psi_inverse bracket expansion failed (decreasing side)");
        lo *= 2.0;
        f_lo = f(lo);
    }
    for (int it = 0; f_hi < 0.0; ++it) {
        if (it >= 200)
            throw NumericError("psi_inverse bracket expansion failed (increasing side)");
        hi *= 2.0;
        f_hi = f(hi);
    }

    double y = 0.5 * (lo + hi);
    double f_y = f(y);
    for (int it = 0; it < 300; ++it) {
        if (std::abs(f_y) <= 1e-13 * std::max(1.0, std::abs(v)))
            break;
        if (f_y > 0.0)
            hi = y;
        else
            lo = y;
        const double t = varpi(model, y, gamma);
        const auto [s11, s12, s22] = estar_hess(model, t, y);
        const double deriv = (s11 > 0.0) ? (s11 * s22 - s12 * s12) / s11 : 0.0;
        double y_next = (deriv > 0.0) ? y - f_y / deriv : 0.5 * (lo + hi);
        if (!(y_next > lo && y_next < hi))
            y_next = 0.5 * (lo + hi);
        if (std::abs(y_next - y) <=
            2.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(y))) {
            y = y_next;
            break;
        }
        y = y_next;
        f_y = f(y);
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(hi)))
            break;
    }
    return y;
}

const HypothesisResult* HypothesisReport::find(std::string_view key) const {
    for (const auto& r : results)
        if (r.key == key)
            return &r;
    return nullptr;
}

bool HypothesisReport::mandatory_pass() const {
    for (const char* key : {"evenness", "rest-state-normalization", "joint-convexity"}) {
        const auto* r = find(key);
        if (!r || r->status != CheckStatus::pass)
            return false;
    }
    return true;
}

namespace {

HypothesisResult pass_result(std::string key, std::string detail = {}) {
    return {std::move(key), CheckStatus::pass, std::move(detail), std::nullopt};
}

HypothesisResult fail_result(std::string key, std::string detail,
                             std::array<double, 2> witness) {
    return {std::move(key), CheckStatus::fail, std::move(detail), witness};
}

HypothesisResult skip_result(std::string key, std::string detail) {
    return {std::move(key), CheckStatus::not_checked, std::move(detail), std::nullopt};
}

struct SampleGrid {
    std::vector<double> nu;     // log-spaced on [nu_min, nu_max]
    std::vector<double> mu;     // +-log-spaced magnitudes, |mu| >= mu_floor
    std::vector<double> mu_all; // mu plus 0
};

SampleGrid build_grid(const GridSpec& gs) {
    SampleGrid g;
    g.nu = log_grid(gs.nu_min, gs.nu_max, gs.nu_points);
    auto mags = log_grid(gs.mu_floor, gs.mu_max, gs.mu_points);
    for (double m : mags) {
        g.mu.push_back(m);
        g.mu.push_back(-m);
    }
    g.mu_all = g.mu;
    g.mu_all.push_back(0.0);
    return g;
}

} // namespace

HypothesisReport check_hypotheses(const EnergyModel& model, double c2, double g,
                                  double mu_star, const GridSpec& grids,
                                  const GrowthConstants& constants) {
    if (!(mu_star > 0.0 && mu_star < 1.0))
        throw DomainError("mu_star must lie strictly between 0 and 1");

    const SampleGrid grid = build_grid(grids);
    HypothesisReport report;
    auto& out = report.results;

    // model-regularity: C2 smoothness metadata plus nonnegativity on the grid.
    {
        bool ok = model.smoothness() >= 2;
        std::string detail;
        std::array<double, 2> witness{kNan, kNan};
        if (!ok)
            detail = "smoothness metadata below C2";
        for (double nu : grid.nu) {
            for (double mu : grid.mu_all) {
                const double e = model.eval(nu, mu);
                if (!(e >= -1e-12) || !std::isfinite(e)) {
                    ok = false;
                    witness = {nu, mu};
                    detail = "E(" + fmt(nu) + ", " + fmt(mu) + ") = " + fmt(e) + " < 0";
                    break;
                }
            }
            if (!ok && !detail.empty())
                break;
        }
        out.push_back(ok ? pass_result("model-regularity")
                         : fail_result("model-regularity", detail, witness));
    }

    // evenness in mu.
    {
        bool ok = true;
        std::array<double, 2> witness{kNan, kNan};
        std::string detail;
        for (double nu : grid.nu) {
            for (double mu : grid.mu) {
                if (mu <= 0.0)
                    continue;
                const double ep = model.eval(nu, mu);
                const double em = model.eval(nu, -mu);
                if (std::abs(ep - em) > 1e-12 * std::max(1.0, std::abs(ep))) {
                    ok = false;
                    witness = {nu, mu};
                    detail = "E(nu, mu) != E(nu, -mu) at (" + fmt(nu) + ", " + fmt(mu) + ")";
                    break;
                }
            }
            if (!ok)
                break;
        }
        out.push_back(ok ? pass_result("evenness") : fail_result("evenness", detail, witness));
    }

    // rest-state normalization: E >= 0 with E(1,0) = 0 and vanishing gradient.
    {
        const double e0 = model.eval(1.0, 0.0);
        const auto [e1, e2] = model.grad(1.0, 0.0);
        bool ok = std::abs(e0) <= 1e-12 && std::abs(e1) <= 1e-12 && std::abs(e2) <= 1e-12;
        std::string detail = ok ? "" : ("E(1,0) = " + fmt(e0) + ", grad = (" + fmt(e1) + ", " + fmt(e2) + ")");
        out.push_back(ok ? pass_result("rest-state-normalization")
                         : fail_result("rest-state-normalization", detail, {1.0, 0.0}));
    }

    // joint convexity: Hessian strictly positive definite on the sample grid.
    {
        bool ok = true;
        std::array<double, 2> witness{kNan, kNan};
        std::string detail;
        for (double nu : grid.nu) {
            for (double mu : grid.mu) {
                const auto [e11, e12, e22] = model.hess(nu, mu);
                const double minor = e11 * e22 - e12 * e12;
                if (!(e11 > 0.0 && e22 > 0.0 && minor > 0.0)) {
                    ok = false;
                    witness = {nu, mu};
                    detail = "Hessian not positive definite at (" + fmt(nu) + ", " + fmt(mu) +
                             "): E11 = " + fmt(e11) + ", E22 = " + fmt(e22) +
                             ", minor = " + fmt(minor);
                    break;
                }
            }
            if (!ok)
                break;
        }
        out.push_back(ok ? pass_result("joint-convexity")
                         : fail_result("joint-convexity", detail, witness));
    }

    // coercive growth E >= k0 (nu^r + nu^-s + |mu|^p) - k0'.
    {
        const double r = model.exponent_r(), s = model.exponent_s(), p = model.exponent_p();
        if (!(r > 2.0 && s > 0.0 && p > 1.0)) {
            out.push_back(fail_result("coercive-growth",
                                      "exponents require r > 2, s > 0, p > 1; got r = " + fmt(r) +
                                          ", s = " + fmt(s) + ", p = " + fmt(p),
                                      {r, p}));
        } else if (constants.k0 && constants.k0_offset) {
            bool ok = true;
            std::array<double, 2> witness{kNan, kNan};
            std::string detail;
            for (double nu : grid.nu) {
                for (double mu : grid.mu_all) {
                    const double denom = std::pow(nu, r) + std::pow(nu, -s) + abs_pow(mu, p);
                    const double rhs = *constants.k0 * denom - *constants.k0_offset;
                    const double lhs = model.eval(nu, mu);
                    if (lhs < rhs - 1e-9 * std::max(1.0, std::abs(rhs))) {
                        ok = false;
                        witness = {nu, mu};
                        detail = "E = " + fmt(lhs) + " < bound " + fmt(rhs) + " at (" +
                                 fmt(nu) + ", " + fmt(mu) + ")";
                        break;
                    }
                }
                if (!ok)
                    break;
            }
            out.push_back(ok ? pass_result("coercive-growth")
                             : fail_result("coercive-growth", detail, witness));
        } else {
            double k0_sugg = std::numeric_limits<double>::infinity();
            for (double nu : grid.nu) {
                for (double mu : grid.mu_all) {
                    const double denom = std::pow(nu, r) + std::pow(nu, -s) + abs_pow(mu, p);
                    if (denom >= 10.0)
                        k0_sugg = std::min(k0_sugg, std::max(model.eval(nu, mu), 0.0) / denom);
                }
            }
            if (!std::isfinite(k0_sugg))
                k0_sugg = 0.1;
            double off_sugg = 0.0;
            for (double nu : grid.nu)
                for (double mu : grid.mu_all) {
                    const double denom = std::pow(nu, r) + std::pow(nu, -s) + abs_pow(mu, p);
                    off_sugg = std::max(off_sugg, k0_sugg * denom - model.eval(nu, mu));
                }
            out.push_back(skip_result("coercive-growth",
                                      "not checked: supply k0 and k0_offset; tightest on this "
                                      "grid: k0 ~ " + fmt(k0_sugg) + ", k0_offset ~ " + fmt(off_sugg)));
        }
    }

    // transverse speed threshold c^2 > g + E22(1,0).
    {
        const double threshold = g + model.hess(1.0, 0.0)[2];
        if (c2 > threshold)
            out.push_back(pass_result("transverse-speed-threshold",
                                      "c2 = " + fmt(c2) + " > " + fmt(threshold)));
        else
            out.push_back(fail_result("transverse-speed-threshold",
                                      "requires c2 > g + E22(1,0) = " + fmt(threshold) +
                                          " strictly; got c2 = " + fmt(c2),
                                      {c2, threshold}));
    }

    // isoperimetric domination of E(nu, mu*) over the area expression.
    {
        bool ok = true;
        std::array<double, 2> witness{kNan, kNan};
        std::string detail;
        for (double nu : log_grid(1.0 + 1e-6, grids.nu_max, 200)) {
            const double area = area_A(nu);
            const double rhs = g / (8.0 * kPi * kPi) * area * area + c2 / (4.0 * kPi) * area +
                               g / 2.0 * area * std::sqrt(nu * nu - 1.0);
            const double lhs = model.eval(nu, mu_star);
            if (lhs < rhs * (1.0 - 1e-12) - 1e-12) {
                ok = false;
                witness = {nu, kNan};
                detail = "E(nu, mu*) = " + fmt(lhs) + " < area bound " + fmt(rhs) +
                         " at nu = " + fmt(nu);
                break;
            }
        }
        out.push_back(ok ? pass_result("isoperimetric-domination")
                         : fail_result("isoperimetric-domination", detail, witness));
    }

    // bounded stretch: inf_mu (grad E . (nu, mu) - E) grows along the nu tail.
    {
        std::vector<double> tail;
        for (double nu : grid.nu)
            if (nu >= std::max(1.0, std::sqrt(grids.nu_max)))
                tail.push_back(nu);
        if (tail.size() < 3) {
            out.push_back(skip_result("bounded-stretch", "grid too small for a trend check"));
        } else {
            bool ok = true;
            std::array<double, 2> witness{kNan, kNan};
            std::string detail;
            double prev = -std::numeric_limits<double>::infinity();
            for (double nu : tail) {
                double inf_val = std::numeric_limits<double>::infinity();
                double inf_mu = 0.0;
                for (double mu : grid.mu_all) {
                    const auto [e1, e2] = model.grad(nu, mu);
                    const double v = nu * e1 + mu * e2 - model.eval(nu, mu);
                    if (v < inf_val) {
                        inf_val = v;
                        inf_mu = mu;
                    }
                }
                if (inf_val <= prev) {
                    ok = false;
                    witness = {nu, inf_mu};
                    detail = "inf_mu(grad E . (nu,mu) - E) not increasing at nu = " + fmt(nu);
                    break;
                }
                prev = inf_val;
            }
            out.push_back(ok ? pass_result("bounded-stretch", "increasing along the grid tail")
                             : fail_result("bounded-stretch", detail, witness));
        }
    }

    const double s = model.exponent_s(), p = model.exponent_p();

    // |E1| <= K1 (nu^-(s+1) + |mu|^p) for nu <= nu_bar1, |mu| >= mu_bar1.
    {
        if (constants.k1 && constants.nu_bar1 && constants.mu_bar1) {
            bool ok = true;
            std::array<double, 2> witness{kNan, kNan};
            std::string detail;
            for (double nu : grid.nu) {
                if (nu > *constants.nu_bar1)
                    continue;
                for (double mu : grid.mu) {
                    if (std::abs(mu) < *constants.mu_bar1)
                        continue;
                    const double lhs = std::abs(model.grad(nu, mu)[0]);
                    const double rhs = *constants.k1 * (std::pow(nu, -(s + 1.0)) + abs_pow(mu, p));
                    if (lhs > rhs * (1.0 + 1e-9)) {
                        ok = false;
                        witness = {nu, mu};
                        detail = "|E1| = " + fmt(lhs) + " > bound " + fmt(rhs) + " at (" +
                                 fmt(nu) + ", " + fmt(mu) + ")";
                        break;
                    }
                }
                if (!ok)
                    break;
            }
            out.push_back(ok ? pass_result("e1-growth-control")
                             : fail_result("e1-growth-control", detail, witness));
        } else {
            double k1_sugg = 0.0;
            for (double nu : grid.nu) {
                if (nu > 1.0)
                    continue;
                for (double mu : grid.mu) {
                    if (std::abs(mu) < 1.0)
                        continue;
                    const double lhs = std::abs(model.grad(nu, mu)[0]);
                    k1_sugg = std::max(k1_sugg, lhs / (std::pow(nu, -(s + 1.0)) + abs_pow(mu, p)));
                }
            }
            out.push_back(skip_result("e1-growth-control",
                                      "not checked: supply k1, nu_bar1, mu_bar1; tightest on "
                                      "nu <= 1, |mu| >= 1: k1 ~ " + fmt(k1_sugg)));
        }
    }

    // |E2| <= K2 (nu^-(s(p-1)/p) + |mu|^(p-1)) for nu <= nu_bar2, |mu| >= mu_bar2.
    {
        const double q = s * (p - 1.0) / p;
        if (constants.k2 && constants.nu_bar2 && constants.mu_bar2) {
            bool ok = true;
            std::array<double, 2> witness{kNan, kNan};
            std::string detail;
            for (double nu : grid.nu) {
                if (nu > *constants.nu_bar2)
                    continue;
                for (double mu : grid.mu) {
                    if (std::abs(mu) < *constants.mu_bar2)
                        continue;
                    const double lhs = std::abs(model.grad(nu, mu)[1]);
                    const double rhs = *constants.k2 * (std::pow(nu, -q) + abs_pow(mu, p - 1.0));
                    if (lhs > rhs * (1.0 + 1e-9)) {
                        ok = false;
                        witness = {nu, mu};
                        detail = "|E2| = " + fmt(lhs) + " > bound " + fmt(rhs) + " at (" +
                                 fmt(nu) + ", " + fmt(mu) + ")";
                        break;
                    }
                }
                if (!ok)
                    break;
            }
            out.push_back(ok ? pass_result("e2-growth-control")
                             : fail_result("e2-growth-control", detail, witness));
        } else {
            double k2_sugg = 0.0;
            for (double nu : grid.nu) {
                if (nu > 1.0)
                    continue;
                for (double mu : grid.mu) {
                    if (std::abs(mu) < 1.0)
                        continue;
                    const double lhs = std::abs(model.grad(nu, mu)[1]);
                    k2_sugg = std::max(k2_sugg, lhs / (std::pow(nu, -q) + abs_pow(mu, p - 1.0)));
                }
            }
            out.push_back(skip_result("e2-growth-control",
                                      "not checked: supply k2, nu_bar2, mu_bar2; tightest on "
                                      "nu <= 1, |mu| >= 1: k2 ~ " + fmt(k2_sugg)));
        }
    }

    // Level-set pinch: on {E - grad E . (nu,mu) = gamma} within the region
    // nu <= nu_bar or |mu| >= mu_bar, K/nu^s <= |mu|^p <= K'/nu^s. The level
    // set is parametrized exactly by sigma -> (1/varpi, sigma/varpi).
    {
        const bool have = constants.pinch_lo && constants.pinch_hi && constants.pinch_nu_bar &&
                          constants.pinch_mu_bar;
        bool ok = true;
        std::array<double, 2> witness{kNan, kNan};
        std::string detail;
        double seen_lo = std::numeric_limits<double>::infinity(), seen_hi = 0.0;
        bool sampled = false;
        for (double gamma : constants.pinch_gammas) {
            double warm = 1.0;
            for (double mag : log_grid(1e2, 1e8, 61)) {
                for (double sig : {mag, -mag}) {
                    double t;
                    try {
                        t = varpi(model, sig, gamma, warm);
                    } catch (const NumericError&) {
                        continue;
                    }
                    if (sig > 0.0)
                        warm = t;
                    const double nu = 1.0 / t, mu = sig / t;
                    const double prod = abs_pow(mu, p) * std::pow(nu, s);
                    if (have) {
                        const bool in_region =
                            nu <= *constants.pinch_nu_bar || std::abs(mu) >= *constants.pinch_mu_bar;
                        if (in_region &&
                            !(prod >= *constants.pinch_lo * (1.0 - 1e-9) &&
                              prod <= *constants.pinch_hi * (1.0 + 1e-9))) {
                            ok = false;
                            witness = {nu, mu};
                            detail = "|mu|^p nu^s = " + fmt(prod) + " outside [" +
                                     fmt(*constants.pinch_lo) + ", " + fmt(*constants.pinch_hi) +
                                     "] at (" + fmt(nu) + ", " + fmt(mu) + "), gamma = " + fmt(gamma);
                        }
                    } else {
                        sampled = true;
                        seen_lo = std::min(seen_lo, prod);
                        seen_hi = std::max(seen_hi, prod);
                    }
                }
                if (!ok)
                    break;
            }
            if (!ok)
                break;
        }
        if (have)
            out.push_back(ok ? pass_result("level-set-pinch")
                             : fail_result("level-set-pinch", detail, witness));
        else if (sampled)
            out.push_back(skip_result("level-set-pinch",
                                      "not checked: supply pinch constants; |mu|^p nu^s along the "
                                      "sampled level-set tails spans [" + fmt(seen_lo) + ", " +
                                          fmt(seen_hi) + "]"));
        else
            out.push_back(skip_result("level-set-pinch",
                                      "not checked: level set not sampled (no roots found)"));
    }

    // |E2| >= K3 nu^(s(p-1)/p - eps) |mu|^(p-1) for nu <= nu_bar3, |mu| >= mu_bar3.
    {
        if (constants.k3 && constants.eps3 && constants.nu_bar3 && constants.mu_bar3) {
            if (!(*constants.eps3 > 0.0))
                throw DomainError("eps3 must be positive");
            const double expo = s * (p - 1.0) / p - *constants.eps3;
            bool ok = true;
            std::array<double, 2> witness{kNan, kNan};
            std::string detail;
            for (double nu : grid.nu) {
                if (nu > *constants.nu_bar3)
                    continue;
                for (double mu : grid.mu) {
                    if (std::abs(mu) < *constants.mu_bar3)
                        continue;
                    const double lhs = std::abs(model.grad(nu, mu)[1]);
                    const double rhs = *constants.k3 * std::pow(nu, expo) * abs_pow(mu, p - 1.0);
                    if (lhs < rhs * (1.0 - 1e-9)) {
                        ok = false;
                        witness = {nu, mu};
                        detail = "|E2| = " + fmt(lhs) + " < bound " + fmt(rhs) + " at (" +
                                 fmt(nu) + ", " + fmt(mu) + ")";
                        break;
                    }
                }
                if (!ok)
                    break;
            }
            out.push_back(ok ? pass_result("e2-lower-bound")
                             : fail_result("e2-lower-bound", detail, witness));
        } else {
            const double expo = s * (p - 1.0) / p - 0.1;
            double k3_sugg = std::numeric_limits<double>::infinity();
            for (double nu : grid.nu) {
                if (nu > 1.0)
                    continue;
                for (double mu : grid.mu) {
                    if (std::abs(mu) < 1.0)
                        continue;
                    const double lhs = std::abs(model.grad(nu, mu)[1]);
                    k3_sugg = std::min(k3_sugg, lhs / (std::pow(nu, expo) * abs_pow(mu, p - 1.0)));
                }
            }
            out.push_back(skip_result("e2-lower-bound",
                                      "not checked: supply k3, eps3, nu_bar3, mu_bar3; with "
                                      "eps3 = 0.1 the tightest on nu <= 1, |mu| >= 1: k3 ~ " +
                                          fmt(std::isfinite(k3_sugg) ? k3_sugg : 0.0)));
        }
    }

    // Closed-form sufficient conditions for the illustrative family.
    if (const auto* ill = dynamic_cast<const IllustrativeEnergy*>(&model)) {
        const auto& c = ill->params();
        {
            const bool ok = c.alpha > c.delta + 1.0;
            out.push_back(ok ? pass_result("closed-form-mixed-convexity",
                                           "alpha = " + fmt(c.alpha) + " > delta + 1 = " +
                                               fmt(c.delta + 1.0))
                             : fail_result("closed-form-mixed-convexity",
                                           "requires alpha > delta + 1 for joint convexity of the "
                                           "mixed term; alpha = " + fmt(c.alpha) +
                                               ", delta + 1 = " + fmt(c.delta + 1.0),
                                           {c.alpha, c.delta + 1.0}));
        }
        {
            const double threshold = g + 2.0 * ill->beta0();
            const bool ok = c2 > threshold;
            out.push_back(ok ? pass_result("closed-form-speed-window",
                                           "c2 = " + fmt(c2) + " > g + 2 beta0 = " + fmt(threshold))
                             : fail_result("closed-form-speed-window",
                                           "requires c2 > g + 2 beta0 = " + fmt(threshold) +
                                               "; got c2 = " + fmt(c2),
                                           {c2, threshold}));
        }
        {
            const double need = g / 2.0 + g * kPi + c2 / 2.0;
            const double bmin = c.a * (c.s + c.r) / (c.s * c.r);
            const bool ok = c.r >= 4.0 && c.a / c.r >= need && c.b > bmin;
            std::string detail = "r = " + fmt(c.r) + " (needs >= 4), a/r = " + fmt(c.a / c.r) +
                                 " (needs >= " + fmt(need) + "), b = " + fmt(c.b) +
                                 " (needs > " + fmt(bmin) + ")";
            out.push_back(ok ? pass_result("closed-form-isoperimetric", detail)
                             : fail_result("closed-form-isoperimetric", detail,
                                           {c.a / c.r, need}));
        }
        {
            const double cap = c.p * (c.s + 1.0) / (c.p + c.s + 1.0);
            const bool ok = c.alpha <= cap;
            out.push_back(ok ? pass_result("closed-form-growth-balance",
                                           "alpha = " + fmt(c.alpha) + " <= p(s+1)/(p+s+1) = " +
                                               fmt(cap))
                             : fail_result("closed-form-growth-balance",
                                           "requires alpha <= p(s+1)/(p+s+1) = " + fmt(cap) +
                                               "; got alpha = " + fmt(c.alpha),
                                           {c.alpha, cap}));
        }
    }

    report.admissible_c2 = admissible_c2_interval(model, g, mu_star);
    return report;
}

C2Interval admissible_c2_interval(const EnergyModel& model, double g, double mu_star,
                                  double nu_max) {
    if (!(mu_star > 0.0 && mu_star < 1.0))
        throw DomainError("mu_star must lie strictly between 0 and 1");
    if (!(nu_max > 1.0))
        throw DomainError("nu_max must exceed 1");

    auto f = [&](double nu) {
        const double area = area_A(nu);
        return 4.0 * kPi * model.eval(nu, mu_star) / area - g * area / (2.0 * kPi) -
               2.0 * kPi * g * std::sqrt(nu * nu - 1.0);
    };

    const auto grid = log_grid(1.0 + 1e-6, nu_max, 400);
    std::size_t best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = f(grid[i]);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }

    // Golden-section refinement (in log nu) around the grid minimum.
    double lo = std::log(grid[best > 0 ? best - 1 : best]);
    double hi = std::log(grid[std::min(best + 1, grid.size() - 1)]);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = f(std::exp(x1)), f2 = f(std::exp(x2));
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = f(std::exp(x1));
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = f(std::exp(x2));
        }
    }
    best_val = std::min(best_val, std::min(f1, f2));

    C2Interval out;
    out.lo = g + model.hess(1.0, 0.0)[2];
    out.hi = best_val;
    out.empty = !(out.hi > out.lo);
    return out;
}

} // namespace hew
