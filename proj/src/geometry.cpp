#include "hew/geometry.hpp"

#include "hew/errors.hpp"
#include "hew/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hew {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kOmegaFloor = 1e-10;
constexpr double kEpsGeom = 1e-12; // collinearity tolerance for segment tests

} // namespace

ConformalFrame make_frame(const Field& w) {
    ConformalFrame fr;
    fr.w = w;
    fr.w_prime = derivative(w);
    fr.cw_prime = hilbert(fr.w_prime);

    const std::size_t m = w.size();
    const std::size_t r = 2 * m;
    fr.w_f = w.values_on(r);
    fr.wp_f = fr.w_prime.values_on(r);
    fr.cwp_f = fr.cw_prime.values_on(r);

    fr.omega_f.resize(r);
    fr.log_omega_f.resize(r);
    double omega_min = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < r; ++j) {
        const double ox = 1.0 + fr.cwp_f[j];
        const double oy = fr.wp_f[j];
        const double om = std::sqrt(ox * ox + oy * oy);
        fr.omega_f[j] = om;
        omega_min = std::min(omega_min, om);
    }
    if (omega_min < kOmegaFloor)
        throw NumericError("degenerate curve: min Omega = " + std::to_string(omega_min));
    for (std::size_t j = 0; j < r; ++j)
        fr.log_omega_f[j] = std::log(fr.omega_f[j]);

    {
        std::vector<double> om_nodes(m), tp_nodes(m), sg_nodes(m);
        fr.theta_m = -hilbert(Field::from_fine_samples(fr.log_omega_f, m));
        fr.theta_prime_m = derivative(fr.theta_m);
        for (std::size_t j = 0; j < m; ++j) {
            const double ox = 1.0 + fr.cw_prime[j];
            const double oy = fr.w_prime[j];
            om_nodes[j] = std::sqrt(ox * ox + oy * oy);
            tp_nodes[j] = fr.theta_prime_m[j];
            sg_nodes[j] = tp_nodes[j] / om_nodes[j];
        }
        fr.omega_m = Field::from_samples(std::move(om_nodes));
        fr.sigma_m = Field::from_samples(std::move(sg_nodes));
    }

    fr.theta_prime_f = fr.theta_prime_m.values_on(r);
    fr.sigma_f.resize(r);
    for (std::size_t j = 0; j < r; ++j)
        fr.sigma_f[j] = fr.theta_prime_f[j] / fr.omega_f[j];

    fr.ell = mean_samples(fr.omega_f);
    double mm = 0.0;
    for (double tp : fr.theta_prime_f)
        mm += std::abs(tp);
    fr.m = mm / static_cast<double>(r);

    double awc = 0.0, lom = 0.0;
    for (std::size_t j = 0; j < r; ++j) {
        awc += fr.w_f[j] * fr.cwp_f[j];
        lom += fr.log_omega_f[j];
    }
    fr.a0 = -awc / static_cast<double>(r);
    fr.log_omega_mean = lom / static_cast<double>(r);
    return fr;
}

Field omega(const Field& w) { return make_frame(w).omega_m; }
Field theta(const Field& w) { return make_frame(w).theta_m; }
Field sigma(const Field& w) { return make_frame(w).sigma_m; }
double ell(const Field& w) { return make_frame(w).ell; }
double turning_mean(const Field& w) { return make_frame(w).m; }

namespace {

// g(theta) = theta - ell sin(theta): negative just right of 0, positive at pi.
double theta_root(double ell_value) {
    if (!(ell_value > 1.0))
        throw DomainError("theta_of_ell requires ell > 1");
    double lo = 1e-12;
    double hi = kPi;
    auto g = [&](double t) { return t - ell_value * std::sin(t); };
    // Seed: small-theta series near ell = 1, boundary-layer form for large ell.
    double t = (ell_value < 1.5) ? std::sqrt(6.0 * (ell_value - 1.0) / ell_value)
                                 : kPi - kPi / ell_value;
    t = std::clamp(t, lo, hi - 1e-12);
    for (int it = 0; it < 200; ++it) {
        const double gv = g(t);
        if (gv < 0.0)
            lo = t;
        else
            hi = t;
        const double gp = 1.0 - ell_value * std::cos(t);
        double t_next = (gp != 0.0) ? t - gv / gp : 0.5 * (lo + hi);
        if (!(t_next > lo && t_next < hi))
            t_next = 0.5 * (lo + hi);
        if (std::abs(t_next - t) <= 4.0 * std::numeric_limits<double>::epsilon() * t) {
            t = t_next;
            break;
        }
        t = t_next;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi)
            break;
    }
    return t;
}

} // namespace

double theta_of_ell(double ell_value) { return theta_root(ell_value); }

double area_A(double ell_value) {
    const double t = theta_root(ell_value);
    const double x = 2.0 * t;
    double num, den;
    if (t < 1e-2) {
        // Series for 2 theta - sin(2 theta) and 1 - cos(2 theta): the direct
        // differences cancel catastrophically for small theta.
        const double x2 = x * x;
        num = x * x2 * (1.0 / 6.0 + x2 * (-1.0 / 120.0 + x2 * (1.0 / 5040.0 - x2 / 362880.0)));
        den = x2 * (1.0 / 2.0 + x2 * (-1.0 / 24.0 + x2 * (1.0 / 720.0 - x2 / 40320.0)));
    } else {
        num = x - std::sin(x);
        den = 1.0 - std::cos(x);
    }
    return kPi * kPi * num / den;
}

double area_A_prime(double ell_value) {
    return 2.0 * kPi * kPi / std::sin(theta_root(ell_value));
}

CurveSample curve_sample(const Field& w, std::size_t points) {
    const std::size_t k = (points == 0) ? w.size() : points;
    auto y = (k == w.size()) ? std::vector<double>(w.samples().begin(), w.samples().end())
                             : w.values_on(k);
    auto cw = hilbert(w);
    auto cwv = (k == w.size()) ? std::vector<double>(cw.samples().begin(), cw.samples().end())
                               : cw.values_on(k);
    CurveSample out;
    out.points.resize(k);
    for (std::size_t j = 0; j < k; ++j)
        out.points[j] = {-grid_point(k, j) - cwv[j], y[j]};
    return out;
}

namespace {

struct Pt {
    double x, y;
};

double cross(Pt o, Pt a, Pt b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Strict (proper) crossing: interiors intersect, grazing contact within the
// collinearity tolerance does not count.
bool proper_cross(Pt p1, Pt p2, Pt p3, Pt p4) {
    const double scale = std::max({std::abs(p2.x - p1.x) + std::abs(p2.y - p1.y),
                                   std::abs(p4.x - p3.x) + std::abs(p4.y - p3.y), 1.0});
    const double tol = kEpsGeom * scale * scale;
    const double d1 = cross(p3, p4, p1);
    const double d2 = cross(p3, p4, p2);
    const double d3 = cross(p1, p2, p3);
    const double d4 = cross(p1, p2, p4);
    const bool s12 = (d1 > tol && d2 < -tol) || (d1 < -tol && d2 > tol);
    const bool s34 = (d3 > tol && d4 < -tol) || (d3 < -tol && d4 > tol);
    return s12 && s34;
}

} // namespace

bool self_intersects(const Field& w) {
    const std::size_t m = w.size();
    const auto cs = curve_sample(w);
    // Segment j runs from point j to point j+1 (the last one wraps to the
    // next-period image of point 0).
    std::vector<Pt> pts(m + 1);
    for (std::size_t j = 0; j < m; ++j)
        pts[j] = {cs.points[j][0], cs.points[j][1]};
    pts[m] = {cs.points[0][0] - kTwoPi, cs.points[0][1]};

    double xmin = pts[0].x, xmax = pts[0].x;
    for (const auto& p : pts) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
    }
    const int kmax = static_cast<int>(std::floor((xmax - xmin) / kTwoPi));

    for (int k = 0; k <= kmax; ++k) {
        const double shift = -kTwoPi * static_cast<double>(k);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = (k == 0 ? i + 2 : 0); j < m; ++j) {
                if (k == 0 && i == 0 && j == m - 1)
                    continue; // wrap-adjacent pair shares a translated endpoint
                Pt a{pts[j].x + shift, pts[j].y};
                Pt b{pts[j + 1].x + shift, pts[j + 1].y};
                if (k > 0 && (std::max(a.x, b.x) < std::min(pts[i].x, pts[i + 1].x) - 1e-15 ||
                              std::min(a.x, b.x) > std::max(pts[i].x, pts[i + 1].x) + 1e-15))
                    continue;
                if (proper_cross(pts[i], pts[i + 1], a, b))
                    return true;
            }
        }
    }
    return false;
}

GeometryReport check_bounds(const Field& w) {
    const ConformalFrame fr = make_frame(w);
    GeometryReport rep;
    rep.ell = fr.ell;
    rep.m = fr.m;
    rep.log_omega_mean = fr.log_omega_mean;

    const auto theta_fine = fr.theta_m.values_on(fr.fine_grid());
    const auto [tmin, tmax] = std::ranges::minmax_element(theta_fine);
    rep.theta_osc = *tmax - *tmin;

    rep.self_intersects = self_intersects(w);

    double w_sup = 0.0;
    for (double v : fr.w_f)
        w_sup = std::max(w_sup, std::abs(v));
    const double ell2m1 = std::max(fr.ell * fr.ell - 1.0, 0.0);
    rep.supnorm_bound_ok = w_sup <= kPi * std::sqrt(ell2m1) * (1.0 + 1e-10) + 1e-14;

    double signed_area = 0.0;
    for (std::size_t j = 0; j < fr.w_f.size(); ++j)
        signed_area += fr.w_f[j] * (1.0 + fr.cwp_f[j]);
    signed_area *= kTwoPi / static_cast<double>(fr.w_f.size());
    const double area_cap = (fr.ell > 1.0 + 1e-13) ? area_A(fr.ell) : 0.0;
    rep.area_bound_ok = signed_area <= area_cap * (1.0 + 1e-10) + 1e-14;
    return rep;
}

} // namespace hew
