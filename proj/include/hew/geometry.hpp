#pragma once

#include "hew/field.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace hew {

// One period of the parametrized curve rho(w)(tau) = (-tau - Cw, w); the
// curve closes by horizontal translation, X(tau + 2pi) = X(tau) - 2pi.
struct CurveSample {
    std::vector<std::array<double, 2>> points;
};

struct GeometryReport {
    double ell = 1.0;            // arc length / 2pi
    double m = 0.0;              // mean |Theta'|
    double theta_osc = 0.0;      // sup - inf of Theta
    bool self_intersects = false;
    bool supnorm_bound_ok = true; // ||w||_inf <= pi sqrt(ell^2 - 1)
    bool area_bound_ok = true;    // signed area <= A(ell)
    double log_omega_mean = 0.0;  // measured, not enforced
};

// Shared evaluation frame for the conformal parametrization of w:
// band-limited derivative fields at resolution M plus the pointwise chains on
// the doubled (dealiasing) grid. Built once, consumed by the energy,
// lagrangian and residual computations.
struct ConformalFrame {
    Field w;                      // zero-mean input, resolution M
    Field w_prime, cw_prime;      // w', Cw'
    Field omega_m;                // Omega collocated at the M nodes
    Field theta_m;                // -C log Omega, band-limited to M
    Field theta_prime_m;          // derivative of theta_m
    Field sigma_m;                // theta' / Omega at the M nodes

    std::vector<double> w_f, wp_f, cwp_f;      // exact values on the 2M grid
    std::vector<double> omega_f, log_omega_f;  // pointwise on the 2M grid
    std::vector<double> theta_prime_f, sigma_f;

    double ell = 1.0;            // mean of Omega
    double m = 0.0;              // mean of |Theta'|
    double a0 = 0.0;             // -mean(w Cw')
    double log_omega_mean = 0.0;

    std::size_t grid() const { return w.size(); }
    std::size_t fine_grid() const { return 2 * w.size(); }
};

// Throws NumericError when min Omega < 1e-10 on the padded grid.
ConformalFrame make_frame(const Field& w);

Field omega(const Field& w);
Field theta(const Field& w);
Field sigma(const Field& w);
double ell(const Field& w);
// m(w): mean of |Theta'| over a period (pointwise on the padded grid).
double turning_mean(const Field& w);

// The unique theta in (0, pi) with theta / sin(theta) = ell.
double theta_of_ell(double ell);
// Chord-arc area bound A(ell) = pi^2 (2 theta - sin 2 theta)/(1 - cos 2 theta).
double area_A(double ell);
// A'(ell) = 2 pi^2 / sin(theta(ell)).
double area_A_prime(double ell);

CurveSample curve_sample(const Field& w, std::size_t points = 0);
bool self_intersects(const Field& w);
GeometryReport check_bounds(const Field& w);

} // namespace hew
