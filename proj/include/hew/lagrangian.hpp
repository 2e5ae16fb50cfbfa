#pragma once

#include "hew/energy.hpp"
#include "hew/field.hpp"
#include "hew/geometry.hpp"

#include <limits>
#include <vector>

namespace hew {

// Optimal re-parametrization at a fixed profile: chi'_j = Omega_j varpi(sigma_j; gamma0)
// with the multiplier gamma0 chosen so that mean(chi') = 1.
struct InnerChiSolution {
    Field chi_prime;
    double gamma0 = 0.0;
    double mean_residual = 0.0; // |mean(chi') - 1| at the accepted gamma0
    int iterations = 0;
};

InnerChiSolution inner_chi_solve(const ConformalFrame& frame, const EnergyModel& model,
                                 double gamma_init = std::numeric_limits<double>::quiet_NaN());

// A profile together with its re-parametrization and the derived caches every
// functional evaluation needs. chi_prime holds the authoritative M-grid
// values; chi_prime_f caches its interpolant on the doubled grid.
struct WaveState {
    ConformalFrame frame;
    Field chi_prime;
    Field q; // zero-mean log chi_prime (nodal)
    std::vector<double> chi_prime_f;

    double gamma0 = std::numeric_limits<double>::quiet_NaN();
    double inner_residual = std::numeric_limits<double>::quiet_NaN();
    int inner_iterations = 0;

    const Field& w() const { return frame.w; }
    std::size_t grid() const { return frame.grid(); }
};

// Pairs a profile with an explicitly supplied stretch (mean(chi') must be 1,
// chi' positive). Use make_state_inner to take the optimal stretch instead.
WaveState make_state(const Field& w, const Field& chi_prime);
WaveState make_state_inner(const Field& w, const EnergyModel& model,
                           double gamma_init = std::numeric_limits<double>::quiet_NaN());

// Kinetic + gravitational part: with A1 = int w Cw' and A2 = int w^2 (1 + Cw'),
// I0 = (g/4pi) A1^2 + (c^2/2) A1 - (g/2) A2.
double kinetic_potential_I0(const ConformalFrame& frame, double c2, double g);
double kinetic_potential_I0(const Field& w, double c2, double g);

// a0 = -mean(w Cw'), the induced shift of the mass constraint.
double mass_shift_a0(const Field& w);

// grad I0 = (c^2 - 2 g a0) Cw' - g { w (1 + Cw') + C(w w') }, normalized so
// that dI0 . h = 2 pi mean(grad I0 . h). Its mean equals g a0.
Field grad_I0(const ConformalFrame& frame, double c2, double g);
Field grad_I0(const Field& w, double c2, double g);

// Elastic energy int chi' E(Omega/chi', (Omega/chi') sigma) dtau, evaluated on
// the padded grid.
double elastic(const WaveState& state, const EnergyModel& model);

// J0 = I0 - elastic at the given state.
double j0(const WaveState& state, const EnergyModel& model, double c2, double g);

// Reduced objective: J0 with chi' at the inner optimum for this profile.
double reduced_j(const Field& w, const EnergyModel& model, double c2, double g);

// Stored-energy derivative fields along a state: band-limited truncations of
// the pointwise evaluations on the doubled grid, plus the raw fine values.
struct EnergyFields {
    Field e1, e2;                   // E1, E2 truncated to the M grid
    std::vector<double> e_f, e1_f, e2_f; // pointwise on the 2M grid
    std::vector<double> nu_f, mu_f;
    std::vector<double> d_f;        // E - nu E1 - mu E2 (dual density slope)
};

EnergyFields energy_fields(const WaveState& state, const EnergyModel& model);

// Gradient of the reduced objective with respect to w (zero-mean field):
// project_0( grad I0 - { L* ( C T - Q ) }' ) with T = (E2)' and Q = E1 Omega
// evaluated at the inner optimum.
Field grad_w_reduced(const WaveState& inner_state, const EnergyModel& model, double c2,
                     double g);
Field grad_w_reduced(const Field& w, const EnergyModel& model, double c2, double g);

// Fine-grid chart over q used by the dual-route gradient checks: the stretch
// chi' = e^q / mean(e^q) is kept on the doubled grid without truncation, so
// the discrete functional below is exactly differentiated by grad_q_fine.
double elastic_fine_q(const ConformalFrame& frame, const Field& q, const EnergyModel& model);
Field grad_q_fine(const ConformalFrame& frame, const Field& q, const EnergyModel& model);

} // namespace hew
