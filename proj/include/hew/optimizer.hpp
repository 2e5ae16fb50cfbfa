#pragma once

#include "hew/energy.hpp"
#include "hew/field.hpp"
#include "hew/geometry.hpp"
#include "hew/lagrangian.hpp"
#include "hew/residuals.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hew {

struct SolveConfig {
    std::size_t n = 128;      // spectral modes; the grid has 2n nodes
    double eps0 = 1e-3;       // initial cosine amplitude
    double tol_grad = 1e-9;   // sup-norm target for the reduced gradient
    int max_iter = 1000;
    double c2 = 1.5;
    double g = 1.0;
    double mu_star = 0.62;    // bending scale for the structural checks
    bool enforce_gates = true; // refuse energies failing the mandatory checks
};

// w = eps0 cos(tau) on the 2n grid: the even small-amplitude seed.
Field initial_guess(std::size_t n, double eps0);

struct SolveResult {
    WaveState state;
    double j0_value = 0.0;
    double height = 0.0;      // max w - min w on the doubled grid
    double grad_sup = 0.0;    // reduced-gradient sup norm at the final point
    int iterations = 0;
    bool converged = false;
    bool trivial = false;          // collapsed to the flat state
    bool below_threshold = false;  // c^2 <= g + E22(1,0): flat state expected
    GeometryReport geometry;
    ResidualReport residuals;
};

// Maximize the reduced objective over zero-mean profiles w by limited-memory
// BFGS on the spectral coefficients, re-solving the optimal stretch at every
// evaluation. Line search is backtracking Armijo with an absolute noise
// allowance; a failed search resets the quasi-Newton memory once before
// giving up.
SolveResult maximize(const EnergyModel& model, const SolveConfig& config,
                     std::optional<Field> w_init = std::nullopt);

struct SweepEntry {
    double c2 = 0.0;
    bool solved = false;
    std::string error; // populated when solved == false
    std::optional<SolveResult> result;
};

// Solve along a list of speeds, warm-starting each solve from the previous
// converged profile. A failure is recorded in its entry and the sweep moves on
// from the last good state.
std::vector<SweepEntry> continuation_sweep(const EnergyModel& model, SolveConfig base,
                                           std::span<const double> c2_values,
                                           bool warm_start = true);

} // namespace hew
