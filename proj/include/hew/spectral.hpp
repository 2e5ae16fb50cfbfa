#pragma once

#include "hew/field.hpp"

#include <span>
#include <vector>

namespace hew {

// Antiderivative F of a field with F(0) = 0. When mean(f) != 0 the result is
// not periodic: F(tau) = slope*tau + periodic(tau), slope = mean(f).
struct Antiderivative {
    double slope = 0.0;
    Field periodic;

    double eval_at(double tau) const { return slope * tau + periodic.eval_at(tau); }
    double at_node(std::size_t j) const {
        return slope * grid_point(periodic.size(), j) + periodic[j];
    }
};

// Conjugate function (periodic Hilbert transform): Fourier multiplier
// -i sign(n), zero mode mapped to 0. The Nyquist cosine maps to a sine the
// grid cannot represent, so that bin is zeroed.
Field hilbert(const Field& f);

// Spectral derivative: multiplier i n; the Nyquist bin is zeroed for the same
// reason as in hilbert.
Field derivative(const Field& f);

double mean(const Field& f);

Antiderivative antiderivative_zero_start(const Field& f);

// Pointwise product dealiased on the doubled grid, truncated back to the
// common resolution.
Field product(const Field& f, const Field& g);

// Raw-array variants of the multiplier operations, acting on samples of an
// arbitrary even-sized uniform grid. Used for pointwise chains evaluated on
// padded grids, where building intermediate Fields would force truncation.
std::vector<double> hilbert_samples(std::span<const double> samples);
std::vector<double> derivative_samples(std::span<const double> samples);
double mean_samples(std::span<const double> samples);

} // namespace hew
