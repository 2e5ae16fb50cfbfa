#include "hew/spectral.hpp"

#include "hew/errors.hpp"

#include <complex>
#include <numeric>
#include <vector>

namespace hew {

namespace {

using Coeffs = std::vector<std::complex<double>>;

Coeffs hilbert_coeffs(std::span<const std::complex<double>> in) {
    Coeffs out(in.size(), {0.0, 0.0});
    const std::complex<double> minus_i{0.0, -1.0};
    for (std::size_t n = 1; n + 1 < in.size(); ++n)
        out[n] = minus_i * in[n];
    return out; // zero mode and Nyquist bin stay 0
}

Coeffs derivative_coeffs(std::span<const std::complex<double>> in) {
    Coeffs out(in.size(), {0.0, 0.0});
    for (std::size_t n = 1; n + 1 < in.size(); ++n)
        out[n] = std::complex<double>{0.0, static_cast<double>(n)} * in[n];
    return out;
}

} // namespace

Field hilbert(const Field& f) {
    return Field::from_coeffs(f.size(), hilbert_coeffs(f.coeffs()));
}

Field derivative(const Field& f) {
    return Field::from_coeffs(f.size(), derivative_coeffs(f.coeffs()));
}

double mean(const Field& f) { return f.mean(); }

Antiderivative antiderivative_zero_start(const Field& f) {
    const std::size_t m = f.size();
    auto in = f.coeffs();
    Coeffs out(in.size(), {0.0, 0.0});
    for (std::size_t n = 1; n + 1 < in.size(); ++n)
        out[n] = in[n] / std::complex<double>{0.0, static_cast<double>(n)};
    // The Nyquist cosine integrates to a sine the grid cannot represent: drop.
    // Fix the constant so the total antiderivative vanishes at tau = 0.
    Field periodic = Field::from_coeffs(m, std::move(out));
    periodic += -periodic.eval_at(0.0);
    return Antiderivative{f.mean(), std::move(periodic)};
}

Field product(const Field& f, const Field& g) {
    if (f.size() != g.size())
        throw DimensionError("field sizes differ in product");
    const std::size_t m = f.size();
    auto fv = f.values_on(2 * m);
    auto gv = g.values_on(2 * m);
    for (std::size_t j = 0; j < fv.size(); ++j)
        fv[j] *= gv[j];
    return Field::from_fine_samples(fv, m);
}

std::vector<double> hilbert_samples(std::span<const double> samples) {
    auto c = detail::analyze_samples(samples);
    return detail::synthesize_coeffs(hilbert_coeffs(c), samples.size());
}

std::vector<double> derivative_samples(std::span<const double> samples) {
    auto c = detail::analyze_samples(samples);
    return detail::synthesize_coeffs(derivative_coeffs(c), samples.size());
}

double mean_samples(std::span<const double> samples) {
    if (samples.empty())
        return 0.0;
    return std::accumulate(samples.begin(), samples.end(), 0.0) /
           static_cast<double>(samples.size());
}

} // namespace hew
