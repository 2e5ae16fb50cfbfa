#include "hew/field.hpp"

#include "hew/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace hew {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_grid(std::size_t m) {
    if (m < 4 || m % 2 != 0)
        throw DimensionError("grid size must be even and at least 4, got " + std::to_string(m));
}

// One cached FFTW plan pair per grid size. Plan creation and execution run
// under the mutex with copy-in/copy-out through plan-owned buffers; transforms
// are cheap relative to the surrounding math, so contention is not a concern.
struct PlanEntry {
    fftw_plan forward = nullptr;  // r2c
    fftw_plan backward = nullptr; // c2r
    double* real_buf = nullptr;
    fftw_complex* cplx_buf = nullptr;
};

std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

PlanEntry& plan_for(std::size_t m) {
    static std::map<std::size_t, PlanEntry> cache;
    auto [it, inserted] = cache.try_emplace(m);
    PlanEntry& e = it->second;
    if (inserted) {
        e.real_buf = fftw_alloc_real(m);
        e.cplx_buf = fftw_alloc_complex(m / 2 + 1);
        e.forward = fftw_plan_dft_r2c_1d(static_cast<int>(m), e.real_buf, e.cplx_buf, FFTW_ESTIMATE);
        e.backward = fftw_plan_dft_c2r_1d(static_cast<int>(m), e.cplx_buf, e.real_buf, FFTW_ESTIMATE);
    }
    return e;
}

// Normalized analysis: c_n = (1/M) sum_j f_j exp(-i n tau_j).
std::vector<std::complex<double>> analyze(std::span<const double> samples) {
    const std::size_t m = samples.size();
    require_grid(m);
    std::vector<std::complex<double>> out(m / 2 + 1);
    std::lock_guard lock(plan_mutex());
    PlanEntry& e = plan_for(m);
    std::copy(samples.begin(), samples.end(), e.real_buf);
    fftw_execute(e.forward);
    const double inv = 1.0 / static_cast<double>(m);
    for (std::size_t n = 0; n <= m / 2; ++n)
        out[n] = {e.cplx_buf[n][0] * inv, e.cplx_buf[n][1] * inv};
    out.front() = {out.front().real(), 0.0};
    out.back() = {out.back().real(), 0.0};
    return out;
}

// Synthesis of the interpolant at its own grid: FFTW's c2r computes the
// plain Hermitian sum, so normalized coefficients map to sample values.
std::vector<double> synthesize(std::span<const std::complex<double>> coeffs, std::size_t m) {
    require_grid(m);
    if (coeffs.size() != m / 2 + 1)
        throw DimensionError("coefficient count must be M/2+1");
    std::vector<double> out(m);
    std::lock_guard lock(plan_mutex());
    PlanEntry& e = plan_for(m);
    for (std::size_t n = 0; n <= m / 2; ++n) {
        e.cplx_buf[n][0] = coeffs[n].real();
        e.cplx_buf[n][1] = coeffs[n].imag();
    }
    e.cplx_buf[0][1] = 0.0;
    e.cplx_buf[m / 2][1] = 0.0;
    fftw_execute(e.backward);
    std::copy(e.real_buf, e.real_buf + m, out.begin());
    return out;
}

} // namespace

Field Field::zeros(std::size_t m) {
    require_grid(m);
    Field f;
    f.samples_.assign(m, 0.0);
    f.coeffs_.assign(m / 2 + 1, {0.0, 0.0});
    return f;
}

Field Field::constant(std::size_t m, double value) {
    Field f = zeros(m);
    std::ranges::fill(f.samples_, value);
    f.coeffs_[0] = {value, 0.0};
    return f;
}

Field Field::from_samples(std::vector<double> samples) {
    Field f;
    f.coeffs_ = analyze(samples);
    f.samples_ = std::move(samples);
    return f;
}

Field Field::from_coeffs(std::size_t m, std::vector<std::complex<double>> coeffs) {
    require_grid(m);
    if (coeffs.size() != m / 2 + 1)
        throw DimensionError("coefficient count must be M/2+1, got " + std::to_string(coeffs.size()));
    coeffs.front() = {coeffs.front().real(), 0.0};
    coeffs.back() = {coeffs.back().real(), 0.0};
    Field f;
    f.samples_ = synthesize(coeffs, m);
    f.coeffs_ = std::move(coeffs);
    return f;
}

Field Field::from_fine_samples(std::span<const double> fine, std::size_t m) {
    require_grid(m);
    const std::size_t r = fine.size();
    if (r < m)
        throw DimensionError("fine grid must be at least as large as the target grid");
    auto fine_coeffs = analyze(fine);
    std::vector<std::complex<double>> coeffs(m / 2 + 1);
    for (std::size_t n = 0; n < m / 2; ++n)
        coeffs[n] = fine_coeffs[n];
    // Mode m/2 is interior at resolution r > m; its cosine content
    // 2 Re(c_{m/2}) is what the coarse Nyquist bin represents.
    coeffs[m / 2] = (r == m) ? fine_coeffs[m / 2]
                             : std::complex<double>{2.0 * fine_coeffs[m / 2].real(), 0.0};
    return from_coeffs(m, std::move(coeffs));
}

Field Field::cosine(std::size_t m, std::size_t n, double amplitude) {
    require_grid(m);
    if (n > m / 2)
        throw DomainError("cosine mode exceeds the Nyquist mode");
    if (n == 0)
        return constant(m, amplitude);
    std::vector<std::complex<double>> coeffs(m / 2 + 1, {0.0, 0.0});
    coeffs[n] = (n == m / 2) ? std::complex<double>{amplitude, 0.0}
                             : std::complex<double>{amplitude / 2.0, 0.0};
    return from_coeffs(m, std::move(coeffs));
}

Field Field::sine(std::size_t m, std::size_t n, double amplitude) {
    require_grid(m);
    if (n == 0 || n >= m / 2)
        throw DomainError("sine mode must lie strictly between 0 and the Nyquist mode");
    std::vector<std::complex<double>> coeffs(m / 2 + 1, {0.0, 0.0});
    coeffs[n] = {0.0, -amplitude / 2.0};
    return from_coeffs(m, std::move(coeffs));
}

double Field::sup_norm() const {
    double s = 0.0;
    for (double v : samples_)
        s = std::max(s, std::abs(v));
    return s;
}

double Field::min_value() const {
    return samples_.empty() ? 0.0 : *std::ranges::min_element(samples_);
}

double Field::max_value() const {
    return samples_.empty() ? 0.0 : *std::ranges::max_element(samples_);
}

std::vector<double> Field::values_on(std::size_t r) const {
    const std::size_t m = size();
    require_grid(m);
    require_grid(r);
    if (r < m)
        throw DimensionError("values_on target grid must not be coarser than the field's grid");
    if (r == m)
        return samples_;
    std::vector<std::complex<double>> padded(r / 2 + 1, {0.0, 0.0});
    for (std::size_t n = 0; n < m / 2; ++n)
        padded[n] = coeffs_[n];
    // The coarse Nyquist cosine becomes an interior mode: split its weight.
    padded[m / 2] = {coeffs_[m / 2].real() / 2.0, 0.0};
    return synthesize(padded, r);
}

double Field::eval_at(double tau) const {
    const std::size_t m = size();
    if (m == 0)
        return 0.0;
    double acc = coeffs_[0].real();
    for (std::size_t n = 1; n < m / 2; ++n) {
        const double c = std::cos(static_cast<double>(n) * tau);
        const double s = std::sin(static_cast<double>(n) * tau);
        acc += 2.0 * (coeffs_[n].real() * c - coeffs_[n].imag() * s);
    }
    acc += coeffs_[m / 2].real() * std::cos(static_cast<double>(m / 2) * tau);
    return acc;
}

Field& Field::operator+=(const Field& other) {
    if (size() != other.size())
        throw DimensionError("field sizes differ in addition");
    for (std::size_t j = 0; j < samples_.size(); ++j)
        samples_[j] += other.samples_[j];
    for (std::size_t n = 0; n < coeffs_.size(); ++n)
        coeffs_[n] += other.coeffs_[n];
    return *this;
}

Field& Field::operator-=(const Field& other) {
    if (size() != other.size())
        throw DimensionError("field sizes differ in subtraction");
    for (std::size_t j = 0; j < samples_.size(); ++j)
        samples_[j] -= other.samples_[j];
    for (std::size_t n = 0; n < coeffs_.size(); ++n)
        coeffs_[n] -= other.coeffs_[n];
    return *this;
}

Field& Field::operator*=(double scale) {
    for (double& v : samples_)
        v *= scale;
    for (auto& c : coeffs_)
        c *= scale;
    return *this;
}

Field& Field::operator+=(double shift) {
    for (double& v : samples_)
        v += shift;
    if (!coeffs_.empty())
        coeffs_[0] += shift;
    return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double scale, Field f) { return f *= scale; }
Field operator*(Field f, double scale) { return f *= scale; }
Field operator+(Field f, double shift) { return f += shift; }
Field operator-(Field f) { return f *= -1.0; }

double grid_point(std::size_t m, std::size_t j) {
    return kTwoPi * static_cast<double>(j) / static_cast<double>(m);
}

std::vector<double> grid_points(std::size_t m) {
    std::vector<double> g(m);
    for (std::size_t j = 0; j < m; ++j)
        g[j] = grid_point(m, j);
    return g;
}

namespace detail {

std::vector<std::complex<double>> analyze_samples(std::span<const double> samples) {
    return analyze(samples);
}

std::vector<double> synthesize_coeffs(std::span<const std::complex<double>> coeffs, std::size_t m) {
    return synthesize(coeffs, m);
}

} // namespace detail

} // namespace hew
