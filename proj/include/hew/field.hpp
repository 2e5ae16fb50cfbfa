#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hew {

// Real 2pi-periodic field on the uniform grid tau_j = 2*pi*j/M (M even, >= 4),
// stored together with its normalized DFT coefficients
//
//   c_n = (1/M) sum_j f_j exp(-i n tau_j),   n = 0..M/2.
//
// The trigonometric interpolant attached to this data is
//
//   f(tau) = c_0 + 2 sum_{0<n<M/2} Re(c_n exp(i n tau)) + c_{M/2} cos(M/2 tau),
//
// i.e. the Nyquist bin holds a pure cosine counted once; c_0 and c_{M/2} are
// real. Both representations are kept in sync; the class is immutable.
class Field {
public:
    Field() = default; // empty field, size 0

    static Field zeros(std::size_t m);
    static Field constant(std::size_t m, double value);
    static Field from_samples(std::vector<double> samples);
    static Field from_coeffs(std::size_t m, std::vector<std::complex<double>> coeffs);
    // Band-limit fine samples (grid size fine.size() >= m) to resolution m:
    // keeps modes |n| < m/2 and folds the cosine content of mode m/2 into the
    // Nyquist bin. With fine.size() == 2m this is the dealiasing projection.
    static Field from_fine_samples(std::span<const double> fine, std::size_t m);
    static Field cosine(std::size_t m, std::size_t n, double amplitude = 1.0);
    static Field sine(std::size_t m, std::size_t n, double amplitude = 1.0);

    std::size_t size() const { return samples_.size(); }
    bool empty() const { return samples_.empty(); }
    std::span<const double> samples() const { return samples_; }
    std::span<const std::complex<double>> coeffs() const { return coeffs_; }
    double operator[](std::size_t j) const { return samples_[j]; }
    std::complex<double> coeff(std::size_t n) const { return coeffs_[n]; }

    double mean() const { return coeffs_.empty() ? 0.0 : coeffs_[0].real(); }
    double sup_norm() const;
    double min_value() const;
    double max_value() const;

    // Interpolant values on the finer uniform grid of size r (even, >= size).
    std::vector<double> values_on(std::size_t r) const;
    // Interpolant at an arbitrary point; O(M) trigonometric sum.
    double eval_at(double tau) const;

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(double scale);
    Field& operator+=(double shift);

private:
    std::vector<double> samples_;
    std::vector<std::complex<double>> coeffs_; // size M/2 + 1
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double scale, Field f);
Field operator*(Field f, double scale);
Field operator+(Field f, double shift);
Field operator-(Field f);

// Grid node tau_j = 2*pi*j/m.
double grid_point(std::size_t m, std::size_t j);
std::vector<double> grid_points(std::size_t m);

namespace detail {

// Raw-array DFT helpers for operations on scratch grids (normalized
// coefficients, same conventions as Field).
std::vector<std::complex<double>> analyze_samples(std::span<const double> samples);
std::vector<double> synthesize_coeffs(std::span<const std::complex<double>> coeffs, std::size_t m);

} // namespace detail

} // namespace hew
