#pragma once

#include <hew/field.hpp>
#include <hew/spectral.hpp>

#include <cmath>
#include <random>
#include <vector>

namespace testutil {

// Random band-limited zero-mean field: modes 1..band with N(0,1) amplitudes,
// optionally rescaled to a target sup norm. Band-limited directions keep
// finite-difference curvature errors small; see the gradient tests.
inline hew::Field random_field(std::mt19937& rng, std::size_t m, std::size_t band,
                               double sup = 0.0) {
    std::normal_distribution<double> nd;
    std::vector<double> samples(m, 0.0);
    for (std::size_t n = 1; n <= band; ++n) {
        const double ca = nd(rng), cb = nd(rng);
        for (std::size_t j = 0; j < m; ++j) {
            const double tau = hew::grid_point(m, j);
            samples[j] += ca * std::cos(n * tau) + cb * std::sin(n * tau);
        }
    }
    hew::Field f = hew::Field::from_samples(std::move(samples));
    f += -f.mean();
    if (sup > 0.0 && f.sup_norm() > 0.0)
        f *= sup / f.sup_norm();
    return f;
}

// Random strictly positive stretch with exact unit mean (nodal normalization).
inline hew::Field random_stretch(std::mt19937& rng, std::size_t m, std::size_t band,
                                 double log_sup) {
    const hew::Field q = random_field(rng, m, band, log_sup);
    std::vector<double> samples(m);
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        samples[j] = std::exp(q[j]);
        acc += samples[j];
    }
    const double mean = acc / static_cast<double>(m);
    for (double& v : samples)
        v /= mean;
    return hew::Field::from_samples(std::move(samples));
}

} // namespace testutil
