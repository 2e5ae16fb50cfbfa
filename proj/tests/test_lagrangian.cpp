#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <hew/energy.hpp>
#include <hew/errors.hpp>
#include <hew/lagrangian.hpp>
#include <hew/spectral.hpp>

#include "testutil.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace hew;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kC2 = 1.4957019241108788; // admissible for the default model
constexpr double kG = 1.0;

// dF . h = 2 pi mean(grad . h); the product is dealiased so the pairing is
// exact for band-limited directions
double pair_with(const Field& grad, const Field& h) {
    return 2.0 * kPi * product(grad, h).mean();
}

// fourth-order central stencil; the module contract pins delta = 1e-6
template <typename F>
double fd4(F&& f, double delta) {
    return (f(-2.0 * delta) - 8.0 * f(-delta) + 8.0 * f(delta) - f(2.0 * delta)) /
           (12.0 * delta);
}

} // namespace

TEST_CASE("flat state is elastically neutral") {
    const IllustrativeEnergy model;
    const WaveState st = make_state_inner(Field::zeros(32), model);
    for (std::size_t j = 0; j < 32; ++j)
        CHECK(st.chi_prime[j] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(st.gamma0) < 1e-13);
    CHECK(std::abs(elastic(st, model)) < 1e-13);
    CHECK(kinetic_potential_I0(Field::zeros(32), kC2, kG) == 0.0);
    CHECK(std::abs(j0(st, model, kC2, kG)) < 1e-13);
}

TEST_CASE("I0 closed form for a single cosine") {
    // A1 = pi eps^2 and A2 = pi eps^2, so
    // I0 = (g/4pi) pi^2 eps^4 + (c^2/2) pi eps^2 - (g/2) pi eps^2
    const double eps = 0.1;
    const Field w = Field::cosine(32, 1, eps);
    const double a1 = kPi * eps * eps;
    const double expected = kG / (4.0 * kPi) * a1 * a1 + kC2 / 2.0 * a1 - kG / 2.0 * a1;
    CHECK(kinetic_potential_I0(w, kC2, kG) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("grad_I0 against finite differences") {
    std::mt19937 rng(101);
    const std::size_t m = 64;
    const Field w = testutil::random_field(rng, m, 8, 0.1);
    const Field grad = grad_I0(w, kC2, kG);

    for (int rep = 0; rep < 10; ++rep) {
        const Field h = testutil::random_field(rng, m, 8, 1.0);
        const double delta = 1e-6;
        const double fd =
            (kinetic_potential_I0(w + delta * h, kC2, kG) -
             kinetic_potential_I0(w - delta * h, kC2, kG)) /
            (2.0 * delta);
        const double an = pair_with(grad, h);
        REQUIRE(std::abs(an) > 1e-8);
        CHECK(std::abs(fd - an) < 1e-6 * std::abs(an));
    }

    // [grad I0] = g a0
    CHECK(grad.mean() == doctest::Approx(kG * mass_shift_a0(w)).epsilon(1e-12));
}

TEST_CASE("inner stretch solve minimizes the elastic energy") {
    const IllustrativeEnergy model;
    std::mt19937 rng(103);
    const std::size_t m = 64;
    // resolved profile: the perturbation response must dominate the
    // quadrature tail for the minimality comparison to be meaningful
    const Field w = testutil::random_field(rng, m, 4, 0.05);

    const WaveState inner = make_state_inner(w, model);
    CHECK(inner.inner_residual < 1e-12);
    CHECK(std::abs(inner.chi_prime.mean() - 1.0) < 1e-13);
    CHECK(inner.chi_prime.min_value() > 0.0);

    const double e_inner = elastic(inner, model);
    const WaveState unit = make_state(w, Field::constant(m, 1.0));
    CHECK(e_inner <= elastic(unit, model));

    // convexity: any unit-mean perturbation of the stretch raises the energy
    for (int rep = 0; rep < 10; ++rep) {
        const Field dp = testutil::random_field(rng, m, 8, 1e-3);
        const WaveState pert = make_state(w, inner.chi_prime + dp);
        CHECK(elastic(pert, model) > e_inner);
    }

    // reduced_j is j0 at the inner stretch
    CHECK(reduced_j(w, model, kC2, kG) == doctest::Approx(j0(inner, model, kC2, kG)).epsilon(1e-14));
}

TEST_CASE("state construction guards") {
    const Field w = Field::cosine(32, 1, 0.05);
    CHECK_THROWS_AS((void)make_state(w, Field::constant(32, 1.1)), DomainError);
    CHECK_THROWS_AS((void)make_state(w, Field::constant(16, 1.0)), DimensionError);
    Field bad = Field::constant(32, 1.0) + Field::cosine(32, 1, 1.5); // dips negative
    CHECK_THROWS_AS((void)make_state(w, bad), DomainError);
}

TEST_CASE("energy field caches are internally consistent") {
    const IllustrativeEnergy model;
    std::mt19937 rng(107);
    const WaveState st = make_state_inner(testutil::random_field(rng, 64, 8, 0.1), model);
    const EnergyFields ef = energy_fields(st, model);
    const std::size_t r = st.frame.fine_grid();
    for (std::size_t i = 0; i < r; ++i) {
        CHECK(ef.nu_f[i] == doctest::Approx(st.frame.omega_f[i] / st.chi_prime_f[i]).epsilon(1e-15));
        CHECK(ef.mu_f[i] ==
              doctest::Approx(st.frame.theta_prime_f[i] / st.chi_prime_f[i]).epsilon(1e-13));
        const double dual =
            ef.e_f[i] - ef.nu_f[i] * ef.e1_f[i] - ef.mu_f[i] * ef.e2_f[i];
        CHECK(ef.d_f[i] == doctest::Approx(dual).epsilon(1e-12));
    }
}

TEST_CASE("elastic energy against a dense quadrature") {
    const IllustrativeEnergy model;
    std::mt19937 rng(109);
    const std::size_t m = 64, dense = 8192;
    const WaveState st = make_state_inner(testutil::random_field(rng, m, 4, 0.05), model);

    const std::vector<double> wp = st.frame.w_prime.values_on(dense);
    const std::vector<double> cwp = st.frame.cw_prime.values_on(dense);
    const std::vector<double> tp = st.frame.theta_prime_m.values_on(dense);
    const std::vector<double> chi = st.chi_prime.values_on(dense);
    double acc = 0.0;
    for (std::size_t i = 0; i < dense; ++i) {
        const double omega = std::hypot(1.0 + cwp[i], wp[i]);
        const double nu = omega / chi[i];
        const double mu = tp[i] / chi[i];
        acc += chi[i] * model.eval(nu, mu);
    }
    const double riemann = 2.0 * kPi * acc / static_cast<double>(dense);
    CHECK(riemann == doctest::Approx(elastic(st, model)).epsilon(1e-10));
}

TEST_CASE("vertical shift optimality of the reduced form") {
    // I(a + w) = (c^2/2) A1 - (g/2)(A2 + 2 a A1 + 2 pi a^2): maximal at
    // a0 = -A1/2pi, where it equals I0(w)
    std::mt19937 rng(113);
    const Field w = testutil::random_field(rng, 64, 8, 0.2);
    const double a1 = 2.0 * kPi * product(w, hilbert(derivative(w))).mean();
    const double a2 = 2.0 * kPi * product(product(w, w),
                                          Field::constant(64, 1.0) + hilbert(derivative(w)))
                          .mean();
    auto shifted = [&](double a) {
        return kC2 / 2.0 * a1 - kG / 2.0 * (a2 + 2.0 * a * a1 + 2.0 * kPi * a * a);
    };
    const double a0 = mass_shift_a0(w);
    CHECK(a0 == doctest::Approx(-a1 / (2.0 * kPi)).epsilon(1e-13));
    CHECK(shifted(a0) == doctest::Approx(kinetic_potential_I0(w, kC2, kG)).epsilon(1e-12));
    for (double step : {1e-2, 0.1, 1.0}) {
        // exact quadratic drop g pi step^2 away from the optimum
        CHECK(shifted(a0) - shifted(a0 + step) ==
              doctest::Approx(kG * kPi * step * step).epsilon(1e-10));
        CHECK(shifted(a0) - shifted(a0 - step) ==
              doctest::Approx(kG * kPi * step * step).epsilon(1e-10));
    }
}

TEST_CASE("reduced gradient vanishes at the flat state") {
    const IllustrativeEnergy model;
    CHECK(grad_w_reduced(Field::zeros(64), model, kC2, kG).sup_norm() < 1e-14);
}

TEST_CASE("reduced gradient against finite differences") {
    const IllustrativeEnergy model;
    std::mt19937 rng(127);
    const std::size_t m = 64;
    // the analytic gradient carries the same quadrature tail as op_L, so
    // the finite-difference match is only clean on resolved profiles
    const Field w = testutil::random_field(rng, m, 4, 0.03);
    const Field grad = grad_w_reduced(w, model, kC2, kG);
    CHECK(std::abs(grad.mean()) < 1e-13);

    for (int rep = 0; rep < 10; ++rep) {
        const Field h = testutil::random_field(rng, m, 4, 1.0);
        const double fd = fd4(
            [&](double d) { return reduced_j(w + d * h, model, kC2, kG); }, 1e-6);
        const double an = pair_with(grad, h);
        REQUIRE(std::abs(an) > 1e-8);
        CHECK(std::abs(fd - an) < 1e-5 * std::abs(an));
    }
}

TEST_CASE("fine-grid stretch chart is exactly differentiated") {
    const IllustrativeEnergy model;
    std::mt19937 rng(131);
    const std::size_t m = 32;
    const ConformalFrame frame = make_frame(testutil::random_field(rng, m, 4, 0.1));
    const Field q = testutil::random_field(rng, m, 4, 0.2);
    const Field grad = grad_q_fine(frame, q, model);

    for (int rep = 0; rep < 10; ++rep) {
        const Field h = testutil::random_field(rng, m, 4, 1.0);
        const double fd = fd4(
            [&](double d) { return elastic_fine_q(frame, q + d * h, model); }, 1e-6);
        const double an = pair_with(grad, h);
        REQUIRE(std::abs(an) > 1e-10);
        CHECK(std::abs(fd - an) < 1e-7 * (1.0 + std::abs(an)));
    }
    CHECK_THROWS_AS((void)elastic_fine_q(frame, Field::zeros(16), model), DimensionError);
}

TEST_CASE("cache coherence of state evaluation") {
    const IllustrativeEnergy model;
    std::mt19937 rng(137);
    const Field w = testutil::random_field(rng, 64, 8, 0.1);

    const WaveState a = make_state_inner(w, model);
    const WaveState b = make_state(w, a.chi_prime);
    CHECK(elastic(a, model) == elastic(b, model));
    CHECK(j0(a, model, kC2, kG) == j0(b, model, kC2, kG));

    // the fine cache is exactly the interpolant of the nodal stretch
    const std::vector<double> fresh = a.chi_prime.values_on(2 * a.grid());
    for (std::size_t i = 0; i < fresh.size(); ++i)
        CHECK(a.chi_prime_f[i] == fresh[i]);
}
