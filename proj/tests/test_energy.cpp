#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <hew/energy.hpp>
#include <hew/errors.hpp>

#include <array>
#include <cmath>
#include <random>
#include <vector>

using namespace hew;

namespace {

// |fd - exact| <= tol * (1 + |exact|): relative away from zero, absolute near it
bool close_rel(double fd, double exact, double tol) {
    return std::abs(fd - exact) <= tol * (1.0 + std::abs(exact));
}

// E = S(nu) + B(mu) with the illustrative stretch part and no mixed term;
// used to probe the splitting-model growth property.
class SplitEnergy final : public EnergyModel {
public:
    double eval(double nu, double mu) const override {
        return 20.0 / 3.0 * std::pow(nu, -3.0) + 5.0 * std::pow(nu, 4.0) - 140.0 / 12.0 +
               15.0 * mu * mu * mu * mu + 0.1 * mu * mu;
    }
    std::array<double, 2> grad(double nu, double mu) const override {
        return {-20.0 * std::pow(nu, -4.0) + 20.0 * std::pow(nu, 3.0),
                60.0 * mu * mu * mu + 0.2 * mu};
    }
    std::array<double, 3> hess(double nu, double mu) const override {
        return {80.0 * std::pow(nu, -5.0) + 60.0 * nu * nu, 0.0, 180.0 * mu * mu + 0.2};
    }
    double exponent_r() const override { return 4.0; }
    double exponent_s() const override { return 3.0; }
    double exponent_p() const override { return 4.0; }
    int smoothness() const override { return 2; }
};

} // namespace

TEST_CASE("rest-state normalization and hand values") {
    const IllustrativeEnergy e;
    CHECK(std::abs(e.eval(1.0, 0.0)) < 1e-14);
    CHECK(e.grad(1.0, 0.0)[0] == 0.0);
    CHECK(e.grad(1.0, 0.0)[1] == 0.0);
    CHECK(e.hess(1.0, 0.0)[2] == doctest::Approx(0.3).epsilon(1e-14)); // 2(beta + d)
    CHECK(e.beta0() == doctest::Approx(0.15).epsilon(1e-14));
    CHECK(e.alpha_is_two());

    // frozen value, source: independent dense-arithmetic evaluation of the
    // closed form at (nu, mu) = (2, 1)
    CHECK(e.eval(2.0, 1.0) == doctest::Approx(84.30202200572597).epsilon(1e-14));

    // alpha > 2 removes the mixed term from the rest-state bending stiffness
    IllustrativeParams q;
    q.alpha = 2.5;
    const IllustrativeEnergy e25(q);
    CHECK_FALSE(e25.alpha_is_two());
    CHECK(e25.beta0() == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(e25.hess(1.0, 0.0)[2] == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("constructor rejects invalid moduli") {
    auto with = [](auto&& mutate) {
        IllustrativeParams q;
        mutate(q);
        return IllustrativeEnergy(q);
    };
    CHECK_THROWS_AS((void)with([](auto& q) { q.a = 0.0; }), ConfigError);
    CHECK_THROWS_AS((void)with([](auto& q) { q.b = -1.0; }), ConfigError);
    CHECK_THROWS_AS((void)with([](auto& q) { q.r = 1.0; }), ConfigError);
    CHECK_THROWS_AS((void)with([](auto& q) { q.alpha = 1.5; }), ConfigError);
    CHECK_THROWS_AS((void)with([](auto& q) { q.p = 2.0; }), ConfigError);
    CHECK_THROWS_AS((void)IllustrativeEnergy().eval(-0.5, 0.0), DomainError);
    CHECK_THROWS_AS((void)IllustrativeEnergy().grad(0.0, 1.0), DomainError);
}

TEST_CASE("grad and hess match finite differences of eval") {
    const IllustrativeEnergy e;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unu(0.3, 3.0), umu(0.05, 2.0);
    std::bernoulli_distribution flip;
    for (int rep = 0; rep < 100; ++rep) {
        const double nu = unu(rng);
        const double mu = (flip(rng) ? 1.0 : -1.0) * umu(rng);
        const double h = 1e-5 * std::max(1.0, std::abs(nu));
        const double k = 1e-5 * std::max(1.0, std::abs(mu));

        const auto g = e.grad(nu, mu);
        CHECK(close_rel((e.eval(nu + h, mu) - e.eval(nu - h, mu)) / (2 * h), g[0], 1e-6));
        CHECK(close_rel((e.eval(nu, mu + k) - e.eval(nu, mu - k)) / (2 * k), g[1], 1e-6));

        const auto hm = e.hess(nu, mu);
        const auto gp = e.grad(nu + h, mu), gm = e.grad(nu - h, mu);
        const auto qp = e.grad(nu, mu + k), qm = e.grad(nu, mu - k);
        CHECK(close_rel((gp[0] - gm[0]) / (2 * h), hm[0], 1e-6));
        CHECK(close_rel((gp[1] - gm[1]) / (2 * h), hm[1], 1e-6));
        CHECK(close_rel((qp[0] - qm[0]) / (2 * k), hm[1], 1e-6));
        CHECK(close_rel((qp[1] - qm[1]) / (2 * k), hm[2], 1e-6));
    }
}

TEST_CASE("dual density and its derivatives") {
    const IllustrativeEnergy e;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ut(0.5, 2.0), us(-2.0, 2.0);
    for (int rep = 0; rep < 100; ++rep) {
        const double t = ut(rng), s = us(rng);
        CHECK(estar(e, t, s) == doctest::Approx(t * e.eval(1.0 / t, s / t)).epsilon(1e-13));

        const double h = 1e-5 * t, k = 1e-5 * std::max(1.0, std::abs(s));
        const auto g = estar_grad(e, t, s);
        CHECK(close_rel((estar(e, t + h, s) - estar(e, t - h, s)) / (2 * h), g[0], 1e-6));
        CHECK(close_rel((estar(e, t, s + k) - estar(e, t, s - k)) / (2 * k), g[1], 1e-6));

        const auto hm = estar_hess(e, t, s);
        const auto gp = estar_grad(e, t + h, s), gm = estar_grad(e, t - h, s);
        const auto qp = estar_grad(e, t, s + k), qm = estar_grad(e, t, s - k);
        CHECK(close_rel((gp[0] - gm[0]) / (2 * h), hm[0], 1e-6));
        CHECK(close_rel((qp[0] - qm[0]) / (2 * k), hm[1], 1e-6));
        CHECK(close_rel((qp[1] - qm[1]) / (2 * k), hm[2], 1e-6));
        CHECK(hm[0] > 0.0); // strict convexity in t

        // dE*/dt(t, sigma) = E - nu E1 - mu E2 at (nu, mu) = (1/t, sigma/t)
        const double nu = 1.0 / t, mu = s / t;
        const auto ge = e.grad(nu, mu);
        const double dual = e.eval(nu, mu) - nu * ge[0] - mu * ge[1];
        CHECK(g[0] == doctest::Approx(dual).epsilon(1e-12));
    }
}

TEST_CASE("convexity minors transfer between E and E*") {
    const IllustrativeEnergy e;
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> unu(0.1, 10.0), umu(-3.0, 3.0);
    for (int rep = 0; rep < 100; ++rep) {
        const double nu = unu(rng), mu = umu(rng);
        const auto he = e.hess(nu, mu);
        const auto hs = estar_hess(e, 1.0 / nu, mu / nu);
        const double det_e = he[0] * he[2] - he[1] * he[1];
        const double det_s = hs[0] * hs[2] - hs[1] * hs[1];
        CHECK(he[0] > 0.0);
        CHECK(he[2] > 0.0);
        CHECK(det_e > -1e-10 * (1.0 + std::abs(he[0] * he[2])));
        CHECK(hs[0] > -1e-10);
        CHECK(hs[2] > -1e-10);
        CHECK(det_s > -1e-10 * (1.0 + std::abs(hs[0] * hs[2])));
    }
}

TEST_CASE("stretch multiplier root varpi") {
    const IllustrativeEnergy e;
    CHECK(varpi(e, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));

    std::mt19937 rng(19);
    std::uniform_real_distribution<double> us(-5.0, 5.0), ug(-2.0, 2.0);
    for (int rep = 0; rep < 50; ++rep) {
        const double s = us(rng), gmm = ug(rng);
        const double t = varpi(e, s, gmm);
        CHECK(t > 0.0);
        CHECK(std::abs(estar_grad(e, t, s)[0] - gmm) < 1e-12 * (1.0 + std::abs(gmm)));
    }

    // monotone in gamma at fixed sigma (inverse of an increasing map)
    double prev = 0.0;
    for (double gmm : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        const double t = varpi(e, 0.7, gmm);
        CHECK(t > prev);
        prev = t;
    }

    // uniform positive floor over a wide sigma range
    for (double gmm : {0.0, 1.0}) {
        double floor = 1e30;
        for (int i = 0; i <= 200; ++i) {
            const double s = -50.0 + 0.5 * static_cast<double>(i);
            floor = std::min(floor, varpi(e, s, gmm));
        }
        CHECK(floor > 0.5);
    }
}

TEST_CASE("psi map and its inverse") {
    const IllustrativeEnergy e;
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> uy(-3.0, 3.0), ug(-1.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        const double y = uy(rng), gmm = ug(rng);
        const double v = psi_map(e, y, gmm);
        CHECK(close_rel(psi_inverse(e, v, gmm), y, 1e-10));
    }
    double prev = -1e30;
    for (int i = 0; i <= 40; ++i) {
        const double y = -2.0 + 0.1 * static_cast<double>(i);
        const double v = psi_map(e, y, 0.3);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("splitting models satisfy the stretch growth property") {
    const SplitEnergy e;
    // nu S'(nu) - S(nu) increases without bound along nu = 10^k
    double prev = -1e30;
    for (int k = 1; k <= 6; ++k) {
        const double nu = std::pow(10.0, k);
        const double t = nu * e.grad(nu, 0.0)[0] - e.eval(nu, 0.0);
        CHECK(t > prev);
        prev = t;
    }
    CHECK(prev > 1e10);
}

TEST_CASE("hypothesis checker on the default model") {
    const IllustrativeEnergy e;
    const double c2 = 1.4957019241108788; // lo + 0.2 (hi - lo)
    const HypothesisReport rep = check_hypotheses(e, c2, 1.0, 0.62);

    CHECK(rep.mandatory_pass());
    for (const char* key : {"model-regularity", "evenness", "rest-state-normalization",
                            "joint-convexity", "transverse-speed-threshold",
                            "isoperimetric-domination", "bounded-stretch",
                            "closed-form-mixed-convexity", "closed-form-speed-window",
                            "closed-form-isoperimetric", "closed-form-growth-balance"}) {
        const HypothesisResult* r = rep.find(key);
        REQUIRE(r != nullptr);
        CHECK(r->status == CheckStatus::pass);
    }
    // growth hypotheses stay not-checked without user constants
    const HypothesisResult* cg = rep.find("coercive-growth");
    REQUIRE(cg != nullptr);
    CHECK(cg->status == CheckStatus::not_checked);

    REQUIRE(rep.admissible_c2.has_value());
    CHECK_FALSE(rep.admissible_c2->empty);
}

TEST_CASE("hypothesis checker accepts supplied growth constants") {
    const IllustrativeEnergy e;
    GrowthConstants gc;
    gc.k0 = 4.0;
    gc.k0_offset = 12.0;
    const HypothesisReport rep = check_hypotheses(e, 1.5, 1.0, 0.62, {}, gc);
    const HypothesisResult* r = rep.find("coercive-growth");
    REQUIRE(r != nullptr);
    CHECK(r->status == CheckStatus::pass);

    // an absurd constant fails with a witness
    gc.k0 = 100.0;
    const HypothesisReport bad = check_hypotheses(e, 1.5, 1.0, 0.62, {}, gc);
    const HypothesisResult* rb = bad.find("coercive-growth");
    REQUIRE(rb != nullptr);
    CHECK(rb->status == CheckStatus::fail);
    CHECK(rb->witness.has_value());
}

TEST_CASE("single-condition flips fail with witnesses") {
    auto flipped = [](auto&& mutate, double c2) {
        IllustrativeParams q;
        mutate(q);
        return check_hypotheses(IllustrativeEnergy(q), c2, 1.0, 0.62);
    };
    auto expect_fail = [](const HypothesisReport& rep, const char* key) {
        const HypothesisResult* r = rep.find(key);
        REQUIRE(r != nullptr);
        CHECK(r->status == CheckStatus::fail);
        CHECK(r->witness.has_value());
        CHECK_FALSE(r->detail.empty());
    };

    expect_fail(flipped([](auto& q) { q.delta = 1.5; }, 1.5), "closed-form-mixed-convexity");
    expect_fail(flipped([](auto&) {}, 1.2), "closed-form-speed-window");
    expect_fail(flipped([](auto& q) { q.b = 10.0; }, 1.5), "closed-form-isoperimetric");
    expect_fail(flipped([](auto& q) { q.alpha = 2.5; }, 1.5), "closed-form-growth-balance");

    // default model at admissible speed passes all four
    const HypothesisReport ok = flipped([](auto&) {}, 1.5);
    for (const char* key : {"closed-form-mixed-convexity", "closed-form-speed-window",
                            "closed-form-isoperimetric", "closed-form-growth-balance"})
        CHECK(ok.find(key)->status == CheckStatus::pass);
}

TEST_CASE("admissible speed interval") {
    const IllustrativeEnergy e;
    const C2Interval iv = admissible_c2_interval(e, 1.0, 0.62);
    CHECK_FALSE(iv.empty);
    CHECK(iv.lo == doctest::Approx(1.3).epsilon(1e-15));
    // frozen value, source: independent minimization of the compatibility
    // expression over nu with dense arithmetic
    CHECK(iv.hi == doctest::Approx(2.2785096205544004).epsilon(1e-8));
    // paper bracket for the default parameters: (g + 2 beta0, 2a/r - g(1+2pi)]
    CHECK(iv.lo > 1.3 - 1e-12);
    CHECK(iv.hi <= 2.0 * 20.0 / 4.0 - (1.0 + 2.0 * 3.14159265358979323846) + 1e-12);

    // a nearly bending-free sheet cannot support any admissible speed
    IllustrativeParams q;
    q.b = 0.01;
    CHECK(admissible_c2_interval(IllustrativeEnergy(q), 1.0, 0.62).empty);

    CHECK_THROWS_AS((void)admissible_c2_interval(e, 1.0, 1.5), DomainError);
    CHECK_THROWS_AS((void)admissible_c2_interval(e, 1.0, 0.62, 0.5), DomainError);
}
