#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hew {

// Stored elastic energy density E(nu, mu): nu > 0 is the stretch, mu the
// bending strain with respect to the material coordinate. Implementations
// supply derivatives up to second order plus growth metadata.
class EnergyModel {
public:
    virtual ~EnergyModel() = default;
    virtual double eval(double nu, double mu) const = 0;
    // (E1, E2) = (dE/dnu, dE/dmu)
    virtual std::array<double, 2> grad(double nu, double mu) const = 0;
    // (E11, E12, E22)
    virtual std::array<double, 3> hess(double nu, double mu) const = 0;
    virtual double exponent_r() const = 0; // growth of nu^r as nu -> infinity
    virtual double exponent_s() const = 0; // growth of nu^-s as nu -> 0
    virtual double exponent_p() const = 0; // growth of |mu|^p
    virtual int smoothness() const = 0;    // C^k, k >= 2
};

struct IllustrativeParams {
    double a = 20.0, b = 15.0, beta = 0.1, d = 0.05;
    double r = 4.0, s = 3.0, p = 4.0, alpha = 2.0, delta = 0.5;
};

// E(nu,mu) = (a/s) nu^-s + (a/r) nu^r + b|mu|^p + beta mu^2
//            + d |mu|^alpha nu^-delta - a(s+r)/(s r).
// The nu^r / nu^-s coefficients put the minimum of E(.,0) at nu = 1 and the
// constant makes E(1,0) = 0.
class IllustrativeEnergy final : public EnergyModel {
public:
    explicit IllustrativeEnergy(const IllustrativeParams& params = {});

    double eval(double nu, double mu) const override;
    std::array<double, 2> grad(double nu, double mu) const override;
    std::array<double, 3> hess(double nu, double mu) const override;
    double exponent_r() const override { return p_.r; }
    double exponent_s() const override { return p_.s; }
    double exponent_p() const override { return p_.p; }
    int smoothness() const override { return 2; }

    const IllustrativeParams& params() const { return p_; }
    bool alpha_is_two() const;
    // beta when alpha > 2, beta + d when alpha == 2; E22(1,0) = 2 beta0.
    double beta0() const;

private:
    IllustrativeParams p_;
};

// Dual density E*(t, sigma) := t E(1/t, sigma/t), t > 0.
double estar(const EnergyModel& model, double t, double sigma);
// (dE*/dt, dE*/dsigma)
std::array<double, 2> estar_grad(const EnergyModel& model, double t, double sigma);
// (E*_11, E*_12, E*_22)
std::array<double, 3> estar_hess(const EnergyModel& model, double t, double sigma);

// The unique t > 0 solving dE*/dt(t, sigma) = gamma (strict convexity of E*
// in t makes the left side strictly increasing). warm_start seeds the search.
double varpi(const EnergyModel& model, double sigma, double gamma, double warm_start = 1.0);

// psi(y) = E*_2(varpi(y; gamma), y): strictly increasing in y.
double psi_map(const EnergyModel& model, double y, double gamma);
double psi_inverse(const EnergyModel& model, double v, double gamma);

enum class CheckStatus { pass, fail, not_checked };

struct HypothesisResult {
    std::string key;
    CheckStatus status = CheckStatus::not_checked;
    std::string detail; // witness values or tightest-seen constant suggestion
    std::optional<std::array<double, 2>> witness; // (nu, mu); mu = NaN if nu-only
};

struct GridSpec {
    double nu_min = 1e-3;
    double nu_max = 1e3;
    double mu_max = 1e3;
    std::size_t nu_points = 121;
    std::size_t mu_points = 121;
    double mu_floor = 1e-8; // Hessian sampling avoids |mu| below this
};

// User-supplied constants for the growth hypotheses. Absent constants leave
// the corresponding hypothesis not-checked (the checker suggests tightest-seen
// values but never fits and asserts its own).
struct GrowthConstants {
    std::optional<double> k0, k0_offset;            // coercive growth
    std::optional<double> k1, nu_bar1, mu_bar1;     // E1 control
    std::optional<double> k2, nu_bar2, mu_bar2;     // E2 control
    std::optional<double> pinch_lo, pinch_hi, pinch_nu_bar, pinch_mu_bar;
    std::vector<double> pinch_gammas = {1.0};       // level-set pinch
    std::optional<double> k3, eps3, nu_bar3, mu_bar3; // E2 lower bound
};

struct C2Interval {
    double lo = 0.0; // g + E22(1,0), excluded endpoint
    double hi = 0.0; // numeric infimum of the compatibility expression
    bool empty = false;
};

struct HypothesisReport {
    std::vector<HypothesisResult> results;
    std::optional<C2Interval> admissible_c2;

    const HypothesisResult* find(std::string_view key) const;
    // The structural gates required before maximization: evenness,
    // rest-state normalization, joint convexity.
    bool mandatory_pass() const;
};

HypothesisReport check_hypotheses(const EnergyModel& model, double c2, double g,
                                  double mu_star, const GridSpec& grids = {},
                                  const GrowthConstants& constants = {});

// lo = g + E22(1,0); hi = inf over nu in (1, nu_max] of
// 4 pi E(nu, mu*)/A(nu) - g A(nu)/(2 pi) - 2 pi g sqrt(nu^2 - 1),
// located on a log grid and refined by golden-section search.
C2Interval admissible_c2_interval(const EnergyModel& model, double g, double mu_star,
                                  double nu_max = 50.0);

} // namespace hew
