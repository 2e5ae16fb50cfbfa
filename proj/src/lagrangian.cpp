#include "hew/lagrangian.hpp"

#include "hew/errors.hpp"
#include "hew/spectral.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace hew {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

// Nodal stretch chi'_j = Omega_j varpi(sigma_j; gamma) for a trial multiplier,
// warm-starting each root from the previous sweep.
void nodal_stretch(const ConformalFrame& frame, const EnergyModel& model, double gamma,
                   std::vector<double>& t) {
    const std::size_t m = frame.grid();
    for (std::size_t j = 0; j < m; ++j) {
        const double warm = (t[j] > 0.0) ? t[j] : 1.0 / frame.omega_m[j];
        t[j] = varpi(model, frame.sigma_m[j], gamma, warm);
    }
}

} // namespace

InnerChiSolution inner_chi_solve(const ConformalFrame& frame, const EnergyModel& model,
                                 double gamma_init) {
    const std::size_t m = frame.grid();
    std::vector<double> t(m, 0.0);

    double gamma;
    if (std::isfinite(gamma_init)) {
        gamma = gamma_init;
    } else {
        // E*1 at the exactly mean-one stretch chi' = Omega/ell is a good seed.
        double acc = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            acc += estar_grad(model, 1.0 / frame.ell, frame.sigma_m[j])[0];
        gamma = acc / static_cast<double>(m);
    }

    auto eval_g = [&](double g_try) {
        nodal_stretch(frame, model, g_try, t);
        double acc = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            acc += frame.omega_m[j] * t[j];
        return acc / static_cast<double>(m) - 1.0;
    };
    auto eval_g_prime = [&]() {
        double acc = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            acc += frame.omega_m[j] / estar_hess(model, t[j], frame.sigma_m[j])[0];
        return acc / static_cast<double>(m);
    };

    double g_val = eval_g(gamma);

    // G is strictly increasing in gamma; bracket by geometric expansion.
    double lo = gamma, hi = gamma, g_lo = g_val, g_hi = g_val;
    double step = std::max(1.0, std::abs(gamma));
    for (int it = 0; g_lo > 0.0; ++it) {
        if (it >= 200)
            throw NumericError("unit-mean stretch multiplier not bracketed from below");
        lo -= step;
        step *= 2.0;
        g_lo = eval_g(lo);
    }
    step = std::max(1.0, std::abs(gamma));
    for (int it = 0; g_hi < 0.0; ++it) {
        if (it >= 200)
            throw NumericError("unit-mean stretch multiplier not bracketed from above");
        hi += step;
        step *= 2.0;
        g_hi = eval_g(hi);
    }

    gamma = std::clamp(gamma, lo, hi);
    g_val = eval_g(gamma);
    double best_gamma = gamma, best_res = std::abs(g_val);
    std::vector<double> best_t = t;

    int iterations = 0;
    for (; iterations < 100; ++iterations) {
        if (std::abs(g_val) <= 2.5e-15)
            break;
        if (g_val > 0.0)
            hi = gamma;
        else
            lo = gamma;
        const double deriv = eval_g_prime();
        double next = (deriv > 0.0) ? gamma - g_val / deriv : 0.5 * (lo + hi);
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        if (next == gamma)
            break;
        gamma = next;
        g_val = eval_g(gamma);
        if (std::abs(g_val) < best_res) {
            best_res = std::abs(g_val);
            best_gamma = gamma;
            best_t = t;
        }
    }

    InnerChiSolution sol;
    std::vector<double> chi(m);
    for (std::size_t j = 0; j < m; ++j)
        chi[j] = frame.omega_m[j] * best_t[j];
    sol.chi_prime = Field::from_samples(std::move(chi));
    sol.gamma0 = best_gamma;
    sol.mean_residual = best_res;
    sol.iterations = iterations;
    return sol;
}

namespace {

WaveState assemble_state(ConformalFrame frame, Field chi_prime) {
    const std::size_t m = frame.grid();
    if (chi_prime.size() != m)
        throw DimensionError("profile and re-parametrization live on different grids");

    double min_nodal = chi_prime[0];
    for (std::size_t j = 1; j < m; ++j)
        min_nodal = std::min(min_nodal, chi_prime[j]);
    if (!(min_nodal > 0.0))
        throw DomainError("re-parametrization must have positive stretch at every node");

    WaveState state;
    state.chi_prime_f = chi_prime.values_on(2 * m);
    for (double v : state.chi_prime_f)
        if (!(v > 0.0))
            throw DomainError(
                "re-parametrization interpolant loses positivity on the refined grid");

    std::vector<double> logs(m);
    for (std::size_t j = 0; j < m; ++j)
        logs[j] = std::log(chi_prime[j]);
    Field q = Field::from_samples(std::move(logs));
    q += -q.mean();

    state.frame = std::move(frame);
    state.chi_prime = std::move(chi_prime);
    state.q = std::move(q);
    return state;
}

} // namespace

WaveState make_state(const Field& w, const Field& chi_prime) {
    if (std::abs(chi_prime.mean() - 1.0) > 1e-10)
        throw DomainError("re-parametrization must have unit mean stretch");
    return assemble_state(make_frame(w), chi_prime);
}

WaveState make_state_inner(const Field& w, const EnergyModel& model, double gamma_init) {
    ConformalFrame frame = make_frame(w);
    InnerChiSolution sol = inner_chi_solve(frame, model, gamma_init);
    WaveState state = assemble_state(std::move(frame), std::move(sol.chi_prime));
    state.gamma0 = sol.gamma0;
    state.inner_residual = sol.mean_residual;
    state.inner_iterations = sol.iterations;
    return state;
}

double kinetic_potential_I0(const ConformalFrame& frame, double c2, double g) {
    const std::size_t r = frame.fine_grid();
    double acc1 = 0.0, acc2 = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        acc1 += frame.w_f[i] * frame.cwp_f[i];
        acc2 += frame.w_f[i] * frame.w_f[i] * (1.0 + frame.cwp_f[i]);
    }
    const double a1 = kTwoPi * acc1 / static_cast<double>(r);
    const double a2 = kTwoPi * acc2 / static_cast<double>(r);
    return g / (2.0 * kTwoPi) * a1 * a1 + 0.5 * c2 * a1 - 0.5 * g * a2;
}

double kinetic_potential_I0(const Field& w, double c2, double g) {
    return kinetic_potential_I0(make_frame(w), c2, g);
}

double mass_shift_a0(const Field& w) { return make_frame(w).a0; }

Field grad_I0(const ConformalFrame& frame, double c2, double g) {
    const std::size_t m = frame.grid();
    const std::size_t r = frame.fine_grid();
    std::vector<double> w_one_plus(r), wwp(r);
    for (std::size_t i = 0; i < r; ++i) {
        w_one_plus[i] = frame.w_f[i] * (1.0 + frame.cwp_f[i]);
        wwp[i] = frame.w_f[i] * frame.wp_f[i];
    }
    Field grad = (c2 - 2.0 * g * frame.a0) * frame.cw_prime;
    grad -= g * Field::from_fine_samples(w_one_plus, m);
    grad -= g * hilbert(Field::from_fine_samples(wwp, m));
    return grad;
}

Field grad_I0(const Field& w, double c2, double g) { return grad_I0(make_frame(w), c2, g); }

double elastic(const WaveState& state, const EnergyModel& model) {
    const std::size_t r = state.frame.fine_grid();
    double acc = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        const double chi = state.chi_prime_f[i];
        const double nu = state.frame.omega_f[i] / chi;
        const double mu = nu * state.frame.sigma_f[i];
        acc += chi * model.eval(nu, mu);
    }
    return kTwoPi * acc / static_cast<double>(r);
}

double j0(const WaveState& state, const EnergyModel& model, double c2, double g) {
    return kinetic_potential_I0(state.frame, c2, g) - elastic(state, model);
}

double reduced_j(const Field& w, const EnergyModel& model, double c2, double g) {
    return j0(make_state_inner(w, model), model, c2, g);
}

EnergyFields energy_fields(const WaveState& state, const EnergyModel& model) {
    const std::size_t r = state.frame.fine_grid();
    EnergyFields out;
    out.e_f.resize(r);
    out.e1_f.resize(r);
    out.e2_f.resize(r);
    out.nu_f.resize(r);
    out.mu_f.resize(r);
    out.d_f.resize(r);
    for (std::size_t i = 0; i < r; ++i) {
        const double chi = state.chi_prime_f[i];
        const double nu = state.frame.omega_f[i] / chi;
        const double mu = nu * state.frame.sigma_f[i];
        const double e = model.eval(nu, mu);
        const auto [e1, e2] = model.grad(nu, mu);
        out.nu_f[i] = nu;
        out.mu_f[i] = mu;
        out.e_f[i] = e;
        out.e1_f[i] = e1;
        out.e2_f[i] = e2;
        out.d_f[i] = e - nu * e1 - mu * e2;
    }
    const std::size_t m = state.grid();
    out.e1 = Field::from_fine_samples(out.e1_f, m);
    out.e2 = Field::from_fine_samples(out.e2_f, m);
    return out;
}

Field grad_w_reduced(const WaveState& inner_state, const EnergyModel& model, double c2,
                     double g) {
    const ConformalFrame& frame = inner_state.frame;
    const std::size_t m = frame.grid();
    const std::size_t r = frame.fine_grid();

    const EnergyFields ef = energy_fields(inner_state, model);

    // T = (E2)'; Q = E1 Omega; A = C T - Q. T keeps only the band-limited
    // part of E2 (the perturbation it pairs with is band-limited), while Q
    // must stay at its raw fine-grid values: truncating it before the chain
    // below folds its spectral tail back into the low modes.
    const Field t_field = derivative(ef.e2);
    const std::vector<double> ct_f = hilbert(t_field).values_on(r);
    std::vector<double> a_f(r);
    for (std::size_t i = 0; i < r; ++i)
        a_f[i] = ct_f[i] - ef.e1_f[i] * frame.omega_f[i];

    // L*(A) = w' A / Omega^2 - C( (1 + Cw') A / Omega^2 ), pointwise on the
    // doubled grid, truncated once at the end.
    std::vector<double> direct(r), conj(r);
    for (std::size_t i = 0; i < r; ++i) {
        const double om2 = frame.omega_f[i] * frame.omega_f[i];
        direct[i] = frame.wp_f[i] * a_f[i] / om2;
        conj[i] = (1.0 + frame.cwp_f[i]) * a_f[i] / om2;
    }
    const std::vector<double> conj_h = hilbert_samples(conj);
    for (std::size_t i = 0; i < r; ++i)
        direct[i] -= conj_h[i];
    const Field l_adj = Field::from_fine_samples(direct, m);

    Field grad = grad_I0(frame, c2, g) - derivative(l_adj);
    grad += -grad.mean();
    return grad;
}

Field grad_w_reduced(const Field& w, const EnergyModel& model, double c2, double g) {
    return grad_w_reduced(make_state_inner(w, model), model, c2, g);
}

double elastic_fine_q(const ConformalFrame& frame, const Field& q, const EnergyModel& model) {
    const std::size_t r = frame.fine_grid();
    if (q.size() != frame.grid())
        throw DimensionError("q and profile live on different grids");
    std::vector<double> chi_f = q.values_on(r);
    double mean_exp = 0.0;
    for (double& v : chi_f) {
        v = std::exp(v);
        mean_exp += v;
    }
    mean_exp /= static_cast<double>(r);
    double acc = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        const double chi = chi_f[i] / mean_exp;
        const double nu = frame.omega_f[i] / chi;
        const double mu = nu * frame.sigma_f[i];
        acc += chi * model.eval(nu, mu);
    }
    return kTwoPi * acc / static_cast<double>(r);
}

Field grad_q_fine(const ConformalFrame& frame, const Field& q, const EnergyModel& model) {
    const std::size_t r = frame.fine_grid();
    if (q.size() != frame.grid())
        throw DimensionError("q and profile live on different grids");
    std::vector<double> chi_f = q.values_on(r);
    double mean_exp = 0.0;
    for (double& v : chi_f) {
        v = std::exp(v);
        mean_exp += v;
    }
    mean_exp /= static_cast<double>(r);

    std::vector<double> dchi(r);
    double mean_dchi = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        const double chi = chi_f[i] / mean_exp;
        const double nu = frame.omega_f[i] / chi;
        const double mu = nu * frame.sigma_f[i];
        const double e = model.eval(nu, mu);
        const auto [e1, e2] = model.grad(nu, mu);
        dchi[i] = (e - nu * e1 - mu * e2) * chi;
        mean_dchi += dchi[i];
        chi_f[i] = chi;
    }
    mean_dchi /= static_cast<double>(r);
    for (std::size_t i = 0; i < r; ++i)
        dchi[i] -= mean_dchi * chi_f[i];
    return Field::from_fine_samples(dchi, frame.grid());
}

} // namespace hew
