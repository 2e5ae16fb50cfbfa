#include "hew/residuals.hpp"

#include "hew/errors.hpp"
#include "hew/spectral.hpp"

#include <cmath>
#include <vector>

namespace hew {

namespace {

void require_same_grid(const ConformalFrame& frame, const Field& f) {
    if (f.size() != frame.grid())
        throw DimensionError("field and frame live on different grids");
}

} // namespace

Field op_L(const ConformalFrame& frame, const Field& u) {
    require_same_grid(frame, u);
    const std::size_t r = frame.fine_grid();
    const std::vector<double> u_f = u.values_on(r);
    const std::vector<double> cu_f = hilbert_samples(u_f);
    std::vector<double> out(r);
    for (std::size_t i = 0; i < r; ++i) {
        const double om2 = frame.omega_f[i] * frame.omega_f[i];
        out[i] = (frame.wp_f[i] * u_f[i] + (1.0 + frame.cwp_f[i]) * cu_f[i]) / om2;
    }
    return Field::from_fine_samples(out, frame.grid());
}

Field op_L_inverse(const ConformalFrame& frame, const Field& v) {
    require_same_grid(frame, v);
    const std::size_t r = frame.fine_grid();
    const std::vector<double> v_f = v.values_on(r);
    const std::vector<double> cv_f = hilbert_samples(v_f);
    std::vector<double> out(r);
    for (std::size_t i = 0; i < r; ++i)
        out[i] = frame.wp_f[i] * v_f[i] - (1.0 + frame.cwp_f[i]) * cv_f[i];
    return Field::from_fine_samples(out, frame.grid());
}

Field op_L_adjoint(const ConformalFrame& frame, const Field& f) {
    require_same_grid(frame, f);
    const std::size_t r = frame.fine_grid();
    const std::vector<double> f_f = f.values_on(r);
    std::vector<double> direct(r), conj(r);
    for (std::size_t i = 0; i < r; ++i) {
        const double om2 = frame.omega_f[i] * frame.omega_f[i];
        direct[i] = frame.wp_f[i] * f_f[i] / om2;
        conj[i] = (1.0 + frame.cwp_f[i]) * f_f[i] / om2;
    }
    const std::vector<double> conj_h = hilbert_samples(conj);
    for (std::size_t i = 0; i < r; ++i)
        direct[i] -= conj_h[i];
    return Field::from_fine_samples(direct, frame.grid());
}

Field op_L_inv_adjoint(const ConformalFrame& frame, const Field& f) {
    require_same_grid(frame, f);
    const std::size_t r = frame.fine_grid();
    const std::vector<double> f_f = f.values_on(r);
    std::vector<double> direct(r), conj(r);
    for (std::size_t i = 0; i < r; ++i) {
        direct[i] = frame.wp_f[i] * f_f[i];
        conj[i] = (1.0 + frame.cwp_f[i]) * f_f[i];
    }
    const std::vector<double> conj_h = hilbert_samples(conj);
    for (std::size_t i = 0; i < r; ++i)
        direct[i] += conj_h[i];
    return Field::from_fine_samples(direct, frame.grid());
}

double riemann_hilbert_gap(const ConformalFrame& frame, const Field& f, double a) {
    require_same_grid(frame, f);
    const std::size_t r = frame.fine_grid();
    const std::vector<double> f_f = f.values_on(r);
    std::vector<double> fwp(r);
    for (std::size_t i = 0; i < r; ++i)
        fwp[i] = f_f[i] * frame.wp_f[i];
    const std::vector<double> h = hilbert_samples(fwp);
    double sup = 0.0;
    for (std::size_t i = 0; i < r; ++i)
        sup = std::max(sup, std::abs(h[i] + f_f[i] * (1.0 + frame.cwp_f[i]) - a));
    return sup;
}

Field pressure(const WaveState& state, const EnergyModel& model) {
    const ConformalFrame& frame = state.frame;
    const std::size_t m = frame.grid();
    const std::size_t r = frame.fine_grid();

    const EnergyFields ef = energy_fields(state, model);
    const Field d2 = derivative(ef.e2);
    const std::vector<double> d2_f = d2.values_on(r);
    std::vector<double> ratio(r);
    for (std::size_t i = 0; i < r; ++i)
        ratio[i] = d2_f[i] / frame.omega_f[i];
    const Field inner = Field::from_fine_samples(ratio, m);
    const std::vector<double> dd_f = derivative(inner).values_on(r);
    std::vector<double> p_f(r);
    for (std::size_t i = 0; i < r; ++i)
        p_f[i] = dd_f[i] / frame.omega_f[i] - frame.sigma_f[i] * ef.e1_f[i];
    return Field::from_fine_samples(p_f, m);
}

double residual_euler_chi(const WaveState& state, const EnergyModel& model, double* gamma_out) {
    const std::size_t m = state.grid();
    std::vector<double> d(m);
    double mean = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double nu = state.frame.omega_m[j] / state.chi_prime[j];
        const double mu = nu * state.frame.sigma_m[j];
        const double e = model.eval(nu, mu);
        const auto [e1, e2] = model.grad(nu, mu);
        d[j] = e - nu * e1 - mu * e2;
        mean += d[j];
    }
    mean /= static_cast<double>(m);
    double var = 0.0;
    for (double v : d)
        var += (v - mean) * (v - mean);
    if (gamma_out)
        *gamma_out = mean;
    return std::sqrt(var / static_cast<double>(m));
}

double residual_euler_w(const WaveState& state, const EnergyModel& model, double c2, double g) {
    return grad_w_reduced(state, model, c2, g).sup_norm();
}

double residual_euler_w_primitive(const WaveState& state, const EnergyModel& model, double c2,
                                  double g) {
    const ConformalFrame& frame = state.frame;
    const std::size_t m = frame.grid();
    const std::size_t r = frame.fine_grid();

    const EnergyFields ef = energy_fields(state, model);
    const Field gi = grad_I0(frame, c2, g);
    const double lambda0 = gi.mean(); // equals g a0

    // m0 = (L^-1)* of the primitive of the projected gradient.
    const Antiderivative prim = antiderivative_zero_start(gi - Field::constant(m, lambda0));
    const Field m0 = op_L_inv_adjoint(frame, prim.periodic);

    // G integrates m0 + Omega E1 with its mean removed; the residual compares
    // C E2 against G - [G].
    std::vector<double> q_f(r);
    for (std::size_t i = 0; i < r; ++i)
        q_f[i] = ef.e1_f[i] * frame.omega_f[i];
    const Field x = m0 + Field::from_fine_samples(q_f, m);
    const Antiderivative big_g =
        antiderivative_zero_start(x - Field::constant(m, x.mean()));
    Field target = big_g.periodic;
    target += -target.mean();

    const Field lhs = hilbert(ef.e2);
    return (lhs - target).sup_norm();
}

double residual_material(const WaveState& state, const EnergyModel& model) {
    const ConformalFrame& frame = state.frame;
    const std::size_t r = frame.fine_grid();
    const EnergyFields ef = energy_fields(state, model);
    const std::vector<double> d1_f = derivative(ef.e1).values_on(r);
    const std::vector<double> d2_f = derivative(ef.e2).values_on(r);
    double sup = 0.0;
    for (std::size_t i = 0; i < r; ++i)
        sup = std::max(sup, std::abs(d1_f[i] + frame.sigma_f[i] * d2_f[i]));
    return sup;
}

double residual_dynamic(const WaveState& state, const EnergyModel& model, double c2, double g,
                        double* rh_out) {
    const ConformalFrame& frame = state.frame;
    const std::size_t r = frame.fine_grid();
    const Field p = pressure(state, model);
    const std::vector<double> p_f = p.values_on(r);

    double sup = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        const double lhs = 1.0 - (2.0 * g / c2) * (frame.a0 + frame.w_f[i]) -
                           (2.0 / c2) * p_f[i];
        const double om2 = frame.omega_f[i] * frame.omega_f[i];
        sup = std::max(sup, std::abs(lhs - 1.0 / om2));
    }

    if (rh_out) {
        Field f = -(2.0 * g / c2) * frame.w - (2.0 / c2) * p;
        f += 1.0 - (2.0 * g / c2) * frame.a0;
        *rh_out = riemann_hilbert_gap(frame, f, 1.0);
    }
    return sup;
}

ResidualReport compute_residuals(const WaveState& state, const EnergyModel& model, double c2,
                                 double g) {
    ResidualReport report;
    report.euler_chi_std = residual_euler_chi(state, model, &report.gamma0);
    report.euler_w_sup = residual_euler_w(state, model, c2, g);
    report.euler_w_primitive_sup = residual_euler_w_primitive(state, model, c2, g);
    report.material_sup = residual_material(state, model);
    report.dynamic_sup = residual_dynamic(state, model, c2, g, &report.rh_sup);
    report.pressure = pressure(state, model);
    return report;
}

} // namespace hew
