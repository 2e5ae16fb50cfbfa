#include "hew/optimizer.hpp"

#include "hew/errors.hpp"
#include "hew/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <limits>
#include <utility>

namespace hew {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

// Degrees of freedom of a zero-mean profile at n modes: cosine amplitudes
// a_1..a_n and sine amplitudes b_2..b_{n-1}. b_1 is pinned to zero to fix the
// translation phase, and the Nyquist mode carries no sine on the 2n grid.
std::size_t dof_count(std::size_t n) { return 2 * n - 2; }

Field field_from_dof(std::span<const double> x, std::size_t n) {
    const std::size_t m = 2 * n;
    std::vector<std::complex<double>> coeffs(n + 1, 0.0);
    for (std::size_t k = 1; k < n; ++k)
        coeffs[k] = 0.5 * x[k - 1];
    for (std::size_t k = 2; k < n; ++k)
        coeffs[k] += std::complex<double>(0.0, -0.5 * x[n + k - 2]);
    coeffs[n] = x[n - 1];
    return Field::from_coeffs(m, std::move(coeffs));
}

std::vector<double> dof_from_field(const Field& w) {
    const std::size_t n = w.size() / 2;
    std::vector<double> x(dof_count(n), 0.0);
    for (std::size_t k = 1; k < n; ++k) {
        x[k - 1] = 2.0 * w.coeff(k).real();
        if (k >= 2)
            x[n + k - 2] = -2.0 * w.coeff(k).imag();
    }
    x[n - 1] = w.coeff(n).real();
    return x;
}

// Partial derivatives of a functional with convention dF.h = 2 pi mean(G h)
// with respect to the dof above, G being the gradient field.
std::vector<double> dof_from_grad_field(const Field& grad) {
    const std::size_t n = grad.size() / 2;
    std::vector<double> g(dof_count(n), 0.0);
    for (std::size_t k = 1; k < n; ++k) {
        g[k - 1] = kTwoPi * grad.coeff(k).real();
        if (k >= 2)
            g[n + k - 2] = -kTwoPi * grad.coeff(k).imag();
    }
    g[n - 1] = 0.5 * kTwoPi * grad.coeff(n).real();
    return g;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += a[i] * b[i];
    return acc;
}

// Mode index carried by each dof: a_1..a_n then b_2..b_{n-1}.
std::size_t dof_mode(std::size_t i, std::size_t n) { return i < n ? i + 1 : i - n + 2; }

// Inverse diagonal seed for the quasi-Newton model. Linearizing the reduced
// functional at the flat state gives a mode-k curvature of
// pi (E22(1,0) k^4 + g - c^2 k) per cosine or sine amplitude; the k^4 growth
// makes an unseeded L-BFGS stall at large n. Magnitudes are floored so the
// negative curvature of the wave-forming low modes still yields a step.
std::vector<double> spectral_h0(std::size_t n, double e22, double g, double c2) {
    std::vector<double> h0(dof_count(n));
    for (std::size_t i = 0; i < h0.size(); ++i) {
        const double k = static_cast<double>(dof_mode(i, n));
        const double curv = e22 * k * k * k * k + g - c2 * k;
        h0[i] = 1.0 / (M_PI * std::max(std::abs(curv), 0.5));
    }
    return h0;
}

struct LbfgsMemory {
    std::deque<std::vector<double>> s, y;
    std::deque<double> rho;
    static constexpr std::size_t kHistory = 10;

    void push(std::vector<double> si, std::vector<double> yi) {
        const double sy = dot(si, yi);
        if (!(sy > 1e-30))
            return; // skip pairs losing curvature
        s.push_back(std::move(si));
        y.push_back(std::move(yi));
        rho.push_back(1.0 / sy);
        if (s.size() > kHistory) {
            s.pop_front();
            y.pop_front();
            rho.pop_front();
        }
    }

    void clear() {
        s.clear();
        y.clear();
        rho.clear();
    }

    // Two-loop recursion with diagonal seed h0: p = -H grad. The scale
    // correction gamma is measured in the seeded metric so the newest pair
    // still calibrates the overall step size.
    std::vector<double> direction(std::span<const double> grad,
                                  std::span<const double> h0) const {
        std::vector<double> q(grad.begin(), grad.end());
        const std::size_t k = s.size();
        std::vector<double> alpha(k);
        for (std::size_t i = k; i-- > 0;) {
            alpha[i] = rho[i] * dot(s[i], q);
            for (std::size_t j = 0; j < q.size(); ++j)
                q[j] -= alpha[i] * y[i][j];
        }
        double gamma = 1.0;
        if (k > 0) {
            double yh0y = 0.0;
            for (std::size_t j = 0; j < q.size(); ++j)
                yh0y += y[k - 1][j] * h0[j] * y[k - 1][j];
            gamma = dot(s[k - 1], y[k - 1]) / yh0y;
        }
        for (std::size_t j = 0; j < q.size(); ++j)
            q[j] *= gamma * h0[j];
        for (std::size_t i = 0; i < k; ++i) {
            const double beta = rho[i] * dot(y[i], q);
            for (std::size_t j = 0; j < q.size(); ++j)
                q[j] += (alpha[i] - beta) * s[i][j];
        }
        for (double& v : q)
            v = -v;
        return q;
    }
};

struct Evaluation {
    WaveState state;
    double j = 0.0; // reduced objective
};

} // namespace

Field initial_guess(std::size_t n, double eps0) {
    if (n < 2)
        throw ConfigError("mode count must be at least 2");
    return Field::cosine(2 * n, 1, eps0);
}

SolveResult maximize(const EnergyModel& model, const SolveConfig& config,
                     std::optional<Field> w_init) {
    if (config.n < 2)
        throw ConfigError("mode count must be at least 2");
    if (!(config.tol_grad > 0.0))
        throw ConfigError("gradient tolerance must be positive");
    if (!(config.c2 > 0.0))
        throw ConfigError("wave speed squared must be positive");

    const HypothesisReport checks =
        check_hypotheses(model, config.c2, config.g, config.mu_star);
    if (config.enforce_gates && !checks.mandatory_pass())
        throw DomainError(
            "stored energy fails a structural check (evenness, normalization or convexity)");
    bool below_threshold = false;
    if (const auto* h = checks.find("transverse-speed-threshold"))
        below_threshold = h->status != CheckStatus::pass;

    const std::size_t n = config.n;
    const std::size_t m = 2 * n;

    Field w0 = w_init ? std::move(*w_init) : initial_guess(n, config.eps0);
    if (w0.size() != m)
        w0 = Field::from_fine_samples(w0.values_on(std::max(w0.size(), m)), m);
    w0 += -w0.mean();

    double gamma_warm = std::numeric_limits<double>::quiet_NaN();
    auto evaluate = [&](std::span<const double> x) {
        Field w = field_from_dof(x, n);
        WaveState state = make_state_inner(w, model, gamma_warm);
        const double j = j0(state, model, config.c2, config.g);
        return Evaluation{std::move(state), j};
    };

    std::vector<double> x = dof_from_field(w0);
    Evaluation cur = evaluate(x);
    gamma_warm = cur.state.gamma0;

    const std::vector<double> h0 = spectral_h0(n, model.hess(1.0, 0.0)[2], config.g, config.c2);
    LbfgsMemory memory;
    bool restart_used = false;
    bool converged = false;
    int iterations = 0;
    double grad_sup = std::numeric_limits<double>::infinity();
    Field grad_field;
    std::vector<double> grad_x;

    auto refresh_gradient = [&]() {
        grad_field = grad_w_reduced(cur.state, model, config.c2, config.g);
        grad_sup = grad_field.sup_norm();
        grad_x = dof_from_grad_field(grad_field);
        for (double& v : grad_x)
            v = -v; // minimize f = -J
    };
    refresh_gradient();

    for (; iterations < config.max_iter; ++iterations) {
        if (grad_sup <= config.tol_grad) {
            converged = true;
            break;
        }

        std::vector<double> p = memory.direction(grad_x, h0);
        double dir_deriv = dot(p, grad_x);
        if (!(dir_deriv < 0.0)) {
            memory.clear();
            for (std::size_t i = 0; i < p.size(); ++i)
                p[i] = -h0[i] * grad_x[i];
            dir_deriv = dot(p, grad_x);
        }

        const double f_cur = -cur.j;
        const double noise = 1e-13 * (1.0 + std::abs(f_cur));
        double alpha = 1.0;
        bool accepted = false;
        Evaluation trial;
        std::vector<double> x_trial(x.size());
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t i = 0; i < x.size(); ++i)
                x_trial[i] = x[i] + alpha * p[i];
            bool feasible = true;
            try {
                trial = evaluate(x_trial);
                double min_omega = trial.state.frame.omega_f[0];
                for (double v : trial.state.frame.omega_f)
                    min_omega = std::min(min_omega, v);
                if (min_omega < 1e-6)
                    feasible = false;
            } catch (const NumericError&) {
                feasible = false;
            } catch (const DomainError&) {
                feasible = false;
            }
            if (feasible && -trial.j <= f_cur + 1e-4 * alpha * dir_deriv + noise) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
            if (alpha < 1e-14)
                break;
        }

        if (!accepted) {
            if (!restart_used && !memory.s.empty()) {
                restart_used = true;
                memory.clear();
                continue;
            }
            break; // stalled: keep the current point, converged stays false
        }

        std::vector<double> s_vec(x.size()), y_vec(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            s_vec[i] = x_trial[i] - x[i];
        x = x_trial;
        cur = std::move(trial);
        gamma_warm = cur.state.gamma0;

        std::vector<double> grad_prev = std::move(grad_x);
        refresh_gradient();
        for (std::size_t i = 0; i < x.size(); ++i)
            y_vec[i] = grad_x[i] - grad_prev[i];
        memory.push(std::move(s_vec), std::move(y_vec));
    }

    SolveResult result;
    result.j0_value = cur.j;
    result.grad_sup = grad_sup;
    result.iterations = iterations;
    result.converged = converged;
    result.below_threshold = below_threshold;

    double w_min = cur.state.frame.w_f[0], w_max = w_min;
    for (double v : cur.state.frame.w_f) {
        w_min = std::min(w_min, v);
        w_max = std::max(w_max, v);
    }
    result.height = w_max - w_min;
    result.trivial = result.height < 1e-8;

    result.geometry = check_bounds(cur.state.w());
    result.residuals = compute_residuals(cur.state, model, config.c2, config.g);
    result.state = std::move(cur.state);
    return result;
}

std::vector<SweepEntry> continuation_sweep(const EnergyModel& model, SolveConfig base,
                                           std::span<const double> c2_values,
                                           bool warm_start) {
    std::vector<SweepEntry> entries;
    entries.reserve(c2_values.size());
    std::optional<Field> carry;
    for (double c2 : c2_values) {
        SweepEntry entry;
        entry.c2 = c2;
        SolveConfig cfg = base;
        cfg.c2 = c2;
        try {
            SolveResult res = maximize(model, cfg, carry);
            if (warm_start && res.converged && !res.trivial)
                carry = res.state.w();
            entry.solved = true;
            entry.result = std::move(res);
        } catch (const std::exception& e) {
            entry.error = e.what();
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

} // namespace hew
