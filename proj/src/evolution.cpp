#include "relmass/evolution.hpp"

#include <cmath>

#include "relmass/errors.hpp"
#include "relmass/spectrum.hpp"

namespace relmass::evolution {

double ProductStateAmplitudes::norm_sq() const {
    double s = 0.0;
    for (const auto& a : c)
        s += std::norm(a);
    return s;
}

ProductStateAmplitudes default_initial_state() {
    ProductStateAmplitudes s;
    s.c.fill(Complex(0.5, 0.0));
    s.t = 0.0;
    return s;
}

ProductStateAmplitudes evolve_amplitudes(const PhysicalParams& p,
                                         const ProductStateAmplitudes& s0, double t) {
    ProductStateAmplitudes s = s0;
    s.t = t;
    for (int n_cm = 0; n_cm <= 1; ++n_cm)
        for (int n_int = 0; n_int <= 1; ++n_int) {
            const double phase = -spectrum::total_energy(p, n_cm, n_int) * t / p.hbar;
            s.amp(n_cm, n_int) = s0.amp(n_cm, n_int) * std::polar(1.0, phase);
        }
    return s;
}

DensityOperator4 density_operator(const ProductStateAmplitudes& s) {
    DensityOperator4 rho;
    rho.t = s.t;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            rho.rho[i][j] = s.c[i] * std::conj(s.c[j]);
    return rho;
}

ReducedDensityMatrix reduce_cm(const DensityOperator4& rho) {
    ReducedDensityMatrix red;
    red.t = rho.t;
    for (int K = 0; K <= 1; ++K)
        for (int Kp = 0; Kp <= 1; ++Kp) {
            Complex sum = 0.0;
            for (int k = 0; k <= 1; ++k)
                sum += rho.rho[2 * K + k][2 * Kp + k];
            red.rho_cm[K][Kp] = sum;
        }
    return red;
}

Complex coherence(const PhysicalParams& p, double t) {
    const double w_cm = spectrum::omega_cm(p);
    const double w_ent = spectrum::omega_ent(p);
    return 0.5 * std::cos(w_ent * t) * std::polar(1.0, w_cm * t);
}

double visibility(const PhysicalParams& p, double t) {
    return std::abs(std::cos(spectrum::omega_ent(p) * t));
}

double purity(const ReducedDensityMatrix& red) {
    double s = 0.0;
    for (int i = 0; i <= 1; ++i)
        for (int j = 0; j <= 1; ++j)
            s += std::real(red.rho_cm[i][j] * red.rho_cm[j][i]);
    return s;
}

double com_density_at(const PhysicalParams& p, double t, double x) {
    const double psi0 = spectrum::well_wavefunction(p, 0, x);
    const double psi1 = spectrum::well_wavefunction(p, 1, x);
    const double cross = std::cos(spectrum::omega_ent(p) * t) * std::cos(spectrum::omega_cm(p) * t);
    return 0.5 * (psi0 * psi0 + psi1 * psi1 + 2.0 * psi0 * psi1 * cross);
}

ComProbabilityGrid com_probability_density(const PhysicalParams& p, double t,
                                           std::span<const double> xs, Exec exec) {
    check_params(p);
    for (double x : xs)
        if (x < 0.0 || x > p.well_length)
            throw InvalidParameterError("grid point outside [0, L]");
    ComProbabilityGrid grid;
    grid.t = t;
    grid.xs.assign(xs.begin(), xs.end());
    grid.density.resize(xs.size());
    // The cross-term time factor is shared by all points; hoist it so the
    // parallel fill does pure per-point work.
    const double cross = std::cos(spectrum::omega_ent(p) * t) * std::cos(spectrum::omega_cm(p) * t);
    const double* xp = grid.xs.data();
    double* dp = grid.density.data();
    parallel_for(static_cast<std::ptrdiff_t>(xs.size()), exec, [&](std::size_t i) {
        const double psi0 = spectrum::well_wavefunction(p, 0, xp[i]);
        const double psi1 = spectrum::well_wavefunction(p, 1, xp[i]);
        dp[i] = 0.5 * (psi0 * psi0 + psi1 * psi1 + 2.0 * psi0 * psi1 * cross);
    });
    return grid;
}

std::vector<double> uniform_grid(double length, int n) {
    if (n < 2)
        throw InvalidParameterError("grid needs at least 2 points");
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i)
        xs[i] = (i * length) / (n - 1);
    return xs;
}

double interference_peak_position(const PhysicalParams& p, double t) {
    check_params(p);
    // Seed from a dense scan, then golden-section refine the bracket.
    const int n = 2001;
    const auto xs = uniform_grid(p.well_length, n);
    int best = 0;
    double best_val = -1.0;
    for (int i = 0; i < n; ++i) {
        const double v = com_density_at(p, t, xs[i]);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    double a = xs[best > 0 ? best - 1 : 0];
    double b = xs[best < n - 1 ? best + 1 : n - 1];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = com_density_at(p, t, x1);
    double f2 = com_density_at(p, t, x2);
    for (int iter = 0; iter < 200 && (b - a) > 1e-13 * p.well_length; ++iter) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = com_density_at(p, t, x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = com_density_at(p, t, x1);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace relmass::evolution
