#include "relmass/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "eig_band.hpp"
#include "relmass/errors.hpp"
#include "relmass/spectrum.hpp"

namespace relmass::oracle {

OracleReport make_report(std::string quantity, double closed_form, double oracle_value,
                         double tolerance, bool tol_is_relative) {
    OracleReport r;
    r.quantity = std::move(quantity);
    r.closed_form = closed_form;
    r.oracle_value = oracle_value;
    r.abs_err = std::abs(closed_form - oracle_value);
    const double scale = std::max(std::abs(closed_form), std::abs(oracle_value));
    r.rel_err = r.abs_err == 0.0 ? 0.0 : r.abs_err / scale;
    r.tolerance = tolerance;
    r.checked = tol_is_relative ? r.rel_err : r.abs_err;
    r.pass = r.checked < tolerance;
    return r;
}

std::vector<LevelPair> grid_hamiltonian_eigs(const PhysicalParams& p, const GridSpec& grid,
                                             int n_levels, Exec exec) {
    check_params(p);
    if (grid.points < 64)
        throw InvalidParameterError("grid needs at least 64 interior points");
    if (!(grid.length > 0.0))
        throw InvalidParameterError("grid length must be positive");
    if (n_levels < 1 || n_levels > grid.points / 8)
        throw InvalidParameterError("n_levels must lie in [1, points/8]");

    using detail::Band2;
    const int m = grid.points;
    const long double dx = static_cast<long double>(grid.length) / (m + 1);
    const long double w = static_cast<long double>(p.hbar) * p.hbar / (dx * dx);
    const long double m0 = p.m0;
    const long double c2 = static_cast<long double>(p.c) * p.c;

    std::vector<LevelPair> out(n_levels);
    // Branches and eigenvalue indices are independent units of work.
    std::array<std::vector<long double>, 2> branch_eigs;
    for (int n_int = 0; n_int <= 1; ++n_int) {
        const long double e_int = n_int == 0 ? 0.0L : static_cast<long double>(p.e1_int);
        const long double c_p2 = 1.0L / (2.0L * m0) - e_int / (2.0L * m0 * m0 * c2);
        const long double c_p4 = -1.0L / (8.0L * m0 * m0 * m0 * c2);

        // P^2 has diagonal 2w, off-diagonal -w; its square has diagonal
        // 4w^2 + (neighbor count) w^2, first off-diagonal -4w^2, second w^2.
        Band2 a;
        a.d0.resize(m);
        a.d1.resize(m - 1);
        a.d2.resize(m - 2);
        for (int i = 0; i < m; ++i) {
            const int neighbors = (i > 0 ? 1 : 0) + (i < m - 1 ? 1 : 0);
            const long double p4_diag = (4.0L + neighbors) * w * w;
            a.d0[i] = c_p2 * (2.0L * w) + c_p4 * p4_diag + e_int;
        }
        for (int i = 0; i < m - 1; ++i)
            a.d1[i] = c_p2 * (-w) + c_p4 * (-4.0L * w * w);
        for (int i = 0; i < m - 2; ++i)
            a.d2[i] = c_p4 * (w * w);

        // The quartic term sends high-frequency grid modes far below zero;
        // the bound levels are the smallest eigenvalues at or above zero.
        const int below_zero = detail::count_below(a, 0.0L);
        auto& eigs = branch_eigs[n_int];
        eigs.resize(n_levels);
        parallel_for(n_levels, exec, [&](std::size_t k) {
            eigs[k] = detail::eigenvalue_by_index(a, below_zero + static_cast<int>(k));
        });
    }
    for (int k = 0; k < n_levels; ++k)
        out[k] = LevelPair{static_cast<double>(branch_eigs[0][k]),
                           static_cast<double>(branch_eigs[1][k])};
    return out;
}

double richardson2(double coarse, double fine, double ratio) {
    const double r2 = ratio * ratio;
    return (r2 * fine - coarse) / (r2 - 1.0);
}

std::complex<double> brute_force_coherence(const PhysicalParams& p,
                                           const evolution::ProductStateAmplitudes& s0,
                                           double t) {
    using C = std::complex<double>;
    // rho_{(N,n),(N',n')}(t) = c_Nn c*_N'n' exp(-i (E_Nn - E_N'n') t / hbar),
    // assembled entry by entry, then traced over the internal index.  This is
    // a deliberately independent path from evolution::reduce_cm.
    double e[2][2];
    for (int N = 0; N <= 1; ++N)
        for (int n = 0; n <= 1; ++n)
            e[N][n] = spectrum::total_energy(p, N, n);

    C rho[2][2][2][2];
    for (int N = 0; N <= 1; ++N)
        for (int n = 0; n <= 1; ++n)
            for (int Np = 0; Np <= 1; ++Np)
                for (int np = 0; np <= 1; ++np) {
                    const double phase = -(e[N][n] - e[Np][np]) * t / p.hbar;
                    rho[N][n][Np][np] = s0.amp(N, n) * std::conj(s0.amp(Np, np)) *
                                        C(std::cos(phase), std::sin(phase));
                }
    C off = 0.0;
    for (int k = 0; k <= 1; ++k)
        off += rho[0][k][1][k];
    return off;
}

std::vector<std::complex<double>> coherence_sweep(const PhysicalParams& p,
                                                  const evolution::ProductStateAmplitudes& s0,
                                                  std::span<const double> ts, Exec exec) {
    std::vector<std::complex<double>> out(ts.size());
    parallel_for(static_cast<std::ptrdiff_t>(ts.size()), exec,
                 [&](std::size_t i) { out[i] = brute_force_coherence(p, s0, ts[i]); });
    return out;
}

double quadrature_norm(const PhysicalParams& p, double t, int points, Exec exec) {
    if (points < 2)
        throw InvalidParameterError("quadrature needs at least 2 points");
    const auto xs = evolution::uniform_grid(p.well_length, points);
    const auto grid = evolution::com_probability_density(p, t, xs, exec);
    // Deterministic serial trapezoid over the (possibly parallel) pointwise fill.
    const double h = p.well_length / (points - 1);
    double sum = 0.5 * (grid.density.front() + grid.density.back());
    for (int i = 1; i < points - 1; ++i)
        sum += grid.density[i];
    return sum * h;
}

double crossterm_integral(const PhysicalParams& p, int points) {
    if (points < 2)
        throw InvalidParameterError("quadrature needs at least 2 points");
    const auto xs = evolution::uniform_grid(p.well_length, points);
    const double h = p.well_length / (points - 1);
    double sum = 0.0;
    for (int i = 0; i < points; ++i) {
        const double f = spectrum::well_wavefunction(p, 0, xs[i]) *
                         spectrum::well_wavefunction(p, 1, xs[i]);
        sum += (i == 0 || i == points - 1) ? 0.5 * f : f;
    }
    return sum * h;
}

EomCheckResult classical_eom_check(const PhysicalParams& p,
                                   const classical::ExternalPotential& pot,
                                   const classical::InternalOscillator& osc, int n_samples,
                                   unsigned seed, Exec exec) {
    if (n_samples < 1)
        throw InvalidParameterError("need at least one sample state");

    // Draw all states up front so the check itself is order-independent.
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    auto draw_signed = [&](double lo, double hi) {
        const double mag = lo + (hi - lo) * uni(rng);
        return uni(rng) < 0.5 ? -mag : mag;
    };
    const double pc = p.m0 * p.c;
    const double rest = p.m0 * p.c * p.c;
    std::vector<classical::ClassicalState> states(n_samples);
    for (auto& s : states) {
        s.t = 0.0;
        s.x = draw_signed(0.3, 1.0);
        s.p = draw_signed(0.2, 1.0) * pc;
        // Internal energy within the perturbative window, split between the
        // coordinate and the momentum; components bounded away from zero so
        // relative errors stay meaningful.
        const double h_int = rest * std::pow(10.0, -5.0 + 3.0 * uni(rng));
        const double q_frac = 0.25 + 0.5 * uni(rng);
        const double sq = uni(rng) < 0.5 ? -1.0 : 1.0;
        const double sp = uni(rng) < 0.5 ? -1.0 : 1.0;
        s.q = sq * std::sqrt(2.0 * h_int * q_frac / (osc.mu * osc.omega_int * osc.omega_int));
        s.p_int = sp * std::sqrt(2.0 * h_int * (1.0 - q_frac) * osc.mu);
    }

    std::vector<std::array<double, 4>> errs(n_samples);
    parallel_for(n_samples, exec, [&](std::size_t i) {
        const auto& s = states[i];
        const auto d = classical::equations_of_motion(p, pot, osc, s);
        const double analytic[4] = {d.dx, d.dp, d.dq, d.dp_int};
        const double base[4] = {s.x, s.p, s.q, s.p_int};
        // dH/dP gives dX/dt; the remaining pairs pick up signs from
        // Hamilton's equations.
        for (int j = 0; j < 4; ++j) {
            const double scale = std::max(std::abs(base[j]), 1.0);
            const double h = 1e-6 * scale;
            auto eval = [&](double delta) {
                classical::ClassicalState sj = s;
                switch (j) {
                    case 0: sj.x += delta; break;
                    case 1: sj.p += delta; break;
                    case 2: sj.q += delta; break;
                    default: sj.p_int += delta; break;
                }
                return classical::total_hamiltonian(p, pot, osc, sj);
            };
            const double fd = (eval(h) - eval(-h)) / (2.0 * h);
            double fd_signed;
            double an;
            switch (j) {
                case 0:  // dH/dX = -dP/dt
                    fd_signed = -fd;
                    an = analytic[1];
                    break;
                case 1:  // dH/dP = dX/dt
                    fd_signed = fd;
                    an = analytic[0];
                    break;
                case 2:  // dH/dq = -dp_int/dt
                    fd_signed = -fd;
                    an = analytic[3];
                    break;
                default:  // dH/dp_int = dq/dt
                    fd_signed = fd;
                    an = analytic[2];
                    break;
            }
            const double diff = std::abs(an - fd_signed);
            const double denom = std::max(std::abs(an), std::abs(fd_signed));
            errs[i][j] = diff == 0.0 ? 0.0 : diff / denom;
        }
    });

    EomCheckResult res{0.0, {0.0, 0.0, 0.0, 0.0}};
    for (const auto& e : errs)
        for (int j = 0; j < 4; ++j) {
            res.per_component[j] = std::max(res.per_component[j], e[j]);
            res.worst_rel_err = std::max(res.worst_rel_err, e[j]);
        }
    return res;
}

std::vector<OracleReport> standard_battery(const PhysicalParams& p, int finest_grid,
                                           int sweep_samples, Exec exec) {
    check_params(p);
    if (finest_grid < 64)
        throw InvalidParameterError("grid must be >= 64");
    if (sweep_samples < 2)
        throw InvalidParameterError("need at least 2 sweep samples");

    std::vector<OracleReport> reports;

    // Level energies: Richardson-extrapolated grid diagonalization against
    // the closed forms.
    const int g_fine = finest_grid;
    const int g_mid = std::max(64, g_fine / 2);
    const auto mid = grid_hamiltonian_eigs(p, {g_mid, p.well_length}, 2, exec);
    const auto fine = grid_hamiltonian_eigs(p, {g_fine, p.well_length}, 2, exec);
    const double ratio = static_cast<double>(g_fine + 1) / (g_mid + 1);
    for (int N = 0; N <= 1; ++N)
        for (int n = 0; n <= 1; ++n) {
            const double coarse_e = n == 0 ? mid[N].e_n0 : mid[N].e_n1;
            const double fine_e = n == 0 ? fine[N].e_n0 : fine[N].e_n1;
            const double extrapolated = richardson2(coarse_e, fine_e, ratio);
            reports.push_back(make_report(
                "E_" + std::to_string(N) + std::to_string(n),
                spectrum::total_energy(p, N, n), extrapolated, 1e-6, /*relative=*/true));
        }

    // Coherence: worst disagreement between the closed form and the
    // brute-force partial trace over a uniform time sweep.
    {
        const double t_max = 2.0 * std::numbers::pi / spectrum::omega_ent(p);
        std::vector<double> ts(sweep_samples);
        for (int i = 0; i < sweep_samples; ++i)
            ts[i] = (i * t_max) / (sweep_samples - 1);
        const auto brute = coherence_sweep(p, evolution::default_initial_state(), ts, exec);
        double worst = 0.0;
        for (int i = 0; i < sweep_samples; ++i)
            worst = std::max(worst, std::abs(evolution::coherence(p, ts[i]) - brute[i]));
        reports.push_back(
            make_report("coherence_max_abs_diff", 0.0, worst, 1e-12, /*relative=*/false));
    }

    // Probability density normalization and wavefunction orthogonality.
    reports.push_back(make_report("pcm_norm_t0", 1.0, quadrature_norm(p, 0.0, 2001, exec), 1e-9,
                                  /*relative=*/false));
    const double t_star = std::numbers::pi / (2.0 * spectrum::omega_ent(p));
    reports.push_back(make_report("pcm_norm_tstar", 1.0, quadrature_norm(p, t_star, 2001, exec),
                                  1e-9, /*relative=*/false));
    reports.push_back(make_report("crossterm_orthogonality", 0.0, crossterm_integral(p, 2001),
                                  1e-12, /*relative=*/false));

    // Classical equations of motion against the finite-difference oracle.
    const classical::InternalOscillator osc{1.0, 1.0};
    const PhysicalParams natural{1.0, 1.0, 1.0, 1.0, 0.0};
    const auto eom_free = classical_eom_check(natural, classical::ExternalPotential::free_motion(),
                                              osc, 100, 20170713, exec);
    reports.push_back(
        make_report("eom_fd_free", 0.0, eom_free.worst_rel_err, 1e-6, /*relative=*/false));
    const auto eom_trap = classical_eom_check(natural, classical::ExternalPotential::trap(2.0, 0.0),
                                              osc, 100, 20170714, exec);
    reports.push_back(
        make_report("eom_fd_trap", 0.0, eom_trap.worst_rel_err, 1e-6, /*relative=*/false));

    // Canonical momentum vs finite differences of the Lagrangian over the
    // (V/c, H_int/M0c^2) grid.
    {
        double worst = 0.0;
        for (int iv = 0; iv < 10; ++iv)
            for (int ih = 0; ih < 10; ++ih) {
                const double v = natural.c * (0.9 * iv / 9.0);
                const double h_int = (natural.m0 * natural.c * natural.c) * (1e-2 * ih / 9.0);
                double q, p_int;
                classical::internal_state_for_energy(osc, h_int, q, p_int);
                const auto rep = classical::verify_legendre(natural, osc, v, q, p_int / osc.mu);
                worst = std::max(worst, rep.abs_residual);
            }
        reports.push_back(
            make_report("legendre_residual", 0.0, worst, 1e-8, /*relative=*/false));
    }

    return reports;
}

}  // namespace relmass::oracle
