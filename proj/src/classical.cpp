#include "relmass/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "relmass/dop853.hpp"

namespace relmass::classical {

namespace {

void check_state(const ClassicalState& s) {
    if (!std::isfinite(s.t) || !std::isfinite(s.x) || !std::isfinite(s.p) ||
        !std::isfinite(s.q) || !std::isfinite(s.p_int))
        throw InvalidParameterError("classical state must be finite");
}

void check_osc(const InternalOscillator& osc) {
    if (!(osc.omega_int > 0.0) || !(osc.mu > 0.0))
        throw InvalidParameterError("oscillator frequency and mass must be positive");
}

// E0 = sqrt(M0^2 c^4 + P^2 c^2), the free point-particle energy.
double free_energy(const PhysicalParams& p, double momentum) {
    const double mc2 = p.m0 * p.c * p.c;
    return std::sqrt(mc2 * mc2 + momentum * momentum * p.c * p.c);
}

}  // namespace

double internal_hamiltonian(const InternalOscillator& osc, double q, double p_int) {
    return p_int * p_int / (2.0 * osc.mu) + 0.5 * osc.mu * osc.omega_int * osc.omega_int * q * q;
}

double total_hamiltonian(const PhysicalParams& p, const ExternalPotential& pot,
                         const InternalOscillator& osc, const ClassicalState& s) {
    const double e0 = free_energy(p, s.p);
    const double mc2 = p.m0 * p.c * p.c;
    return e0 + pot.value(s.x) + mc2 * internal_hamiltonian(osc, s.q, s.p_int) / e0;
}

double com_velocity(const PhysicalParams& p, const InternalOscillator& osc,
                    const ClassicalState& s) {
    const double e0 = free_energy(p, s.p);
    const double mc2 = p.m0 * p.c * p.c;
    const double h_int = internal_hamiltonian(osc, s.q, s.p_int);
    return s.p * p.c * p.c / e0 * (1.0 - mc2 * h_int / (e0 * e0));
}

Derivatives equations_of_motion(const PhysicalParams& p, const ExternalPotential& pot,
                                const InternalOscillator& osc, const ClassicalState& s) {
    const double e0 = free_energy(p, s.p);
    const double mc2 = p.m0 * p.c * p.c;
    const double gamma_inv = mc2 / e0;
    Derivatives d;
    d.dx = com_velocity(p, osc, s);
    d.dp = -pot.gradient(s.x);
    d.dq = gamma_inv * s.p_int / osc.mu;
    d.dp_int = -gamma_inv * osc.mu * osc.omega_int * osc.omega_int * s.q;
    return d;
}

Trajectory integrate(const PhysicalParams& p, const ExternalPotential& pot,
                     const InternalOscillator& osc, const ClassicalState& s0, double t_end,
                     double rel_tol, int n_samples) {
    check_params(p);
    check_osc(osc);
    check_state(s0);
    if (!(t_end > s0.t))
        throw InvalidParameterError("t_end must exceed the initial time");
    if (!(rel_tol > 1e-14 && rel_tol < 1e-3))
        throw InvalidParameterError("rel_tol must lie in (1e-14, 1e-3)");
    if (n_samples < 2)
        throw InvalidParameterError("need at least 2 output samples");

    using Stepper = ode::Dop853<4>;
    auto rhs = [&](double, const double* y, double* f) {
        const ClassicalState s{0.0, y[0], y[1], y[2], y[3]};
        const Derivatives d = equations_of_motion(p, pot, osc, s);
        f[0] = d.dx;
        f[1] = d.dp;
        f[2] = d.dq;
        f[3] = d.dp_int;
    };
    Stepper stepper(rhs, rel_tol);
    stepper.init(s0.t, {s0.x, s0.p, s0.q, s0.p_int});

    Trajectory traj;
    traj.samples.reserve(n_samples);
    traj.samples.push_back(s0);

    const double h0 = total_hamiltonian(p, pot, osc, s0);
    double max_dev = 0.0;
    auto note_energy = [&](const ClassicalState& s) {
        max_dev = std::max(max_dev, std::abs(total_hamiltonian(p, pot, osc, s) - h0));
    };

    const double span = t_end - s0.t;
    const double t_eps = 32.0 * std::numeric_limits<double>::epsilon() *
                         std::max({1.0, std::abs(t_end), std::abs(s0.t)});
    auto sample_time = [&](int k) {
        return k == n_samples - 1 ? t_end : s0.t + (k * span) / (n_samples - 1);
    };
    int next_sample = 1;
    Stepper::State ys{};
    while (next_sample < n_samples) {
        if (t_end - stepper.time() <= t_eps) {
            // Arrived (up to rounding); emit what is left from the last interval.
            for (; next_sample < n_samples; ++next_sample) {
                stepper.dense(std::min(sample_time(next_sample), stepper.time()), ys);
                traj.samples.push_back(
                    ClassicalState{sample_time(next_sample), ys[0], ys[1], ys[2], ys[3]});
            }
            break;
        }
        stepper.limit_step(t_end);
        if (!stepper.take_step()) {
            const auto& y = stepper.state();
            throw IntegrationFailureError(
                "step size underflow at t = " + std::to_string(stepper.time()),
                ClassicalState{stepper.time(), y[0], y[1], y[2], y[3]});
        }
        const auto& y = stepper.state();
        note_energy(ClassicalState{stepper.time(), y[0], y[1], y[2], y[3]});

        while (next_sample < n_samples && sample_time(next_sample) <= stepper.time()) {
            stepper.dense(sample_time(next_sample), ys);
            traj.samples.push_back(
                ClassicalState{sample_time(next_sample), ys[0], ys[1], ys[2], ys[3]});
            ++next_sample;
        }
    }
    traj.energy_drift = max_dev / std::abs(h0);
    return traj;
}

double measured_internal_period(const Trajectory& traj) {
    const auto& s = traj.samples;
    // Linearly interpolated zero-crossing times of q, split by direction; the
    // total sign-change count gates whether there is enough data at all.
    std::vector<double> ups, downs;
    int sign_changes = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        const double q0 = s[i - 1].q, q1 = s[i].q;
        if (q0 == 0.0 || q0 * q1 >= 0.0)
            continue;
        ++sign_changes;
        const double frac = -q0 / (q1 - q0);
        const double tc = s[i - 1].t + frac * (s[i].t - s[i - 1].t);
        (q0 < 0.0 ? ups : downs).push_back(tc);
    }
    const auto& cross = ups.size() >= downs.size() ? ups : downs;
    if (sign_changes < 3 || cross.size() < 2)
        throw InsufficientDataError("need at least 3 zero crossings of q to measure a period");

    // Least-squares slope of crossing time vs crossing index averages the
    // per-crossing interpolation error over all observed periods.
    const double m = static_cast<double>(cross.size());
    double mean_j = 0.5 * (m - 1.0), mean_t = 0.0;
    for (double u : cross)
        mean_t += u;
    mean_t /= m;
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < cross.size(); ++j) {
        const double dj = static_cast<double>(j) - mean_j;
        num += dj * (cross[j] - mean_t);
        den += dj * dj;
    }
    return num / den;
}

double dilation_factor(const Trajectory& traj, const InternalOscillator& osc) {
    check_osc(osc);
    const double rest_period = 2.0 * std::numbers::pi / osc.omega_int;
    return measured_internal_period(traj) / rest_period;
}

double mean_com_velocity(const PhysicalParams& p, const InternalOscillator& osc,
                         const Trajectory& traj) {
    if (traj.samples.empty())
        throw InsufficientDataError("empty trajectory");
    double sum = 0.0;
    for (const auto& s : traj.samples)
        sum += com_velocity(p, osc, s);
    return sum / static_cast<double>(traj.samples.size());
}

LegendreReport verify_legendre(const PhysicalParams& p, const InternalOscillator& osc, double v,
                               double q, double q_prime) {
    check_params(p);
    check_osc(osc);
    if (!(std::abs(v) < p.c))
        throw InvalidVelocityError("|v| must be below c");

    const double mc2 = p.m0 * p.c * p.c;
    // Rest-frame Lagrangian of the oscillator plus the rest-mass term; primes
    // denote proper-time derivatives.
    auto l_rest = [&](double qq, double qp) {
        return -mc2 + 0.5 * osc.mu * qp * qp -
               0.5 * osc.mu * osc.omega_int * osc.omega_int * qq * qq;
    };
    const double root0 = std::sqrt(1.0 - v * v / (p.c * p.c));
    // Canonical momentum differentiates L at fixed coordinate-time velocity
    // qdot = q' dtau/dt, so hold qdot fixed while varying V.
    const double qdot = q_prime * root0;
    auto lagrangian = [&](double vv) {
        const double root = std::sqrt(1.0 - vv * vv / (p.c * p.c));
        return l_rest(q, qdot / root) * root;
    };
    const double h = std::min(1e-5 * p.c, 0.5 * (p.c - std::abs(v)));
    LegendreReport rep;
    rep.p_numeric = (lagrangian(v + h) - lagrangian(v - h)) / (2.0 * h);
    const double e_rest = mc2 + internal_hamiltonian(osc, q, osc.mu * q_prime);
    rep.p_analytic = e_rest / (p.c * p.c) * v / root0;
    rep.abs_residual = std::abs(rep.p_analytic - rep.p_numeric);
    const double scale = std::max(std::abs(rep.p_analytic), std::abs(rep.p_numeric));
    rep.rel_residual = rep.abs_residual == 0.0 ? 0.0 : rep.abs_residual / scale;
    return rep;
}

void internal_state_for_energy(const InternalOscillator& osc, double h_int, double& q,
                               double& p_int) {
    check_osc(osc);
    if (h_int < 0.0)
        throw InvalidParameterError("internal energy must be non-negative");
    q = std::sqrt(h_int / (osc.mu * osc.omega_int * osc.omega_int));
    p_int = std::sqrt(h_int * osc.mu);
}

std::vector<Preset> shipped_presets() {
    // Natural units M0 = c = 1; the oscillator carries H_int = 1e-4 M0 c^2,
    // small enough that first-order time-dilation statements hold to ~1e-5.
    const PhysicalParams p{1.0, 1.0, 1.0, 1.0, 0.0};
    const InternalOscillator osc{1.0, 1.0};
    double q0, pi0;
    internal_state_for_energy(osc, 1e-4, q0, pi0);

    std::vector<Preset> presets;
    presets.push_back({"rest", p, ExternalPotential::free_motion(), osc,
                       ClassicalState{0.0, 0.0, 0.0, q0, pi0}});
    for (double mom : {0.3, 0.6, 1.0}) {
        presets.push_back({"boost-" + std::to_string(mom).substr(0, 3), p,
                           ExternalPotential::free_motion(), osc,
                           ClassicalState{0.0, 0.0, mom, q0, pi0}});
    }
    presets.push_back({"trap", p, ExternalPotential::trap(1.0, 0.0), osc,
                       ClassicalState{0.0, 0.2, 0.3, q0, pi0}});
    return presets;
}

}  // namespace relmass::classical
