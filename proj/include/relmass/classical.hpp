#pragma once

#include <string>
#include <vector>

#include "relmass/errors.hpp"
#include "relmass/params.hpp"

namespace relmass::classical {

// Concrete internal system: a 1-D harmonic oscillator, the simplest periodic
// "clock" that makes time dilation measurable.
struct InternalOscillator {
    double omega_int;  // angular frequency
    double mu;         // effective mass
};

struct ExternalPotential {
    enum class Kind { free, harmonic_trap };
    Kind kind = Kind::free;
    double k = 0.0;       // trap stiffness (>= 0)
    double center = 0.0;  // trap center

    static ExternalPotential free_motion() { return {}; }
    static ExternalPotential trap(double stiffness, double center) {
        return {Kind::harmonic_trap, stiffness, center};
    }

    double value(double x) const {
        return kind == Kind::free ? 0.0 : 0.5 * k * (x - center) * (x - center);
    }
    double gradient(double x) const { return kind == Kind::free ? 0.0 : k * (x - center); }
};

// Phase-space point of the coupled system.
struct ClassicalState {
    double t;      // coordinate time
    double x;      // center of mass position X
    double p;      // total momentum P
    double q;      // internal coordinate
    double p_int;  // internal momentum
};

struct Trajectory {
    std::vector<ClassicalState> samples;  // strictly increasing in t
    double energy_drift = 0.0;            // max |H(t) - H(0)| / |H(0)| over accepted steps
};

// Step-size underflow during integration; carries the last good state.
class IntegrationFailureError : public Error {
public:
    IntegrationFailureError(const std::string& msg, const ClassicalState& s)
        : Error(msg), last_state(s) {}
    ClassicalState last_state;
};

double internal_hamiltonian(const InternalOscillator& osc, double q, double p_int);

// H = sqrt(M0^2 c^4 + P^2 c^2) + U_ext(X) + M0 c^2 H_int / sqrt(M0^2 c^4 + P^2 c^2)
double total_hamiltonian(const PhysicalParams& p, const ExternalPotential& pot,
                         const InternalOscillator& osc, const ClassicalState& s);

// dX/dt = P c^2 / E0 * (1 - M0 c^2 H_int / E0^2), the exact dH/dP.
double com_velocity(const PhysicalParams& p, const InternalOscillator& osc,
                    const ClassicalState& s);

struct Derivatives {
    double dx;
    double dp;
    double dq;
    double dp_int;
};

// Exact Hamilton's equations of the coupled Hamiltonian.  The internal pair
// carries the common factor M0 c^2 / E0, the inverse Lorentz factor of the
// center of mass, which is where the time dilation comes from.
Derivatives equations_of_motion(const PhysicalParams& p, const ExternalPotential& pot,
                                const InternalOscillator& osc, const ClassicalState& s);

// Adaptive integration from s0.t to t_end with n_samples uniform output
// samples (endpoints included) interpolated from the integrator's dense
// output.  rel_tol must lie in (1e-14, 1e-3).
Trajectory integrate(const PhysicalParams& p, const ExternalPotential& pot,
                     const InternalOscillator& osc, const ClassicalState& s0, double t_end,
                     double rel_tol, int n_samples);

// Coordinate-time period of the internal oscillation, from linearly
// interpolated upward zero crossings of q averaged by least squares across
// all observed periods.  Needs at least 3 sign changes.
double measured_internal_period(const Trajectory& traj);

// measured period / rest period; to first order in H_int/(M0 c^2) this is
// the Lorentz factor of the center of mass.
double dilation_factor(const Trajectory& traj, const InternalOscillator& osc);

// Sample average of com_velocity over the trajectory.
double mean_com_velocity(const PhysicalParams& p, const InternalOscillator& osc,
                         const Trajectory& traj);

struct LegendreReport {
    double p_analytic;    // (E_rest/c^2) V / sqrt(1 - V^2/c^2)
    double p_numeric;     // dL/dV by central finite differences
    double abs_residual;  // |p_analytic - p_numeric|
    double rel_residual;  // relative to the larger magnitude (0 when both vanish)
};

// Consistency check of the canonical center-of-mass momentum against the
// time-dilated rest-frame Lagrangian.  q_prime is the proper-time velocity
// dq/dtau of the internal coordinate.  Throws InvalidVelocityError for
// |v| >= c.
LegendreReport verify_legendre(const PhysicalParams& p, const InternalOscillator& osc, double v,
                               double q, double q_prime);

// Internal-oscillator state (q, p_int) carrying the requested internal
// energy, split evenly between kinetic and potential parts.
void internal_state_for_energy(const InternalOscillator& osc, double h_int, double& q,
                               double& p_int);

// Named configurations used by the conservation and dilation checks.
struct Preset {
    std::string name;
    PhysicalParams params;
    ExternalPotential potential;
    InternalOscillator osc;
    ClassicalState s0;
};

std::vector<Preset> shipped_presets();

}  // namespace relmass::classical
