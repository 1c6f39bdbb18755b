#pragma once

#include <array>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "relmass/classical.hpp"
#include "relmass/evolution.hpp"
#include "relmass/parallel.hpp"
#include "relmass/params.hpp"

namespace relmass::oracle {

// Uniform position grid for the finite-difference Hamiltonian: `points`
// interior points, spacing L/(points+1), Dirichlet (hard-wall) boundaries.
struct GridSpec {
    int points;
    double length;
};

// One verified quantity: a closed-form value against an independently
// computed one, with the tolerance that gates it.
struct OracleReport {
    std::string quantity;
    double closed_form;
    double oracle_value;
    double abs_err;
    double rel_err;
    double tolerance;      // bound applied to `checked` below
    double checked;        // the error actually compared against `tolerance`
    bool pass;
};

OracleReport make_report(std::string quantity, double closed_form, double oracle_value,
                         double tolerance, bool tol_is_relative);

// Energies of one well level for both internal branches.
struct LevelPair {
    double e_n0;
    double e_n1;
};

// Diagonalizes the discretized Hamiltonian: P^2 as the 3-point second
// difference with Dirichlet walls, P^4 as the square of that matrix,
// H = P^2/2M0 - P^4/(8 M0^3 c^2) + E_n (1 - P^2/(2 M0^2 c^2)) per branch.
// Returns the lowest n_levels eigenvalues at or above zero, ascending; the
// quartic term drives the unphysical high-frequency grid modes far below
// zero, so the non-negative window is what corresponds to the bound levels
// in the valid regime.  Bisection on the banded matrix runs in extended
// precision: the spectral radius grows like points^4 and double-precision
// round-off would otherwise swamp the O(dx^2) discretization error being
// measured.
std::vector<LevelPair> grid_hamiltonian_eigs(const PhysicalParams& p, const GridSpec& grid,
                                             int n_levels, Exec exec = Exec::parallel);

// Two-level Richardson extrapolation assuming O(dx^2) error; `ratio` is
// dx_coarse / dx_fine.
double richardson2(double coarse, double fine, double ratio);

// <0|rho_cm(t)|1> built the long way round: explicit double sum of the 4x4
// density operator with pairwise phase differences, then a numeric partial
// trace.  Shares no matrix code with evolution::reduce_cm.
std::complex<double> brute_force_coherence(const PhysicalParams& p,
                                           const evolution::ProductStateAmplitudes& s0, double t);

// brute_force_coherence over many times; slot-parallel, order-independent.
std::vector<std::complex<double>> coherence_sweep(const PhysicalParams& p,
                                                  const evolution::ProductStateAmplitudes& s0,
                                                  std::span<const double> ts,
                                                  Exec exec = Exec::parallel);

// Composite trapezoid integral of the center-of-mass probability density
// over [0, L]; must come out 1 for any t.
double quadrature_norm(const PhysicalParams& p, double t, int points,
                       Exec exec = Exec::parallel);

// Trapezoid integral of psi_0 psi_1 over [0, L]; orthogonality makes it 0.
double crossterm_integral(const PhysicalParams& p, int points);

// Compares analytic equations of motion against central finite differences
// of the Hamiltonian in all four coordinates over random in-regime states.
// Returns the worst relative error per component (dx, dp, dq, dp_int).
struct EomCheckResult {
    double worst_rel_err;            // over all components and states
    std::array<double, 4> per_component;
};

EomCheckResult classical_eom_check(const PhysicalParams& p,
                                   const classical::ExternalPotential& pot,
                                   const classical::InternalOscillator& osc, int n_samples,
                                   unsigned seed = 20170713, Exec exec = Exec::parallel);

// The full verification battery used by the CLI `oracle` subcommand.
std::vector<OracleReport> standard_battery(const PhysicalParams& p, int finest_grid,
                                           int sweep_samples, Exec exec = Exec::parallel);

}  // namespace relmass::oracle
