#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "relmass/parallel.hpp"
#include "relmass/params.hpp"

namespace relmass::evolution {

using Complex = std::complex<double>;

// Amplitudes c_Nn of the composite state over the four product levels
// (N, n) with N, n in {0, 1}, tagged with the time they refer to.
// Storage index is 2*N + n.
struct ProductStateAmplitudes {
    std::array<Complex, 4> c;
    double t = 0.0;

    Complex& amp(int n_cm, int n_int) { return c[2 * n_cm + n_int]; }
    const Complex& amp(int n_cm, int n_int) const { return c[2 * n_cm + n_int]; }
    double norm_sq() const;
};

// Equal superposition of both well and both internal levels (all four
// amplitudes 1/2); the unentangled starting point of the whole analysis.
ProductStateAmplitudes default_initial_state();

// Phase evolution c_Nn(t) = c_Nn(0) exp(-i E_Nn t / hbar) with E_Nn from
// spectrum::total_energy (M0 c^2 offset excluded by convention).
ProductStateAmplitudes evolve_amplitudes(const PhysicalParams& p,
                                         const ProductStateAmplitudes& s0, double t);

// Full 4x4 density operator rho = |psi><psi| over the product levels.
struct DensityOperator4 {
    std::array<std::array<Complex, 4>, 4> rho;
    double t = 0.0;
};

DensityOperator4 density_operator(const ProductStateAmplitudes& s);

// 2x2 reduced density matrix of the center of mass, indexed by well level.
struct ReducedDensityMatrix {
    std::array<std::array<Complex, 2>, 2> rho_cm;
    double t = 0.0;
};

// Partial trace over the internal levels:
// (rho_cm)_{KK'} = sum_k rho_{(K,k),(K',k)}.
ReducedDensityMatrix reduce_cm(const DensityOperator4& rho);

// Closed form of <0|rho_cm(t)|1> for the default initial state:
// (1/2) exp(i Omega_cm t) cos(Omega_ent t).
Complex coherence(const PhysicalParams& p, double t);

// Interference contrast |cos(Omega_ent t)|, normalized to 1 at t = 0.
double visibility(const PhysicalParams& p, double t);

// Tr rho_cm^2; 1 for a pure state, 1/2 when the center of mass is maximally
// entangled with the internal level.
double purity(const ReducedDensityMatrix& rho_cm);

// Center of mass position probability density at one point.
double com_density_at(const PhysicalParams& p, double t, double x);

// Sampled P_cm(X, t) over a spatial grid.
struct ComProbabilityGrid {
    std::vector<double> xs;
    double t = 0.0;
    std::vector<double> density;
};

ComProbabilityGrid com_probability_density(const PhysicalParams& p, double t,
                                           std::span<const double> xs,
                                           Exec exec = Exec::parallel);

// n uniformly spaced points covering [0, L] inclusive.
std::vector<double> uniform_grid(double length, int n);

// Position of the global maximum of P_cm(., t) on [0, L]: dense-grid seed
// refined by golden-section search.
double interference_peak_position(const PhysicalParams& p, double t);

}  // namespace relmass::evolution
