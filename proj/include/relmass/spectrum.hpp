#pragma once

#include <vector>

#include "relmass/params.hpp"

namespace relmass::spectrum {

// Quantum numbers of a product level: well level N >= 0 (ground state N = 0),
// internal level n in {0, 1}.
struct LevelIndex {
    int n_cm;
    int n_int;
};

void check_level(const LevelIndex& idx);

// Internal level energy: E_0 = 0 by the rest-mass convention, E_1 = e1_int.
double internal_energy(const PhysicalParams& p, int n_int);

// Unperturbed well energy E_N = (N+1)^2 pi^2 hbar^2 / (2 M0 L^2).
double well_energy(const PhysicalParams& p, int n_cm);

// sqrt(2/L) sin((N+1) pi X / L) inside (0, L), zero outside.
double well_wavefunction(const PhysicalParams& p, int n_cm, double x);

// <N|P^2|N> = (N+1)^2 pi^2 hbar^2 / L^2 = 2 M0 E_N.
double p2_matrix_element(const PhysicalParams& p, int n_cm);

// <N|P^4|N> = (N+1)^4 pi^4 hbar^4 / L^4; equals <N|P^2|N>^2 identically
// because the well eigenstates are P^2 eigenstates.
double p4_matrix_element(const PhysicalParams& p, int n_cm);

// First-order shift from the relativistic coupling:
// -E_N^2/(2 M0 c^2) - E_N E_n/(M0 c^2).  Negative for every level.
double perturbation_energy(const PhysicalParams& p, int n_cm, int n_int);

// Full level energy E_Nn = E_N + E_n + perturbation.  Exact for this system
// (the perturbation commutes with the unperturbed Hamiltonian).  The constant
// M0 c^2 offset is excluded here and from all phase evolution: it multiplies
// every amplitude identically and cancels in the density operator.
double total_energy(const PhysicalParams& p, int n_cm, int n_int);

// Interference frequency of the center of mass motion,
// |E_11 + E_10 - E_01 - E_00| / (2 hbar).
double omega_cm(const PhysicalParams& p);

// Equivalent closed form of omega_cm written in terms of level gaps; kept as
// an independent route for cross-checking.
double omega_cm_closed_form(const PhysicalParams& p);

// Entanglement (collapse/revival) frequency,
// |E_11 + E_00 - E_10 - E_01| / (2 hbar)
// = (E_1^IP - E_0^IP)(E_1^int - E_0^int) / (2 hbar M0 c^2).
double omega_ent(const PhysicalParams& p);

double omega_ent_closed_form(const PhysicalParams& p);

// Mass a structureless particle would need to reproduce omega_cm:
// M0 + (E_0^int + E_1^int)/(2 c^2).
double effective_mass(const PhysicalParams& p);

struct SpectrumRow {
    int n_cm;
    int n_int;
    double e_ip;     // unperturbed well energy
    double e_int;    // internal level energy
    double e1;       // first-order correction (always <= 0)
    double e_total;  // e_ip + e_int + e1
};

struct SpectrumTable {
    std::vector<SpectrumRow> rows;  // (N, n) for N = 0..n_max, n = 0..1
};

SpectrumTable build_table(const PhysicalParams& p, int n_max);

}  // namespace relmass::spectrum
