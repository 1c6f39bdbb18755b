#include "relmass/spectrum.hpp"

#include <cmath>
#include <numbers>

#include "relmass/errors.hpp"

namespace relmass::spectrum {

namespace {
constexpr double kPi = std::numbers::pi;

// Wave number times hbar: (N+1) pi hbar / L.  All momentum moments derive
// from this single quantity so the algebraic identities between them
// (p4 = p2^2, p2 = 2 M0 E) hold bit-exactly.
double khbar(const PhysicalParams& p, int n_cm) {
    return (n_cm + 1) * kPi * p.hbar / p.well_length;
}
}  // namespace

void check_level(const LevelIndex& idx) {
    if (idx.n_cm < 0)
        throw InvalidParameterError("well level must be >= 0");
    if (idx.n_int != 0 && idx.n_int != 1)
        throw InvalidParameterError("internal level must be 0 or 1");
}

double internal_energy(const PhysicalParams& p, int n_int) {
    check_level({0, n_int});
    return n_int == 0 ? 0.0 : p.e1_int;
}

double p2_matrix_element(const PhysicalParams& p, int n_cm) {
    check_level({n_cm, 0});
    const double k = khbar(p, n_cm);
    return k * k;
}

double p4_matrix_element(const PhysicalParams& p, int n_cm) {
    const double p2 = p2_matrix_element(p, n_cm);
    return p2 * p2;
}

double well_energy(const PhysicalParams& p, int n_cm) {
    return p2_matrix_element(p, n_cm) / (2.0 * p.m0);
}

double well_wavefunction(const PhysicalParams& p, int n_cm, double x) {
    check_level({n_cm, 0});
    if (x <= 0.0 || x >= p.well_length)
        return 0.0;
    return std::sqrt(2.0 / p.well_length) * std::sin((n_cm + 1) * kPi * x / p.well_length);
}

double perturbation_energy(const PhysicalParams& p, int n_cm, int n_int) {
    const double e_ip = well_energy(p, n_cm);
    const double e_int = internal_energy(p, n_int);
    const double rest = p.m0 * p.c * p.c;
    return -e_ip * e_ip / (2.0 * rest) - e_ip * e_int / rest;
}

double total_energy(const PhysicalParams& p, int n_cm, int n_int) {
    return well_energy(p, n_cm) + internal_energy(p, n_int) + perturbation_energy(p, n_cm, n_int);
}

double omega_cm(const PhysicalParams& p) {
    // Grouped as (E_10 - E_00) + (E_11 - E_01) so the phases used by the
    // closed-form coherence stay within one rounding of the pairwise energy
    // differences used by the brute-force density-matrix path.
    const double a = total_energy(p, 1, 0) - total_energy(p, 0, 0);
    const double b = total_energy(p, 1, 1) - total_energy(p, 0, 1);
    return std::abs(a + b) / (2.0 * p.hbar);
}

double omega_cm_closed_form(const PhysicalParams& p) {
    const double e0 = well_energy(p, 0), e1 = well_energy(p, 1);
    const double rest = p.m0 * p.c * p.c;
    const double sum_int = internal_energy(p, 0) + internal_energy(p, 1);
    return std::abs((e1 - e0) / p.hbar * (1.0 - sum_int / (2.0 * rest)) -
                    (e1 * e1 - e0 * e0) / (2.0 * p.hbar * rest));
}

double omega_ent(const PhysicalParams& p) {
    const double a = total_energy(p, 1, 0) - total_energy(p, 0, 0);
    const double b = total_energy(p, 1, 1) - total_energy(p, 0, 1);
    return std::abs(a - b) / (2.0 * p.hbar);
}

double omega_ent_closed_form(const PhysicalParams& p) {
    const double gap_cm = well_energy(p, 1) - well_energy(p, 0);
    const double gap_int = internal_energy(p, 1) - internal_energy(p, 0);
    return std::abs(gap_cm * gap_int) / (2.0 * p.hbar * p.m0 * p.c * p.c);
}

double effective_mass(const PhysicalParams& p) {
    return p.m0 + (internal_energy(p, 0) + internal_energy(p, 1)) / (2.0 * p.c * p.c);
}

SpectrumTable build_table(const PhysicalParams& p, int n_max) {
    check_params(p);
    if (n_max < 1)
        throw InvalidParameterError("n_max must be >= 1");
    SpectrumTable table;
    table.rows.reserve(2 * (n_max + 1));
    for (int n_cm = 0; n_cm <= n_max; ++n_cm) {
        for (int n_int = 0; n_int <= 1; ++n_int) {
            SpectrumRow row;
            row.n_cm = n_cm;
            row.n_int = n_int;
            row.e_ip = well_energy(p, n_cm);
            row.e_int = internal_energy(p, n_int);
            row.e1 = perturbation_energy(p, n_cm, n_int);
            row.e_total = row.e_ip + row.e_int + row.e1;
            table.rows.push_back(row);
        }
    }
    return table;
}

}  // namespace relmass::spectrum
