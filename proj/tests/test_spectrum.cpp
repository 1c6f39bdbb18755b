#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "relmass/errors.hpp"
#include "relmass/spectrum.hpp"

using namespace relmass;
using namespace relmass::spectrum;
namespace {
constexpr double kPi = std::numbers::pi;

PhysicalParams random_params(std::mt19937& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    PhysicalParams p;
    p.hbar = 0.5 + 1.5 * uni(rng);
    p.m0 = 0.5 + 2.5 * uni(rng);
    p.c = 5.0 + 295.0 * uni(rng);
    p.well_length = 0.5 + 1.5 * uni(rng);
    p.e1_int = 0.02 * p.m0 * p.c * p.c * uni(rng);
    return p;
}
}  // namespace

TEST_CASE("well energies") {
    const auto p = cp1();
    CHECK(well_energy(p, 0) == doctest::Approx(4.9348022005446789).epsilon(1e-15));
    CHECK(well_energy(p, 1) == doctest::Approx(19.739208802178716).epsilon(1e-15));

    // (N+1)^2 law: the N=1 level is exactly four times the ground level.
    std::mt19937 rng(7);
    for (int i = 0; i < 50; ++i) {
        const auto q = random_params(rng);
        CHECK(well_energy(q, 1) == 4.0 * well_energy(q, 0));
    }
    CHECK_THROWS_AS(well_energy(p, -1), InvalidParameterError);
}

TEST_CASE("well wavefunctions") {
    const auto p = cp1();
    CHECK(well_wavefunction(p, 0, 0.5) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(std::abs(well_wavefunction(p, 1, 0.5)) < 1e-15);  // node at the center
    CHECK(well_wavefunction(p, 0, -0.1) == 0.0);
    CHECK(well_wavefunction(p, 0, 1.1) == 0.0);
    CHECK(well_wavefunction(p, 0, 0.0) == 0.0);
    CHECK(well_wavefunction(p, 0, 1.0) == 0.0);
}

TEST_CASE("momentum matrix elements") {
    const auto p = cp1();
    CHECK(p2_matrix_element(p, 0) == doctest::Approx(kPi * kPi).epsilon(1e-15));
    CHECK(p2_matrix_element(p, 1) == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-15));
    CHECK(p4_matrix_element(p, 0) == doctest::Approx(97.409091034002437).epsilon(1e-15));
    CHECK(p4_matrix_element(p, 1) == doctest::Approx(1558.545456544039).epsilon(1e-15));

    // p2 = 2 M0 E and p4 = p2^2, exact by construction.
    for (int n = 0; n <= 50; ++n) {
        CHECK(p2_matrix_element(p, n) == 2.0 * p.m0 * well_energy(p, n));
        const double p2 = p2_matrix_element(p, n);
        CHECK(p4_matrix_element(p, n) == p2 * p2);
    }
}

TEST_CASE("perturbation energies") {
    const auto p = cp1();
    CHECK(perturbation_energy(p, 0, 0) == doctest::Approx(-0.12176136379250303).epsilon(1e-14));
    CHECK(perturbation_energy(p, 1, 1) == doctest::Approx(-2.0468778646909422).epsilon(1e-14));

    // 1/c^2 prefactor: corrections vanish in the non-relativistic limit.
    PhysicalParams big_c = p;
    big_c.c = 1e8;
    for (int n_cm = 0; n_cm <= 1; ++n_cm)
        for (int n_int = 0; n_int <= 1; ++n_int)
            CHECK(std::abs(perturbation_energy(big_c, n_cm, n_int)) < 1e-13);

    // Both terms are negative: e1 <= 0 always.
    for (int n_cm = 0; n_cm <= 50; ++n_cm)
        for (int n_int = 0; n_int <= 1; ++n_int)
            CHECK(perturbation_energy(p, n_cm, n_int) <= 0.0);

    // Same numbers through the momentum-moment route.
    std::mt19937 rng(11);
    for (int i = 0; i < 50; ++i) {
        const auto q = random_params(rng);
        for (int n_cm = 0; n_cm <= 3; ++n_cm)
            for (int n_int = 0; n_int <= 1; ++n_int) {
                const double via_moments =
                    -p4_matrix_element(q, n_cm) / (8.0 * q.m0 * q.m0 * q.m0 * q.c * q.c) -
                    internal_energy(q, n_int) * p2_matrix_element(q, n_cm) /
                        (2.0 * q.m0 * q.m0 * q.c * q.c);
                CHECK(perturbation_energy(q, n_cm, n_int) ==
                      doctest::Approx(via_moments).epsilon(1e-14));
            }
    }
}

TEST_CASE("total energies for cp1") {
    const auto p = cp1();
    CHECK(total_energy(p, 0, 0) == doctest::Approx(4.8130408367521762).epsilon(1e-14));
    CHECK(total_energy(p, 0, 1) == doctest::Approx(5.2883668257494527).epsilon(1e-14));
    CHECK(total_energy(p, 1, 0) == doctest::Approx(17.791026981498668).epsilon(1e-14));
    CHECK(total_energy(p, 1, 1) == doctest::Approx(18.192330937487775).epsilon(1e-14));

    PhysicalParams limit = p;
    limit.e1_int = 0.0;
    limit.c = 1e9;
    CHECK(total_energy(limit, 1, 0) ==
          doctest::Approx(well_energy(limit, 1)).epsilon(1e-12));
}

TEST_CASE("characteristic frequencies") {
    const auto p = cp1();
    CHECK(omega_cm(p) == doctest::Approx(12.940975128242407).epsilon(1e-14));
    CHECK(omega_ent(p) == doctest::Approx(0.037011016504085092).epsilon(1e-14));

    PhysicalParams big_c = p;
    big_c.c = 1e8;
    CHECK(omega_cm(big_c) == doctest::Approx(1.5 * kPi * kPi).epsilon(1e-12));

    PhysicalParams no_split = p;
    no_split.e1_int = 0.0;
    CHECK(omega_ent(no_split) == 0.0);

    // Level-combination and closed-form routes agree on random parameters.
    std::mt19937 rng(13);
    for (int i = 0; i < 200; ++i) {
        const auto q = random_params(rng);
        CHECK(omega_cm(q) == doctest::Approx(omega_cm_closed_form(q)).epsilon(1e-12));
        CHECK(omega_ent(q) == doctest::Approx(omega_ent_closed_form(q)).epsilon(1e-12));
    }
}

TEST_CASE("effective mass") {
    const auto p = cp1();
    CHECK(effective_mass(p) == doctest::Approx(1.0025).epsilon(1e-15));
    PhysicalParams no_split = p;
    no_split.e1_int = 0.0;
    CHECK(effective_mass(no_split) == p.m0);
    // linear, hence monotone, in e1_int
    PhysicalParams hi = p;
    hi.e1_int = 0.7;
    CHECK(effective_mass(hi) > effective_mass(p));
}

TEST_CASE("spectrum table") {
    const auto p = cp1();
    const auto small = build_table(p, 1);
    REQUIRE(small.rows.size() == 4);
    for (const auto& row : small.rows)
        CHECK(row.e_total == total_energy(p, row.n_cm, row.n_int));

    const auto table = build_table(p, 50);
    REQUIRE(table.rows.size() == 102);
    double prev_ip = -1.0;
    for (const auto& row : table.rows) {
        CHECK(row.e1 <= 0.0);
        CHECK(row.e_total == row.e_ip + row.e_int + row.e1);
        if (row.n_int == 0) {
            CHECK(row.e_ip > prev_ip);
            prev_ip = row.e_ip;
        }
    }
    CHECK_THROWS_AS(build_table(p, 0), InvalidParameterError);
}

TEST_CASE("energies scale as 1/L^2") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> uni(0.3, 3.0);
    for (int i = 0; i < 50; ++i) {
        auto q = random_params(rng);
        auto doubled = q;
        doubled.well_length = 2.0 * q.well_length;
        for (int n = 0; n <= 3; ++n)
            CHECK(well_energy(doubled, n) == well_energy(q, n) / 4.0);
        auto scaled = q;
        const double k = uni(rng);
        scaled.well_length = k * q.well_length;
        CHECK(well_energy(scaled, 2) ==
              doctest::Approx(well_energy(q, 2) / (k * k)).epsilon(1e-12));
    }
}

TEST_CASE("perturbation is diagonal in the truncated product basis") {
    const auto p = cp1();
    const double rest = p.m0 * p.c * p.c;

    // Overlap of two well modes via the closed-form antiderivative; exactly
    // zero in real arithmetic for N != N', a few ulp numerically.
    auto overlap = [&](int N, int Np) {
        const double a = (N + 1) * kPi / p.well_length;
        const double b = (Np + 1) * kPi / p.well_length;
        const double L = p.well_length;
        return (2.0 / L) * (std::sin((a - b) * L) / (2.0 * (a - b)) -
                            std::sin((a + b) * L) / (2.0 * (a + b)));
    };

    double diag_scale = 0.0;
    for (int N = 0; N <= 1; ++N)
        for (int n = 0; n <= 1; ++n)
            diag_scale = std::max(diag_scale, std::abs(perturbation_energy(p, N, n)));

    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const int N = i / 2, n = i % 2, Np = j / 2, np = j % 2;
            if (i == j)
                continue;
            double element = 0.0;
            if (n == np && N != Np) {
                // <N|P^2|N'> = hbar^2 b^2 <N|N'> and <N|P^4|N'> = hbar^4 b^4 <N|N'>.
                const double b = (Np + 1) * kPi * p.hbar / p.well_length;
                const double ov = overlap(N, Np);
                element = -(b * b * b * b) * ov / (8.0 * p.m0 * p.m0 * rest) -
                          internal_energy(p, n) * (b * b) * ov / (2.0 * p.m0 * rest);
            }
            CHECK(std::abs(element) < 1e-15 * diag_scale);
        }
}
