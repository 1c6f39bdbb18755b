// Timing comparison of the serial reference kernels against their OpenMP
// counterparts.  Also sanity-checks that both paths agree exactly.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "relmass/evolution.hpp"
#include "relmass/oracle.hpp"
#include "relmass/parallel.hpp"
#include "relmass/spectrum.hpp"

using namespace relmass;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <class F>
double time_ms(F&& f) {
    const double t0 = now_ms();
    f();
    return now_ms() - t0;
}

void report(const char* name, double serial_ms, double parallel_ms, bool match) {
    std::printf("%-24s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   %s\n", name,
                serial_ms, parallel_ms, serial_ms / parallel_ms, match ? "outputs match" : "MISMATCH");
}

}  // namespace

int main() {
    const auto p = cp1();
    std::printf("threads available: %d\n\n", max_threads());

    {
        const int n = 4'000'000;
        const auto xs = evolution::uniform_grid(p.well_length, n);
        evolution::ComProbabilityGrid a, b;
        const double ts = time_ms([&] { a = evolution::com_probability_density(p, 3.0, xs, Exec::serial); });
        const double tp = time_ms([&] { b = evolution::com_probability_density(p, 3.0, xs, Exec::parallel); });
        report("density grid", ts, tp, a.density == b.density);
    }

    {
        const int n = 1'000'000;
        const double t_max = 2.0 * 3.141592653589793 / spectrum::omega_ent(p);
        std::vector<double> times(n);
        for (int i = 0; i < n; ++i)
            times[i] = (i * t_max) / (n - 1);
        const auto s0 = evolution::default_initial_state();
        std::vector<std::complex<double>> a, b;
        const double ts = time_ms([&] { a = oracle::coherence_sweep(p, s0, times, Exec::serial); });
        const double tp = time_ms([&] { b = oracle::coherence_sweep(p, s0, times, Exec::parallel); });
        report("coherence sweep", ts, tp, a == b);
    }

    {
        const oracle::GridSpec grid{2048, p.well_length};
        std::vector<oracle::LevelPair> a, b;
        const double ts = time_ms([&] { a = oracle::grid_hamiltonian_eigs(p, grid, 32, Exec::serial); });
        const double tp = time_ms([&] { b = oracle::grid_hamiltonian_eigs(p, grid, 32, Exec::parallel); });
        bool match = a.size() == b.size();
        for (std::size_t i = 0; match && i < a.size(); ++i)
            match = a[i].e_n0 == b[i].e_n0 && a[i].e_n1 == b[i].e_n1;
        report("grid eigensolve", ts, tp, match);
    }

    {
        const PhysicalParams natural{1.0, 1.0, 1.0, 1.0, 0.0};
        const classical::InternalOscillator osc{1.0, 1.0};
        const auto pot = classical::ExternalPotential::trap(2.0, 0.0);
        oracle::EomCheckResult a{}, b{};
        const double ts =
            time_ms([&] { a = oracle::classical_eom_check(natural, pot, osc, 200000, 7, Exec::serial); });
        const double tp =
            time_ms([&] { b = oracle::classical_eom_check(natural, pot, osc, 200000, 7, Exec::parallel); });
        report("eom finite differences", ts, tp, a.worst_rel_err == b.worst_rel_err);
    }

    return 0;
}
