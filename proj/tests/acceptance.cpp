// Acceptance suite: end-to-end checks of the library and the CLI, one
// pass/fail line per criterion.  Exits nonzero if any criterion fails.
//
// Usage: acceptance [path-to-relmass-cli]
// The CLI path is needed by the determinism criterion (#8); ctest passes it.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "relmass/classical.hpp"
#include "relmass/cli.hpp"
#include "relmass/evolution.hpp"
#include "relmass/oracle.hpp"
#include "relmass/spectrum.hpp"

using namespace relmass;
namespace fs = std::filesystem;
namespace {

constexpr double kPi = std::numbers::pi;

int failures = 0;

void criterion(int number, const std::string& what, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", number, what.c_str(),
                detail.c_str());
    if (!ok)
        ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

// ---------------------------------------------------------------------------

void check_spectrum_exactness(const PhysicalParams& p) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto g512 = oracle::grid_hamiltonian_eigs(p, {512, p.well_length}, 2);
    const auto g1024 = oracle::grid_hamiltonian_eigs(p, {1024, p.well_length}, 2);
    const auto g2048 = oracle::grid_hamiltonian_eigs(p, {2048, p.well_length}, 2);
    double worst = 0.0;
    for (int N = 0; N <= 1; ++N)
        for (int n = 0; n <= 1; ++n) {
            const double exact = spectrum::total_energy(p, N, n);
            auto level = [&](const std::vector<oracle::LevelPair>& g) {
                return n == 0 ? g[N].e_n0 : g[N].e_n1;
            };
            const double rich_lo =
                oracle::richardson2(level(g512), level(g1024), 1025.0 / 513.0);
            const double rich_hi =
                oracle::richardson2(level(g1024), level(g2048), 2049.0 / 1025.0);
            worst = std::max(worst, std::abs(rich_lo - exact) / std::abs(exact));
            worst = std::max(worst, std::abs(rich_hi - exact) / std::abs(exact));
        }
    const double elapsed = seconds_since(t0);
    criterion(1, "spectrum exactness via grid diagonalization", worst < 1e-6 && elapsed < 30.0,
              fmt("worst rel err %.3e < 1e-6, %.2f s < 30 s", worst, elapsed));
}

void check_coherence_equivalence(const PhysicalParams& p) {
    const auto t0 = std::chrono::steady_clock::now();
    const int n = 1000;
    const double t_max = 2.0 * kPi / spectrum::omega_ent(p);
    std::vector<double> ts(n);
    for (int i = 0; i < n; ++i)
        ts[i] = (i * t_max) / (n - 1);
    const auto brute = oracle::coherence_sweep(p, evolution::default_initial_state(), ts);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        worst = std::max(worst, std::abs(evolution::coherence(p, ts[i]) - brute[i]));
    const double elapsed = seconds_since(t0);
    criterion(2, "closed-form vs brute-force coherence", worst < 1e-12 && elapsed < 1.0,
              fmt("max |diff| %.3e < 1e-12 over %d times, %.3f s < 1 s", worst, n, elapsed));
}

void check_collapse_revival(const PhysicalParams& p) {
    const double w_ent = spectrum::omega_ent(p);
    const double t_collapse = kPi / (2.0 * w_ent);
    const double t_revival = kPi / w_ent;
    auto purity_at = [&](double t) {
        return evolution::purity(evolution::reduce_cm(evolution::density_operator(
            evolution::evolve_amplitudes(p, evolution::default_initial_state(), t))));
    };
    const double vis_c = evolution::visibility(p, t_collapse);
    const double vis_r = evolution::visibility(p, t_revival);
    const double pur_c = purity_at(t_collapse);
    const double pur_r = purity_at(t_revival);
    const bool ok = std::abs(w_ent - 0.037011) < 1e-6 && vis_c < 1e-10 &&
                    std::abs(vis_r - 1.0) < 1e-10 && std::abs(pur_c - 0.5) < 1e-10 &&
                    std::abs(pur_r - 1.0) < 1e-10;
    criterion(3, "collapse and revival", ok,
              fmt("Omega_ent %.6f, vis(collapse) %.2e, |vis(revival)-1| %.2e, "
                  "|purity(collapse)-0.5| %.2e, |purity(revival)-1| %.2e",
                  w_ent, vis_c, std::abs(vis_r - 1.0), std::abs(pur_c - 0.5),
                  std::abs(pur_r - 1.0)));
}

void check_figure1(const PhysicalParams& p) {
    // Drive the same code path as the CLI subcommand and inspect its output.
    cli::RunConfig cfg{p, cli::Command::figure1, "", std::nullopt, std::nullopt, std::nullopt};
    std::ostringstream out, diag;
    if (cli::run(cfg, out, diag) != 0) {
        criterion(4, "figure1 reproduction", false, "figure1 command failed");
        return;
    }
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);  // header
    std::vector<double> xs, d0, ds;
    while (std::getline(in, line)) {
        double x, a, b;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &a, &b) == 3) {
            xs.push_back(x);
            d0.push_back(a);
            ds.push_back(b);
        }
    }
    const auto n = xs.size();
    bool ok = n == 1001;
    std::string detail = fmt("%zu rows", n);
    if (ok) {
        auto trapz = [&](const std::vector<double>& y) {
            double s = 0.5 * (y.front() + y.back());
            for (std::size_t i = 1; i + 1 < n; ++i)
                s += y[i];
            return s * (p.well_length / static_cast<double>(n - 1));
        };
        const double norm0 = trapz(d0), norm_star = trapz(ds);

        const std::size_t mid = n / 2;
        const double at_mid0 = d0[mid], at_mid_star = ds[mid];

        const double peak = evolution::interference_peak_position(p, 0.0);

        double asym_star = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            asym_star = std::max(asym_star, std::abs(ds[i] - ds[n - 1 - i]));

        double left = 0.0, right = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double panel = 0.5 * (d0[i] + d0[i + 1]) * (xs[i + 1] - xs[i]);
            (xs[i] < 0.5 * p.well_length ? left : right) += panel;
        }

        ok = std::abs(norm0 - 1.0) < 1e-9 && std::abs(norm_star - 1.0) < 1e-9 &&
             std::abs(at_mid0 - 1.0) < 1e-12 && std::abs(at_mid_star - 1.0) < 1e-12 &&
             std::abs(peak - 0.297897) <= 1e-4 && asym_star < 1e-12 && left - right > 0.1;
        detail = fmt("norms %.2e/%.2e, center %.2e/%.2e, peak %.6f, t* asymmetry %.2e, "
                     "left-right %.3f",
                     std::abs(norm0 - 1.0), std::abs(norm_star - 1.0), std::abs(at_mid0 - 1.0),
                     std::abs(at_mid_star - 1.0), peak, asym_star, left - right);
    }
    criterion(4, "figure1 reproduction", ok, detail);
}

void check_time_dilation() {
    const auto t0 = std::chrono::steady_clock::now();
    const PhysicalParams natural{1.0, 1.0, 1.0, 1.0, 0.0};
    const classical::InternalOscillator osc{1.0, 1.0};
    const auto pot = classical::ExternalPotential::free_motion();
    double q0, pi0;
    classical::internal_state_for_energy(osc, 1e-4, q0, pi0);
    double worst = 0.0;
    for (double momentum : {0.3, 0.6, 1.0}) {
        const double gamma = std::hypot(1.0, momentum);
        const double t_end = 12.0 * gamma * 2.0 * kPi;
        const auto traj = classical::integrate(natural, pot, osc, {0, 0, momentum, q0, pi0},
                                               t_end, 1e-10, 12 * 512);
        const double dil = classical::dilation_factor(traj, osc);
        worst = std::max(worst, std::abs(dil - gamma) / gamma);
    }
    const double elapsed = seconds_since(t0);
    criterion(5, "classical time dilation", worst < 1e-5 && elapsed < 10.0,
              fmt("worst rel err %.3e < 1e-5, %.2f s < 10 s", worst, elapsed));
}

void check_hamiltonian_consistency() {
    const PhysicalParams natural{1.0, 1.0, 1.0, 1.0, 0.0};
    const classical::InternalOscillator osc{1.0, 1.0};
    const auto free_check = oracle::classical_eom_check(
        natural, classical::ExternalPotential::free_motion(), osc, 100);
    const auto trap_check = oracle::classical_eom_check(
        natural, classical::ExternalPotential::trap(2.0, 0.0), osc, 100);
    const double worst_eom = std::max(free_check.worst_rel_err, trap_check.worst_rel_err);

    double worst_drift = 0.0;
    for (const auto& preset : classical::shipped_presets()) {
        const double gamma =
            std::hypot(1.0, preset.s0.p / (preset.params.m0 * preset.params.c));
        const double t_end = 100.0 * gamma * 2.0 * kPi / preset.osc.omega_int;
        const auto traj = classical::integrate(preset.params, preset.potential, preset.osc,
                                               preset.s0, t_end, 1e-10, 201);
        worst_drift = std::max(worst_drift, traj.energy_drift);
    }
    criterion(6, "hamiltonian consistency", worst_eom < 1e-6 && worst_drift < 1e-9,
              fmt("finite-difference rel err %.3e < 1e-6, drift %.3e < 1e-9 over 100 periods",
                  worst_eom, worst_drift));
}

void check_legendre() {
    const PhysicalParams natural{1.0, 1.0, 1.0, 1.0, 0.0};
    const classical::InternalOscillator osc{1.0, 1.0};
    double worst = 0.0;
    for (int iv = 0; iv < 10; ++iv)
        for (int ih = 0; ih < 10; ++ih) {
            const double v = 0.9 * iv / 9.0;
            double q, p_int;
            classical::internal_state_for_energy(osc, 1e-2 * ih / 9.0, q, p_int);
            const auto rep = classical::verify_legendre(natural, osc, v, q, p_int / osc.mu);
            worst = std::max(worst, rep.abs_residual);
        }
    criterion(7, "canonical momentum consistency", worst < 1e-8,
              fmt("max residual %.3e < 1e-8 over a 10x10 grid", worst));
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void check_determinism(const std::string& cli_path) {
    if (cli_path.empty()) {
        criterion(8, "CLI determinism", false, "no CLI path supplied on the command line");
        return;
    }
    const fs::path dir = fs::temp_directory_path() / "relmass_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path cfg = dir / "cp1.cfg";
    {
        std::ofstream f(cfg);
        f << "hbar=1\nc=10\nm0=1\nwell_length=1\ne1_int=0.5\n";
    }
    bool ok = true;
    std::string detail = "all five subcommands byte-identical across two runs";
    for (const std::string sub : {"spectrum", "evolve", "classical", "figure1", "oracle"}) {
        std::string outputs[2];
        for (int round = 0; round < 2 && ok; ++round) {
            const fs::path csv = dir / (sub + std::to_string(round) + ".csv");
            const fs::path out = dir / (sub + std::to_string(round) + ".stdout");
            const fs::path err = dir / (sub + std::to_string(round) + ".stderr");
            const std::string cmd = "\"" + cli_path + "\" " + sub + " --config \"" +
                                    cfg.string() + "\" --out \"" + csv.string() + "\" > \"" +
                                    out.string() + "\" 2> \"" + err.string() + "\"";
            if (std::system(cmd.c_str()) != 0) {
                ok = false;
                detail = sub + " exited nonzero";
                break;
            }
            outputs[round] = slurp(csv) + "\x1e" + slurp(out) + "\x1e" + slurp(err);
        }
        if (ok && outputs[0] != outputs[1]) {
            ok = false;
            detail = sub + " output differs between runs";
        }
    }
    criterion(8, "CLI determinism", ok, detail);
    fs::remove_all(dir);
}

}  // namespace

int main(int argc, char** argv) {
    const auto p = cp1();
    check_spectrum_exactness(p);
    check_coherence_equivalence(p);
    check_collapse_revival(p);
    check_figure1(p);
    check_time_dilation();
    check_hamiltonian_consistency();
    check_legendre();
    check_determinism(argc > 1 ? argv[1] : "");
    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
}
