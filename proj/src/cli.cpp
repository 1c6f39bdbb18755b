#include "relmass/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>

#include <CLI11.hpp>

#include "relmass/classical.hpp"
#include "relmass/csv.hpp"
#include "relmass/errors.hpp"
#include "relmass/evolution.hpp"
#include "relmass/oracle.hpp"
#include "relmass/spectrum.hpp"

namespace relmass::cli {

namespace {

using csv::g17;

void emit_spectrum(const RunConfig& cfg, std::ostream& out) {
    const int n_max = cfg.samples.value_or(10);
    const auto table = spectrum::build_table(cfg.params, n_max);
    out << "N,n,e_ip,e_int,e1,e_total\n";
    for (const auto& row : table.rows)
        out << row.n_cm << ',' << row.n_int << ',' << g17(row.e_ip) << ',' << g17(row.e_int)
            << ',' << g17(row.e1) << ',' << g17(row.e_total) << '\n';
}

void emit_evolve(const RunConfig& cfg, std::ostream& out) {
    const double t_end = cfg.t_end.value_or(2.0 * std::numbers::pi / spectrum::omega_ent(cfg.params));
    const int samples = cfg.samples.value_or(1001);
    const auto s0 = evolution::default_initial_state();
    out << "t,re_coherence,im_coherence,visibility,purity\n";
    for (int i = 0; i < samples; ++i) {
        const double t = i == samples - 1 ? t_end : (i * t_end) / (samples - 1);
        const auto coh = evolution::coherence(cfg.params, t);
        const auto red = evolution::reduce_cm(
            evolution::density_operator(evolution::evolve_amplitudes(cfg.params, s0, t)));
        out << g17(t) << ',' << g17(coh.real()) << ',' << g17(coh.imag()) << ','
            << g17(evolution::visibility(cfg.params, t)) << ',' << g17(evolution::purity(red))
            << '\n';
    }
}

void emit_figure1(const RunConfig& cfg, std::ostream& out) {
    const int samples = cfg.samples.value_or(1001);
    const auto xs = evolution::uniform_grid(cfg.params.well_length, samples);
    const double t_star = std::numbers::pi / (2.0 * spectrum::omega_ent(cfg.params));
    const auto at0 = evolution::com_probability_density(cfg.params, 0.0, xs);
    const auto at_star = evolution::com_probability_density(cfg.params, t_star, xs);
    out << "x,density_t0,density_tstar\n";
    for (int i = 0; i < samples; ++i)
        out << g17(xs[i]) << ',' << g17(at0.density[i]) << ',' << g17(at_star.density[i]) << '\n';
}

void emit_classical(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
    const auto& p = cfg.params;
    // Default scenario: free flight at P = 0.6 M0 c with an internal clock
    // carrying 1e-4 of the rest energy, integrated over 12 dilated periods.
    const classical::InternalOscillator osc{1.0, p.m0};
    const classical::ExternalPotential pot = classical::ExternalPotential::free_motion();
    const double momentum = 0.6 * p.m0 * p.c;
    double q0, pi0;
    classical::internal_state_for_energy(osc, 1e-4 * p.m0 * p.c * p.c, q0, pi0);
    const classical::ClassicalState s0{0.0, 0.0, momentum, q0, pi0};

    const double gamma = std::hypot(1.0, momentum / (p.m0 * p.c));
    const double rest_period = 2.0 * std::numbers::pi / osc.omega_int;
    const double t_end = cfg.t_end.value_or(12.0 * gamma * rest_period);
    const int samples = cfg.samples.value_or(4001);

    const auto traj = classical::integrate(p, pot, osc, s0, t_end, 1e-10, samples);
    out << "t,x,p,q,p_int,H\n";
    for (const auto& s : traj.samples)
        out << g17(s.t) << ',' << g17(s.x) << ',' << g17(s.p) << ',' << g17(s.q) << ','
            << g17(s.p_int) << ',' << g17(classical::total_hamiltonian(p, pot, osc, s)) << '\n';

    try {
        const double dil = classical::dilation_factor(traj, osc);
        diag << "classical: P/(M0 c)=" << g17(momentum / (p.m0 * p.c))
             << " dilation_measured=" << g17(dil) << " gamma=" << g17(gamma)
             << " rel_err=" << g17(std::abs(dil - gamma) / gamma)
             << " energy_drift=" << g17(traj.energy_drift) << '\n';
    } catch (const InsufficientDataError&) {
        diag << "classical: trajectory too short to measure the internal period; "
                "energy_drift=" << g17(traj.energy_drift) << '\n';
    }
}

int emit_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
    const auto reports =
        oracle::standard_battery(cfg.params, cfg.grid.value_or(2048), cfg.samples.value_or(256));
    out << "quantity,closed_form,oracle_value,abs_err,rel_err\n";
    int failures = 0;
    for (const auto& r : reports) {
        out << r.quantity << ',' << g17(r.closed_form) << ',' << g17(r.oracle_value) << ','
            << g17(r.abs_err) << ',' << g17(r.rel_err) << '\n';
        if (!r.pass) {
            ++failures;
            diag << "oracle: FAIL " << r.quantity << " error " << g17(r.checked)
                 << " exceeds tolerance " << g17(r.tolerance) << '\n';
        }
    }
    diag << "oracle: " << reports.size() - failures << "/" << reports.size() << " checks passed\n";
    return failures == 0 ? 0 : 1;
}

}  // namespace

void validate(const RunConfig& cfg) {
    check_params(cfg.params);
    if (cfg.t_end && !(*cfg.t_end > 0.0))
        throw InvalidParameterError("t-end must be positive");
    if (cfg.samples && *cfg.samples < 2)
        throw InvalidParameterError("samples must be >= 2");
    if (cfg.grid && *cfg.grid < 64)
        throw InvalidParameterError("grid must be >= 64");
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
    validate(cfg);
    // Surface the perturbative-regime check for the quantum commands; the
    // math stays valid either way, so violations warn rather than abort.
    if (cfg.command != Command::classical) {
        const int n_max = cfg.command == Command::spectrum ? cfg.samples.value_or(10) : 1;
        for (const auto& warning : validate_params(cfg.params, n_max, 0.1).warnings)
            diag << "warning: " << warning << '\n';
    }
    std::ofstream file;
    std::ostream* sink = &out;
    if (!cfg.out_path.empty()) {
        file.open(cfg.out_path, std::ios::binary);
        if (!file)
            throw Error("cannot open output file '" + cfg.out_path + "'");
        sink = &file;
    }
    switch (cfg.command) {
        case Command::spectrum:
            emit_spectrum(cfg, *sink);
            return 0;
        case Command::evolve:
            emit_evolve(cfg, *sink);
            return 0;
        case Command::figure1:
            emit_figure1(cfg, *sink);
            return 0;
        case Command::classical:
            emit_classical(cfg, *sink, diag);
            return 0;
        case Command::oracle:
            return emit_oracle(cfg, *sink, diag);
    }
    return 2;
}

int main_entry(int argc, const char* const* argv) {
    CLI::App app{"relativistic center-of-mass/internal coupling simulator"};
    app.require_subcommand(1);

    struct SubSpec {
        const char* name;
        const char* help;
        Command command;
    };
    const SubSpec subs[] = {
        {"spectrum", "emit the level-energy table as CSV (--samples sets the highest level)",
         Command::spectrum},
        {"evolve", "emit coherence/visibility/purity time series as CSV", Command::evolve},
        {"classical", "integrate the coupled classical system; CSV trajectory plus a dilation "
                      "summary on stderr",
         Command::classical},
        {"figure1", "emit the center-of-mass density at t=0 and at the collapse time",
         Command::figure1},
        {"oracle", "run the verification battery; exits 1 if any check fails", Command::oracle},
    };

    std::string config_path, out_path;
    double t_end = 0.0;
    int samples = 0, grid = 0;
    int exit_code = 0;
    for (const auto& spec : subs) {
        auto* sub = app.add_subcommand(spec.name, spec.help);
        sub->add_option("--config", config_path, "parameter file (key=value lines)")->required();
        sub->add_option("--out", out_path, "output CSV path (default: stdout)");
        auto* opt_t = sub->add_option("--t-end", t_end, "end time");
        auto* opt_s = sub->add_option("--samples", samples, "sample/row count");
        auto* opt_g = sub->add_option("--grid", grid, "finest oracle grid size");
        sub->callback([&, spec, opt_t, opt_s, opt_g]() {
            RunConfig cfg;
            cfg.params = load_params(config_path);
            cfg.command = spec.command;
            cfg.out_path = out_path;
            if (opt_t->count())
                cfg.t_end = t_end;
            if (opt_s->count())
                cfg.samples = samples;
            if (opt_g->count())
                cfg.grid = grid;
            exit_code = run(cfg, std::cout, std::cerr);
        });
    }

    try {
        app.parse(argc, argv);
        return exit_code;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const InvalidParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace relmass::cli
