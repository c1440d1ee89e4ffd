// wgmm: simulate linearized waveguide-magnomechanical networks and quantify
// remote magnon-phonon entanglement. Subcommands: simulate, steady, ln,
// sweep, presets, validate. Diagnostics go to stderr, data to files/stdout.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wgmm/config.hpp"
#include "wgmm/dynamics.hpp"
#include "wgmm/engine.hpp"
#include "wgmm/entanglement.hpp"
#include "wgmm/errors.hpp"
#include "wgmm/matrices.hpp"
#include "wgmm/output.hpp"
#include "wgmm/physics.hpp"
#include "wgmm/sweeps.hpp"
#include "wgmm/units.hpp"

namespace {

using namespace wgmm;

struct Loaded {
    Scenario scenario;
    PhysicalSection physical;
    ConfigDocument doc;
};

Loaded load(const std::string& config_path) {
    Loaded l;
    l.doc = parse_config_file(config_path);
    l.scenario = build_scenario(l.doc);
    l.physical = parse_physical(l.doc, l.scenario.n_nodes);
    return l;
}

std::vector<Bipartition> parse_partitions(const std::vector<std::string>& specs,
                                          std::size_t n_nodes) {
    if (specs.empty()) throw config_error("at least one --partition is required");
    std::vector<Bipartition> out;
    out.reserve(specs.size());
    for (const std::string& s : specs) out.push_back(parse_partition(s, n_nodes));
    return out;
}

// "start:stop:n" (inclusive linspace) or comma-separated explicit values
std::vector<double> parse_axis_values(const std::string& text) {
    const auto colons = std::count(text.begin(), text.end(), ':');
    std::vector<double> vals;
    if (colons == 2) {
        double lo, hi;
        long n;
        char c1, c2;
        std::istringstream in(text);
        if (!(in >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1 ||
            !(in >> std::ws).eof())
            throw config_error("bad axis range '" + text + "' (want start:stop:n)");
        return linspace(lo, hi, static_cast<std::size_t>(n));
    }
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (...) {
        }
        // reject partial parses too, so a typo'd range like "1:2" is not read as 1
        if (tok.empty() || used != tok.size())
            throw config_error("bad axis value '" + tok + "' in '" + text + "'");
        vals.push_back(v);
    }
    if (vals.empty()) throw config_error("empty axis '" + text + "'");
    return vals;
}

Axis parse_axis(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw config_error("bad --axis '" + spec + "' (want name=start:stop:n or name=v1,v2,...)");
    return {spec.substr(0, eq), parse_axis_values(spec.substr(eq + 1))};
}

// the covariance dump lands beside the CSV; stdout runs get a file in the cwd
std::string cm_dump_path(const std::string& csv_out) {
    if (csv_out.empty()) return "trajectory.json";
    std::filesystem::path p(csv_out);
    p.replace_extension(".cm.json");
    return p.string();
}

std::string join_path(const std::string& dir, const std::string& file) {
    if (dir.empty() || dir == ".") return file;
    return dir.back() == '/' ? dir + file : dir + "/" + file;
}

void emit_sweep(const SweepResult& res, const std::string& out_dir) {
    if (!out_dir.empty() && out_dir != ".") std::filesystem::create_directories(out_dir);
    const std::string csv_path = join_path(out_dir, res.name + ".csv");
    const std::string manifest_path = join_path(out_dir, res.name + ".manifest.json");
    write_text_file(csv_path, to_csv(res));
    write_text_file(manifest_path, to_manifest_json(res));
    std::cerr << res.name << ": " << res.rows.size() << " rows in " << res.wall_seconds
              << " s (precision " << res.max_digits << " digits) -> " << csv_path << "\n";
    if (!res.errors.empty()) {
        std::cerr << res.name << ": " << res.errors.size() << " grid point(s) failed:\n";
        for (const std::string& e : res.errors) std::cerr << "  " << e << "\n";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"linearized waveguide-magnomechanical network simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", preset_name, out_file;
    std::vector<std::string> partition_specs, axis_specs;
    double t_max = 4.0, dt = 1e-4, tau = -1.0;
    int workers = 8, digits = 0;
    bool steady_flag = false, dump_cm = false;
    std::string method = "exact";

    // simulate: LN-vs-time curves for the requested partitions
    CLI::App* sim = app.add_subcommand("simulate", "integrate and tabulate LN(t)");
    sim->add_option("--config", config_path, "scenario file")->required();
    sim->add_option("--t-max", t_max, "final time, us (default 4)");
    sim->add_option("--dt", dt, "rk4 step, us (default 1e-4)");
    sim->add_option("--partition", partition_specs, "bipartition, e.g. m2|b1 (repeatable)")
        ->required();
    sim->add_option("--method", method, "exact (default) or rk4");
    sim->add_option("--digits", digits, "working precision for the exact method (0 = auto)");
    sim->add_option("--out", out_file, "CSV path (default stdout)");
    sim->add_flag("--dump-cm", dump_cm,
                  "also write the covariance trajectory as JSON next to --out");

    // steady: algebraic steady state (stable scenarios only)
    CLI::App* st = app.add_subcommand("steady", "algebraic steady-state LNs");
    st->add_option("--config", config_path, "scenario file")->required();
    st->add_option("--partition", partition_specs, "bipartition (repeatable)")->required();
    st->add_option("--out", out_file, "CSV path (default stdout)");

    // ln: single values at a time (or from the steady state)
    CLI::App* ln = app.add_subcommand("ln", "log-negativity at one time");
    ln->add_option("--config", config_path, "scenario file")->required();
    ln->add_option("--partition", partition_specs, "bipartition (repeatable)")->required();
    ln->add_option("--t", t_max, "evaluation time, us (default 4)");
    ln->add_option("--digits", digits, "working precision (0 = auto)");
    ln->add_flag("--steady", steady_flag, "use the algebraic steady state instead of --t");

    // sweep: named preset or config + axes
    CLI::App* sw = app.add_subcommand("sweep", "run a preset or a parameter grid");
    sw->add_option("--preset", preset_name, "preset name (see 'presets')");
    sw->add_option("--config", config_path, "base scenario for --axis grids");
    sw->add_option("--axis", axis_specs,
                   "axis spec name=start:stop:n or name=v1,v2,... (repeatable)");
    sw->add_option("--partition", partition_specs, "bipartition (repeatable, with --config)");
    sw->add_option("--tau", tau, "evaluation time for --config grids, us (default 3)");
    sw->add_option("--workers", workers, "work-pool threads (default 8)");
    sw->add_option("--digits", digits, "working precision (0 = auto)");
    sw->add_flag("--steady", steady_flag, "substitute the algebraic steady state");
    sw->add_option("--out", out_dir, "output directory (default .)");

    // presets: list the catalog
    CLI::App* pr = app.add_subcommand("presets", "list the preset catalog");
    bool all_presets = false;
    pr->add_flag("--run-all", all_presets, "run every preset (honors --workers/--out)");
    pr->add_option("--workers", workers, "work-pool threads (default 8)");
    pr->add_option("--out", out_dir, "output directory (default .)");

    // validate: echo the resolved scenario
    CLI::App* va = app.add_subcommand("validate", "parse a config and echo derived quantities");
    va->add_option("--config", config_path, "scenario file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // --help exits 0
        return code == 0 ? 0 : 1;
    }

    if (sim->parsed()) {
        const Loaded l = load(config_path);
        const auto parts = parse_partitions(partition_specs, l.scenario.n_nodes);
        const Eigen::MatrixXd a = build_drift(l.scenario);
        const Eigen::MatrixXd d = build_diffusion(l.scenario);
        const CovarianceMatrix v0 = initial_cm(l.scenario);
        if (t_max < 0.0) throw config_error("--t-max must be nonnegative");

        // ~200 samples across the horizon, t=0 and t_max always included
        std::vector<double> times;
        if (t_max == 0.0) {
            times = {0.0};
        } else {
            const double step = std::max(t_max / 200.0, dt);
            times = linspace(0.0, t_max, static_cast<std::size_t>(t_max / step + 0.5) + 1);
        }

        std::vector<std::vector<double>> ln_cols;
        std::vector<bool> physical;
        bool stable = false;
        if (method == "rk4") {
            EvolveOptions opts;
            opts.method = Integrator::rk4;
            opts.dt = dt;
            const Trajectory tr = evolve(a, d, v0, times, opts);
            stable = stability(a).stable;
            for (std::size_t i = 0; i < tr.times.size(); ++i) {
                CovarianceMatrix v{tr.snapshots[i], tr.times[i]};
                std::vector<double> row;
                for (const Bipartition& bp : parts) row.push_back(log_negativity(v, bp).value);
                ln_cols.push_back(std::move(row));
                physical.push_back(symplectic_eigenvalues(tr.snapshots[i]).front() >=
                                   0.5 - 1e-7);
            }
            if (dump_cm) write_text_file(cm_dump_path(out_file), trajectory_to_json(tr));
        } else if (method == "exact") {
            std::vector<RowPartition> rp;
            for (const Bipartition& bp : parts) rp.push_back(to_row_partition(bp));
            EngineOptions eng;
            eng.digits = digits;
            const EngineResult res = evaluate_ln(a, d, v0.data, times, rp, eng);
            stable = res.stable;
            for (const EnginePoint& pt : res.points) {
                ln_cols.push_back(pt.ln);
                physical.push_back(pt.physical);
            }
            if (dump_cm) {
                EvolveOptions opts;
                opts.method = Integrator::exact;
                opts.digits = digits;
                write_text_file(cm_dump_path(out_file),
                                trajectory_to_json(evolve(a, d, v0, times, opts)));
            }
        } else {
            throw config_error("unknown --method '" + method + "' (exact or rk4)");
        }

        std::ostringstream csv;
        csv << "t";
        for (const Bipartition& bp : parts) csv << ',' << csv_field(format_partition(bp));
        csv << ",stable,physical\n";
        for (std::size_t i = 0; i < times.size(); ++i) {
            csv << format_double(times[i]);
            for (double v : ln_cols[i]) csv << ',' << format_double(v);
            csv << ',' << (stable ? "true" : "false") << ','
                << (physical[i] ? "true" : "false") << '\n';
        }
        if (out_file.empty())
            std::cout << csv.str();
        else
            write_text_file(out_file, csv.str());
        return 0;
    }

    if (st->parsed()) {
        const Loaded l = load(config_path);
        const auto parts = parse_partitions(partition_specs, l.scenario.n_nodes);
        const Eigen::MatrixXd a = build_drift(l.scenario);
        const Eigen::MatrixXd d = build_diffusion(l.scenario);
        const StabilityReport rep = stability(a);
        std::cerr << "spectral abscissa " << format_double(rep.spectral_abscissa)
                  << " rad/us, " << (rep.stable ? "stable" : "UNSTABLE") << "\n";
        if (!rep.stable)
            throw unstable_error("no steady state: drift is unstable (abscissa " +
                                 format_double(rep.spectral_abscissa) + " rad/us)");
        const SteadyResult ss = steady_state(a, d);
        std::cerr << "lyapunov residual " << format_double(ss.residual) << " (relative)\n";
        std::ostringstream csv;
        csv << "partition,ln\n";
        for (const Bipartition& bp : parts)
            csv << csv_field(format_partition(bp)) << ','
                << format_double(log_negativity(ss.v, bp).value) << '\n';
        if (out_file.empty())
            std::cout << csv.str();
        else
            write_text_file(out_file, csv.str());
        return 0;
    }

    if (ln->parsed()) {
        const Loaded l = load(config_path);
        const auto parts = parse_partitions(partition_specs, l.scenario.n_nodes);
        const Eigen::MatrixXd a = build_drift(l.scenario);
        const Eigen::MatrixXd d = build_diffusion(l.scenario);
        if (steady_flag) {
            const SteadyResult ss = steady_state(a, d); // throws if unstable
            for (const Bipartition& bp : parts)
                std::cout << format_partition(bp) << " "
                          << format_double(log_negativity(ss.v, bp).value) << "\n";
            return 0;
        }
        const CovarianceMatrix v0 = initial_cm(l.scenario);
        std::vector<RowPartition> rp;
        for (const Bipartition& bp : parts) rp.push_back(to_row_partition(bp));
        EngineOptions eng;
        eng.digits = digits;
        const EngineResult res = evaluate_ln(a, d, v0.data, {t_max}, rp, eng);
        for (std::size_t k = 0; k < parts.size(); ++k)
            std::cout << format_partition(parts[k]) << " "
                      << format_double(res.points.back().ln[k]) << "\n";
        return 0;
    }

    if (sw->parsed()) {
        EngineOptions eng;
        eng.digits = digits;
        if (!preset_name.empty()) {
            const Preset p = find_preset(preset_name);
            emit_sweep(run_preset(p, workers, eng, steady_flag), out_dir);
            return 0;
        }
        if (config_path.empty())
            throw config_error("sweep needs --preset or --config with --axis");
        const Loaded l = load(config_path);
        GridSpec spec;
        spec.base = l.scenario;
        if (l.doc.has("scenario", "epsilon_over_2pi_ghz"))
            spec.epsilon_over_2pi_ghz =
                std::get<double>(l.doc.at("scenario", "epsilon_over_2pi_ghz"));
        for (const std::string& s : axis_specs) spec.axes.push_back(parse_axis(s));
        if (spec.axes.empty()) throw config_error("sweep --config needs at least one --axis");
        spec.partitions = parse_partitions(partition_specs, l.scenario.n_nodes);
        if (steady_flag) {
            spec.eval.mode = EvalMode::algebraic_steady;
        } else {
            spec.eval.mode = EvalMode::fixed_tau;
            spec.eval.tau = tau > 0.0 ? tau : 3.0;
        }
        if (!l.scenario.name.empty()) spec.name = l.scenario.name;
        emit_sweep(grid_sweep(spec, workers, eng), out_dir);
        return 0;
    }

    if (pr->parsed()) {
        const std::vector<Preset> all = preset_catalog();
        if (!all_presets) {
            for (const Preset& p : all) {
                std::size_t points = 1;
                for (const Axis& a : p.axes) points *= a.values.size();
                std::printf("%-8s %4zu point(s)  %s\n", p.name.c_str(), points,
                            p.description.c_str());
            }
            return 0;
        }
        EngineOptions eng;
        for (const Preset& p : all) emit_sweep(run_preset(p, workers, eng), out_dir);
        return 0;
    }

    if (va->parsed()) {
        const Loaded l = load(config_path);
        const Scenario& s = l.scenario;
        const std::string tag = s.name.empty() ? "" : " '" + s.name + "'";
        std::printf("scenario%s: N = %zu node(s)\n", tag.c_str(), s.n_nodes);
        std::printf("units: internal rates are angular rad/us; config values are cyclic "
                    "(value * 2pi)\n");
        for (std::size_t j = 0; j < s.n_nodes; ++j)
            std::printf("  node %zu: delta/2pi = %.6g MHz, g/2pi = %.6g MHz, kappa/2pi = %.6g "
                        "MHz, gamma/2pi = %.6g MHz\n",
                        j + 1, rad_us_to_mhz(s.delta[j]), rad_us_to_mhz(s.g[j]),
                        rad_us_to_mhz(s.kappa[j]), rad_us_to_mhz(s.gamma[j]));
        std::printf("  omega_b/2pi = %.6g MHz, kappa_b/2pi = %.6g Hz\n",
                    rad_us_to_mhz(s.omega_b), rad_us_to_mhz(s.kappa_b) * 1e6);
        for (std::size_t j = 0; j + 1 < s.n_nodes; ++j)
            std::printf("  phi_%zu%zu = %.9g rad\n", j + 1, j + 2, s.phi[j]);
        std::printf("  n_bar_m = %.6g, n_bar_b = %.6g\n", s.n_bar_m, s.n_bar_b);

        const Eigen::MatrixXd a = build_drift(s);
        const StabilityReport rep = stability(a);
        std::printf("drift: %zux%zu, spectral abscissa %.9g rad/us -> %s\n", s.dim(), s.dim(),
                    rep.spectral_abscissa, rep.stable ? "stable" : "UNSTABLE");
        if (!rep.stable)
            std::printf("  (unstable drift: finite-time LNs may still converge; the exact "
                        "engine raises precision as needed)\n");
        std::printf("fingerprint: %016llx\n",
                    static_cast<unsigned long long>(scenario_fingerprint(s)));

        if (l.physical.drive) {
            const ClassicalAmplitudes amp =
                classical_steady_amplitudes(*l.physical.drive, s);
            std::printf("classical amplitudes (drive in [physical]):\n");
            for (std::size_t j = 0; j < s.n_nodes; ++j)
                std::printf("  <m_%zu> = %.6g%+.6gi  |<m>| = %.6g\n", j + 1,
                            amp.m[j].real(), amp.m[j].imag(), std::abs(amp.m[j]));
            std::printf("  residual %.3g, %d iteration(s)\n", amp.residual, amp.iterations);
        }
        if (l.physical.waveguide) {
            const WaveguideParams wp = derive_waveguide_params(*l.physical.waveguide);
            std::printf("waveguide-derived parameters:\n");
            for (std::size_t j = 0; j < wp.kappa.size(); ++j)
                std::printf("  node %zu: kappa/2pi = %.6g MHz\n", j + 1,
                            rad_us_to_mhz(wp.kappa[j]));
            for (std::size_t j = 0; j < wp.phi_adjacent.size(); ++j)
                std::printf("  phi_%zu%zu = %.9g rad\n", j + 1, j + 2, wp.phi_adjacent[j]);
        }
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const wgmm::unstable_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const wgmm::numerical_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const wgmm::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
