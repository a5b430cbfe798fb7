// qnd: noise-disturbance sweeps, correction searches, boundary export,
// counting simulation and the invariant battery.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qnd/commands.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

constexpr const char* kOutputDirEnv = "QND_OUTPUT_DIR";

enum class Format { csv, json };

Format parse_format(const std::string& s) {
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw qnd::ValidationError("unknown format '" + s + "' (csv, json)");
}

struct OutputOptions {
    std::string out;
    std::string format = "csv";
};

/// --out wins; otherwise $QND_OUTPUT_DIR/<stem>.<ext>; otherwise stdout.
std::optional<std::filesystem::path> resolve_output(const OutputOptions& o, const std::string& stem) {
    if (!o.out.empty() && o.out != "-") return std::filesystem::path(o.out);
    if (o.out == "-") return std::nullopt;
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
        return std::filesystem::path(dir) / (stem + (o.format == "json" ? ".json" : ".csv"));
    }
    return std::nullopt;
}

/// Writes `body` to the resolved destination. Returns the destination for messages.
std::string emit(const OutputOptions& o, const std::string& stem, const std::function<void(std::ostream&)>& body) {
    const auto path = resolve_output(o, stem);
    if (!path) {
        body(std::cout);
        std::cout.flush();
        return "stdout";
    }
    if (path->has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path->parent_path(), ec);
    }
    std::ofstream f(*path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open output file '" + path->string() + "'");
    body(f);
    f.flush();
    if (!f) throw std::runtime_error("failed writing output file '" + path->string() + "'");
    return path->string();
}

void add_output_flags(CLI::App* sub, OutputOptions& o) {
    sub->add_option("--out", o.out, "Output file ('-' for stdout; default $QND_OUTPUT_DIR/<command>.<ext> or stdout)");
    sub->add_option("--format", o.format, "Output format: csv or json")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
    using namespace qnd;

    CLI::App app{"Entropic noise-disturbance toolkit for successive qubit measurements"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Key-value config file (flags on the command line take precedence)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "N, D0, Dopt and bound diagnostics versus the polar angle of M");
    std::string sweep_theta;
    std::string sweep_mode = "analytic";
    std::string sweep_corr = "optimal";
    cmd::SweepConfig sweep_cfg;
    OutputOptions sweep_out;
    sweep->add_option("--theta", sweep_theta, "Angles in degrees: a | a,b,c | lo:hi:step (default 0:90:10,100:180:20)");
    sweep->add_option("--shots", sweep_cfg.shots, "Shots per input state (sampled modes)")->check(CLI::PositiveNumber);
    sweep->add_option("--mode", sweep_mode, "analytic | exact | multinomial | poisson")
        ->check(CLI::IsMember({"analytic", "exact", "multinomial", "poisson"}));
    sweep->add_option("--correction", sweep_corr, "none | optimal | custom:VARTHETA,PHI (degrees); sets the D column");
    sweep->add_option("--seed", sweep_cfg.seed, "RNG seed");
    sweep->add_option("--efficiency", sweep_cfg.efficiency, "Uniform detector efficiency in (0, 1]");
    sweep->add_option("--slack", sweep_cfg.slack, "Bound tolerance for sampled modes (default 6/sqrt(shots))");
    sweep->add_option("--workers", sweep_cfg.workers, "Worker threads (output does not depend on it)");
    add_output_flags(sweep, sweep_out);

    // correct-search
    auto* search = app.add_subcommand("correct-search", "Disturbance over rotated re-preparations psi(vartheta, phi)");
    cmd::CorrectSearchConfig search_cfg;
    std::string search_grid = "22.5";
    OutputOptions search_out;
    search->add_option("--theta", search_cfg.theta_deg, "Polar angle of M in degrees");
    search->add_option("--grid", search_grid, "Lattice step in degrees: STEP or VARTHETA_STEP,PHI_STEP over [0,180]^2");
    add_output_flags(search, search_out);

    // boundary
    auto* boundary = app.add_subcommand("boundary", "Optimal boundary C*, the N + D = 1 line and tight-value diagnostics");
    std::size_t boundary_samples = 91;
    OutputOptions boundary_out;
    boundary->add_option("--samples", boundary_samples, "Number of boundary points (>= 2)");
    add_output_flags(boundary, boundary_out);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Raw intensity tables I_{in, mu, beta'} for one angle");
    cmd::SimulateConfig sim_cfg;
    std::string sim_mode = "multinomial";
    std::string sim_corr = "none";
    std::string sim_family = "both";
    OutputOptions sim_out;
    simulate->add_option("--theta", sim_cfg.theta_deg, "Polar angle of M in degrees");
    simulate->add_option("--shots", sim_cfg.counting.shots, "Shots per input state")->check(CLI::PositiveNumber);
    simulate->add_option("--mode", sim_mode, "exact | multinomial | poisson")->check(CLI::IsMember({"exact", "multinomial", "poisson"}));
    simulate->add_option("--correction", sim_corr, "none | optimal | custom:VARTHETA,PHI");
    simulate->add_option("--seed", sim_cfg.counting.seed, "RNG seed");
    simulate->add_option("--efficiency", sim_cfg.counting.efficiency, "Uniform detector efficiency in (0, 1]");
    simulate->add_option("--family", sim_family, "A | B | both")->check(CLI::IsMember({"A", "B", "both"}));
    add_output_flags(simulate, sim_out);

    // verify
    auto* verify = app.add_subcommand("verify", "Run the invariant battery and print a pass/fail table");
    cmd::VerifyConfig verify_cfg;
    verify->add_option("--trials", verify_cfg.trials, "Random ensembles for the boundary oracle (0 skips it)");
    verify->add_option("--seed", verify_cfg.seed, "RNG seed");
    verify->add_option("--workers", verify_cfg.workers, "Worker threads");
    verify->add_option("--perturb-disturbance", verify_cfg.perturb_disturbance, "Debug: lower D_opt by this amount (negative control)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sweep->parsed()) {
            if (!sweep_theta.empty()) sweep_cfg.theta_deg = cmd::parse_theta_list(sweep_theta);
            sweep_cfg.mode = cmd::parse_sweep_mode(sweep_mode);
            sweep_cfg.correction = cmd::parse_correction(sweep_corr);
            if (!(sweep_cfg.efficiency > 0.0 && sweep_cfg.efficiency <= 1.0)) throw ValidationError("--efficiency must lie in (0, 1]");
            const auto rows = cmd::run_sweep(sweep_cfg);
            emit(sweep_out, "sweep", [&](std::ostream& os) {
                if (parse_format(sweep_out.format) == Format::json) {
                    os << cmd::sweep_json(sweep_cfg, rows).dump(2) << '\n';
                } else {
                    cmd::write_sweep_csv(os, rows);
                }
            });
            return kExitOk;
        }
        if (search->parsed()) {
            const auto steps = cmd::parse_theta_list(search_grid);
            if (steps.size() == 1) {
                search_cfg.vartheta_step_deg = search_cfg.phi_step_deg = steps[0];
            } else if (steps.size() == 2) {
                search_cfg.vartheta_step_deg = steps[0];
                search_cfg.phi_step_deg = steps[1];
            } else {
                throw ValidationError("--grid takes STEP or VARTHETA_STEP,PHI_STEP");
            }
            const auto res = cmd::run_correct_search(search_cfg);
            const std::string dest = emit(search_out, "correct-search", [&](std::ostream& os) {
                if (parse_format(search_out.format) == Format::json) {
                    os << cmd::correct_search_json(search_cfg, res).dump(2) << '\n';
                } else {
                    io::write_surface_csv(os, res.surface);
                }
            });
            (dest == "stdout" ? std::cerr : std::cout) << cmd::correct_search_summary(search_cfg, res);
            return kExitOk;
        }
        if (boundary->parsed()) {
            const auto rows = cmd::run_boundary(boundary_samples);
            emit(boundary_out, "boundary", [&](std::ostream& os) {
                if (parse_format(boundary_out.format) == Format::json) {
                    os << cmd::boundary_json(rows).dump(2) << '\n';
                } else {
                    cmd::write_boundary_rows_csv(os, rows);
                }
            });
            return kExitOk;
        }
        if (simulate->parsed()) {
            sim_cfg.counting.mode = parse_counting_mode(sim_mode);
            sim_cfg.correction = cmd::parse_correction(sim_corr);
            if (sim_family == "A") sim_cfg.families = {InputFamily::a};
            if (sim_family == "B") sim_cfg.families = {InputFamily::b};
            const auto tables = cmd::run_simulate(sim_cfg);
            emit(sim_out, "simulate", [&](std::ostream& os) {
                if (parse_format(sim_out.format) == Format::json) {
                    os << io::intensity_json(tables).dump(2) << '\n';
                } else {
                    io::write_intensity_csv(os, tables);
                }
            });
            return kExitOk;
        }
        if (verify->parsed()) {
            const auto checks = cmd::run_verify(verify_cfg);
            cmd::print_checks(std::cout, checks);
            const bool ok = cmd::all_passed(checks);
            std::cout << (ok ? "all checks passed" : "verification FAILED") << '\n';
            return ok ? kExitOk : kExitVerifyFailed;
        }
    } catch (const std::exception& e) {
        std::cerr << "qnd: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
