// loopbloch_main.cpp — command-line front end

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "loopbloch/loopbloch.hpp"

namespace {

using namespace loopbloch;

// Angles accept "pi", "-pi" and "<number>pi" besides plain numbers.
double parse_angle(const std::string& text) {
    std::string body = text;
    double factor = 1.0;
    if (body.size() >= 2 && body.substr(body.size() - 2) == "pi") {
        factor = kPi;
        body = body.substr(0, body.size() - 2);
        if (body.empty() || body == "+") return kPi;
        if (body == "-") return -kPi;
    }
    try {
        std::size_t used = 0;
        const double value = std::stod(body, &used);
        if (used != body.size()) throw std::invalid_argument(body);
        return value * factor;
    } catch (const std::exception&) {
        throw CLI::ValidationError("angle", "expected a number or multiple of pi, got '" +
                                                text + "'");
    }
}

// Initial states: "1".."4", "psi23(<angle>)", "psi14(<angle>)".
DensityMatrix parse_initial_state(const std::string& text) {
    if (text.size() == 1 && text[0] >= '1' && text[0] <= '4') {
        return projector(basis_state(text[0] - '0'));
    }
    for (const auto& [prefix, is23] :
         {std::pair<std::string, bool>{"psi23(", true}, {"psi14(", false}}) {
        if (text.rfind(prefix, 0) == 0 && text.back() == ')') {
            const double theta =
                parse_angle(text.substr(prefix.size(), text.size() - prefix.size() - 1));
            return projector(is23 ? superposition_23(theta) : superposition_14(theta));
        }
    }
    throw CLI::ValidationError(
        "initial", "expected 1..4, psi23(<angle>) or psi14(<angle>), got '" + text + "'");
}

void emit(const SweepResult& result, const std::string& out_path) {
    if (out_path.empty()) {
        result.write_csv(std::cout);
    } else {
        result.save(out_path);
    }
}

std::vector<double> bloch_row(double first, const DensityMatrix& rho, double phi) {
    std::vector<double> row{first};
    const auto values = bloch_components(rho, phi).values();
    row.insert(row.end(), values.begin(), values.end());
    return row;
}

}  // namespace

// Exit codes: 0 success, 2 domain or usage failure (no steady state, bad
// flags, failed checks), 3 configuration file parse error.
int main(int argc, char** argv) {
    CLI::App app{"loopbloch: steady states and dynamics of closed-loop four-level schemes"};
    app.set_version_flag("--version", std::string("loopbloch ") + kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string phi_text;
    std::string grid_text;

    auto add_common = [&](CLI::App* sub, bool needs_grid) {
        sub->add_option("--config", config_path, "scheme configuration file")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", out_path, "output CSV path (default: stdout)");
        if (needs_grid) {
            sub->add_option("--grid", grid_text, "grid as start:stop:count")->required();
        }
        return sub;
    };

    auto* steady = add_common(app.add_subcommand("steady", "solve one steady state"), false);
    steady->add_option("--phi", phi_text, "override the loop phase (number or e.g. 0.5pi)");

    auto* sweep_phase_cmd = add_common(
        app.add_subcommand("sweep-phase", "steady-state components against the loop phase"),
        true);

    bool log_grid = false;
    auto* sweep_alpha_cmd = add_common(
        app.add_subcommand("sweep-alpha", "steady-state components against alpha"), true);
    sweep_alpha_cmd->add_flag("--log", log_grid, "geometric alpha spacing");

    double t0 = 0.0, t1 = 10.0, tol = 1e-10, z = 0.0;
    int samples = 201;
    std::string initial_text = "1";
    auto* evolve_cmd =
        add_common(app.add_subcommand("evolve", "integrate the master equation"), false);
    evolve_cmd->add_option("--t0", t0, "start time");
    evolve_cmd->add_option("--t1", t1, "end time")->required();
    evolve_cmd->add_option("--samples", samples, "sample count including endpoints")
        ->check(CLI::PositiveNumber);
    evolve_cmd->add_option("--tol", tol, "absolute integration tolerance");
    evolve_cmd->add_option("--z", z, "position entering the phase law");
    evolve_cmd->add_option("--initial", initial_text,
                           "initial state: 1..4, psi23(<angle>), psi14(<angle>)");

    double doppler_width = 0.0;
    int doppler_nodes = 31;
    auto* doppler_cmd = add_common(
        app.add_subcommand("doppler", "thermally averaged sweep against the loop phase"), true);
    doppler_cmd->add_option("--width", doppler_width, "detuning spread (standard deviation)")
        ->required();
    doppler_cmd->add_option("--nodes", doppler_nodes, "Gauss-Hermite node count (odd)");

    ValidateOptions validate_opts;
    std::string omega_grid_text, vphi_grid_text, alpha_grid_text;
    auto* validate_cmd = app.add_subcommand(
        "validate", "compare the numeric engine against the closed-form oracles");
    validate_cmd->add_option("--omega-grid", omega_grid_text, "Omega grid (start:stop:count)");
    validate_cmd->add_option("--phi-grid", vphi_grid_text, "phase grid (start:stop:count)");
    validate_cmd->add_option("--alpha-grid", alpha_grid_text,
                             "alpha grid (start:stop:count, log-spaced)");
    validate_cmd
        ->add_option("--perturb", validate_opts.perturb,
                     "offset oracle rho11 predictions (negative control)")
        ->group("");  // hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(validate_cmd)) {
            if (!omega_grid_text.empty()) {
                validate_opts.omega_grid = GridSpec::parse(omega_grid_text);
            }
            if (!vphi_grid_text.empty()) validate_opts.phi_grid = GridSpec::parse(vphi_grid_text);
            if (!alpha_grid_text.empty()) {
                validate_opts.alpha_grid = GridSpec::parse(alpha_grid_text);
                validate_opts.alpha_grid.log = true;
            }
            const ValidationReport report = run_validation(validate_opts);
            for (const auto& c : report.checks) {
                std::printf("%-5s %-36s max_error=%11.4e  bound=%g\n",
                            c.passed ? "ok" : "FAIL", c.name.c_str(), c.max_error, c.bound);
            }
            if (!report.all_passed()) {
                std::fprintf(stderr, "validation failed\n");
                return 2;
            }
            return 0;
        }

        const SchemeConfig config = load_config(config_path);
        config.validate_or_throw();

        if (app.got_subcommand(steady)) {
            const double phi = phi_text.empty() ? config.phase_at(0.0) : parse_angle(phi_text);
            const auto ss = solve_steady_state(config, phi);
            SweepResult result;
            result.metadata = detail::sweep_metadata("steady", config);
            result.metadata.push_back(certify(ss));
            result.columns = detail::bloch_columns("phi");
            result.rows.push_back(bloch_row(phi, ss.rho, phi));
            emit(result, out_path);
        } else if (app.got_subcommand(sweep_phase_cmd)) {
            emit(sweep_phase(config, GridSpec::parse(grid_text)), out_path);
        } else if (app.got_subcommand(sweep_alpha_cmd)) {
            GridSpec grid = GridSpec::parse(grid_text);
            grid.log = log_grid;
            emit(sweep_alpha(config, grid), out_path);
        } else if (app.got_subcommand(evolve_cmd)) {
            EvolveOptions opts;
            opts.t0 = t0;
            opts.t1 = t1;
            opts.samples = samples;
            opts.tol = tol;
            opts.z = z;
            const DensityMatrix rho0 = parse_initial_state(initial_text);
            const Trajectory traj = evolve(rho0, config, opts);
            SweepResult result;
            result.metadata = detail::sweep_metadata("evolve", config);
            result.metadata.push_back("initial: " + initial_text);
            char line[96];
            std::snprintf(line, sizeof(line), "max trace drift: %.3e", traj.max_trace_drift);
            result.metadata.push_back(line);
            result.columns = detail::bloch_columns("t");
            result.columns.insert(result.columns.begin() + 1, "phase_trace");
            for (std::size_t i = 0; i < traj.size(); ++i) {
                std::vector<double> row =
                    bloch_row(traj.times[i], traj.states[i], traj.phases[i]);
                row.insert(row.begin() + 1, traj.phases[i]);
                result.rows.push_back(std::move(row));
            }
            emit(result, out_path);
        } else if (app.got_subcommand(doppler_cmd)) {
            ThermalSpec thermal{doppler_width, doppler_nodes};
            emit(sweep_phase(config, GridSpec::parse(grid_text), thermal), out_path);
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
