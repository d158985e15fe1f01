/*
 * conflux — canonical solutions, connection matrices, confluence limits, and
 * monodromy for fuchsian linear difference systems.
 *
 * Usage: conflux <command> [flags]
 *   solve      evaluate the canonical solution on a grid, with residuals
 *   connect    sample the connection matrix P(x), with periodicity checks
 *   conflue    strip limits of P over a decreasing h-sequence
 *   monodromy  strip limits, monodromies, and the differential-loop oracle
 *   selftest   run the built-in verification criteria
 *
 * Flags: --config PATH (JSON run configuration; optional for selftest),
 * --out PATH, --format json|csv, --seed INT, --order N, and repeatable
 * --tol NAME=VALUE overrides.  Flags win over the corresponding config keys.
 * Exit codes: 0 ok, 2 validation error, 3 numeric failure, 4 partial results.
 */
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "conflux/errors.hpp"
#include "conflux/json_io.hpp"
#include "conflux/run.hpp"

namespace {

void apply_tolerance_flags(conflux::RunConfig& config,
                           const std::vector<std::string>& flags) {
    for (const std::string& flag : flags) {
        const std::size_t eq = flag.find('=');
        if (eq == std::string::npos || eq == 0)
            throw conflux::ValidationError("--tol expects NAME=VALUE, got \"" + flag + "\"");
        const std::string name = flag.substr(0, eq);
        const std::string text = flag.substr(eq + 1);
        double value = 0.0;
        try {
            std::size_t used = 0;
            value = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
        } catch (const std::exception&) {
            throw conflux::ValidationError("--tol value for \"" + name +
                                           "\" is not a number: \"" + text + "\"");
        }
        if (value < 0.0)
            throw conflux::ValidationError("--tol value for \"" + name +
                                           "\" must be non-negative");
        config.tolerances[name] = value;
    }
}

void report_error(const char* type, const std::exception& e) {
    const conflux::Json body{{"error", conflux::Json{{"type", type}, {"message", e.what()}}}};
    std::cout << body.dump(2) << "\n";
    std::cerr << type << ": " << e.what() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"canonical solutions and connection data of fuchsian difference systems"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format;
    std::uint64_t seed = 0;
    std::size_t order = 0;
    std::vector<std::string> tol_flags;

    const auto add_common = [&](CLI::App* cmd, bool config_required) {
        auto* config_opt =
            cmd->add_option("--config", config_path, "JSON run configuration file");
        if (config_required) config_opt->required();
        cmd->add_option("--out", out_path, "write the report to this path (default: stdout)");
        cmd->add_option("--format", format, "report format: json or csv");
        cmd->add_option("--seed", seed, "seed for the deterministic retry nudges");
        cmd->add_option("--order", order, "truncation order override");
        cmd->add_option("--tol", tol_flags, "tolerance override NAME=VALUE (repeatable)");
    };

    add_common(app.add_subcommand(
                   "solve", "evaluate the canonical solution on a grid, with residuals"),
               true);
    add_common(app.add_subcommand(
                   "connect", "sample the connection matrix P(x), with periodicity checks"),
               true);
    add_common(app.add_subcommand("conflue",
                                  "strip limits of P over a decreasing h-sequence"),
               true);
    add_common(app.add_subcommand(
                   "monodromy",
                   "strip limits, monodromies, and the differential-loop oracle"),
               true);
    add_common(app.add_subcommand("selftest", "run the built-in verification criteria"),
               false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e); // --help / --version
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();

    try {
        conflux::RunConfig config;
        if (!config_path.empty()) config = conflux::load_config(config_path);
        if (!config.command.empty() && config.command != command)
            throw conflux::ValidationError("config names command \"" + config.command +
                                           "\" but the \"" + command +
                                           "\" subcommand was invoked");
        config.command = command;
        if (sub->count("--out") > 0) config.out_path = out_path;
        if (sub->count("--format") > 0) config.format = format;
        if (sub->count("--seed") > 0) config.seed = seed;
        if (sub->count("--order") > 0) config.truncation = order;
        apply_tolerance_flags(config, tol_flags);
        config.threads = conflux::resolve_threads();
        return conflux::run(config, std::cout);
    } catch (const conflux::ValidationError& e) {
        report_error("ValidationError", e);
        return 2;
    } catch (const conflux::Error& e) {
        report_error("NumericError", e);
        return 3;
    } catch (const std::exception& e) {
        report_error("Error", e);
        return 3;
    }
}
