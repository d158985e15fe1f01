/*
 * Run layer: configuration parsing and command execution for the CLI.
 *
 * A run is described by a RunConfig: a command ("solve", "connect", "conflue",
 * "monodromy", "selftest"), the system it acts on (either a single difference
 * system or a family template that yields one system per step size h), the
 * evaluation grid or h-sequence, a truncation order, named tolerances, and
 * output destination/format.
 *
 * Family templates come in three kinds:
 *   fixed    -- one coefficient A(x) shared by every h,
 *   scaled   -- coefficient A(x/h) obtained by plain substitution,
 *   explicit -- a finite list of (h, system) members.
 * family_limit recovers the h -> 0 limiting coefficient used for strip
 * partitioning and the differential-system oracle; an "atilde" override in
 * the template always takes precedence.
 *
 * run() executes the command and writes a JSON (or, for connect, optionally
 * CSV) report.  Exit codes: 0 success, 2 invalid configuration, 3 numeric
 * failure, 4 partial success (some grid points failed; report flagged with
 * "partial": true).  Identical configs produce bit-identical reports: all
 * randomness (retry nudges) is seeded from the config seed.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conflux/diff_system.hpp"
#include "conflux/json_io.hpp"
#include "conflux/rational.hpp"
#include "conflux/types.hpp"

namespace conflux {

struct FamilyTemplate {
    enum class Kind { Fixed, Scaled, Explicit };
    Kind kind = Kind::Fixed;
    std::optional<RationalMatrix> a;                          // fixed / scaled
    std::vector<std::pair<double, DifferenceSystem>> members; // explicit
    std::optional<RationalMatrix> atilde;                     // limit override
};

// The member system of the family at step h.  For explicit templates h must
// match a member step to within 1e-12 relative tolerance.
DifferenceSystem family_instantiate(const FamilyTemplate& tpl, double h);

// The limiting coefficient of the family as h -> 0.  The "atilde" override
// wins when present; otherwise fixed templates keep A, scaled templates tend
// to the constant A(infinity), and explicit templates require the override.
RationalMatrix family_limit(const FamilyTemplate& tpl);

struct RunConfig {
    std::string command;
    std::uint64_t seed = 0;
    std::size_t truncation = kDefaultOrder;
    std::map<std::string, double> tolerances;
    std::string out_path;       // empty: write the report to the console
    std::string format = "json";
    std::optional<DifferenceSystem> system;
    std::optional<FamilyTemplate> family;
    std::vector<double> h_sequence;
    std::vector<Complex> grid;
    int threads = 1;
};

// Parse and validate a full run configuration.  Unknown keys, malformed
// values, and command-specific omissions raise ValidationError.
RunConfig config_from_json(const Json& j);

// Read a config file from disk and parse it.
RunConfig load_config(const std::string& path);

// Thread cap from CONFLUX_THREADS: unset or "0" selects the automatic
// default; a malformed or negative value raises ValidationError.
int resolve_threads();

// Named tolerance lookup with a default.
double tolerance_or(const RunConfig& config, const std::string& name, double fallback);

// Execute the configured command, writing the report to config.out_path (or
// the console when no path is set) and progress/errors to the console.
// Returns the process exit code.
int run(const RunConfig& config, std::ostream& console);

} // namespace conflux
