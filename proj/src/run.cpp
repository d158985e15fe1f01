/*
 * Command runner behind the CLI.
 *
 * Configs are JSON objects with keys {command, seed, truncation, tolerances,
 * output, system, h_sequence, grid}.  The "system" key holds either a concrete
 * difference system or a family template (discriminated by a "kind" key:
 * fixed / scaled / explicit).  Reports are JSON (connect optionally CSV) and
 * deterministic: the only randomness — horizontal retry nudges for grid
 * points blocked by a continuation obstruction — is seeded from the config
 * seed and the point index, so identical configs produce bit-identical
 * reports.
 *
 * Per-point protocol for solve/connect: evaluate at x; on a numeric failure
 * retry at x + u h/10 (u uniform in (0,1), fresh draw per retry, at most
 * three retries), then record a structured per-point error.  A report with
 * failed points carries "partial": true; exit codes are 0 (all points ok),
 * 2 (invalid configuration), 3 (numeric failure / every point failed),
 * 4 (partial results).
 */
#include "conflux/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "conflux/acceptance.hpp"
#include "conflux/connection.hpp"
#include "conflux/errors.hpp"

namespace conflux {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ValidationError(what); }

const char* error_type(const Error& e) {
    if (dynamic_cast<const PoleError*>(&e)) return "PoleError";
    if (dynamic_cast<const ResonanceError*>(&e)) return "ResonanceError";
    if (dynamic_cast<const SingularMatrixError*>(&e)) return "SingularMatrixError";
    if (dynamic_cast<const IllConditionedError*>(&e)) return "IllConditionedError";
    if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
    if (dynamic_cast<const ConvergenceError*>(&e)) return "ConvergenceError";
    if (dynamic_cast<const PathError*>(&e)) return "PathError";
    if (dynamic_cast<const NumericError*>(&e)) return "NumericError";
    if (dynamic_cast<const ValidationError*>(&e)) return "ValidationError";
    return "Error";
}

Json error_details(const Error& e) {
    return Json{{"type", error_type(e)}, {"message", e.what()}};
}

void require_keys(const Json& obj, std::initializer_list<const char*> allowed,
                  const char* context) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : allowed)
            if (it.key() == key) {
                known = true;
                break;
            }
        if (!known) fail("unknown key \"" + it.key() + "\" in " + context);
    }
}

double positive_number(const Json& j, const char* context) {
    if (!j.is_number()) fail(std::string(context) + " must be a number");
    const double v = j.get<double>();
    if (!(v > 0.0)) fail(std::string(context) + " must be positive");
    return v;
}

bool is_command(const std::string& s) {
    return s == "solve" || s == "connect" || s == "conflue" || s == "monodromy" ||
           s == "selftest";
}

RationalMatrix constant_rational(const Matrix& m) {
    RationalMatrix r;
    r.n = static_cast<int>(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        std::vector<RationalEntry> row;
        for (Eigen::Index k = 0; k < m.cols(); ++k)
            row.push_back(RationalEntry{{m(i, k)}, {Complex(1.0, 0.0)}});
        r.entries.push_back(std::move(row));
    }
    return r;
}

std::string format_step(double h) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", h);
    return buf;
}

} // namespace

DifferenceSystem family_instantiate(const FamilyTemplate& tpl, double h) {
    if (!(h > 0.0)) fail("family step h must be positive");
    switch (tpl.kind) {
    case FamilyTemplate::Kind::Fixed:
        if (!tpl.a) fail("fixed family template lacks a coefficient");
        return make_system(*tpl.a, h);
    case FamilyTemplate::Kind::Scaled:
        if (!tpl.a) fail("scaled family template lacks a coefficient");
        return make_system(tpl.a->substitute_scale(Complex(1.0 / h, 0.0)), h);
    case FamilyTemplate::Kind::Explicit:
        for (const auto& member : tpl.members)
            if (std::abs(member.first - h) <= 1e-12 * std::max(1.0, h)) return member.second;
        fail("no explicit family member with step h = " + format_step(h));
    }
    fail("unsupported family template");
}

RationalMatrix family_limit(const FamilyTemplate& tpl) {
    if (tpl.atilde) return *tpl.atilde;
    switch (tpl.kind) {
    case FamilyTemplate::Kind::Fixed:
        if (!tpl.a) fail("fixed family template lacks a coefficient");
        return *tpl.a;
    case FamilyTemplate::Kind::Scaled:
        // A(x/h) -> A(infinity) pointwise as h -> 0+ away from the origin.
        if (!tpl.a) fail("scaled family template lacks a coefficient");
        return constant_rational(tpl.a->value_at_infinity());
    case FamilyTemplate::Kind::Explicit:
        fail("explicit family templates need an \"atilde\" limit coefficient");
    }
    fail("unsupported family template");
}

namespace {

FamilyTemplate family_from_json(const Json& j) {
    require_keys(j, {"kind", "A", "members", "atilde"}, "the family template");
    if (!j.contains("kind") || !j["kind"].is_string())
        fail("family templates need a \"kind\" string");
    const std::string kind = j["kind"].get<std::string>();
    FamilyTemplate tpl;
    if (kind == "fixed" || kind == "scaled") {
        tpl.kind = kind == "fixed" ? FamilyTemplate::Kind::Fixed : FamilyTemplate::Kind::Scaled;
        if (!j.contains("A")) fail(kind + " family templates need an \"A\" coefficient");
        if (j.contains("members")) fail(kind + " family templates take no \"members\"");
        tpl.a = rational_from_json(j["A"]);
    } else if (kind == "explicit") {
        tpl.kind = FamilyTemplate::Kind::Explicit;
        if (j.contains("A")) fail("explicit family templates take no \"A\"");
        if (!j.contains("members") || !j["members"].is_array() || j["members"].empty())
            fail("explicit family templates need a non-empty \"members\" array");
        for (const Json& m : j["members"]) {
            if (!m.is_object()) fail("family members must be objects");
            require_keys(m, {"h", "system"}, "a family member");
            if (!m.contains("h") || !m.contains("system"))
                fail("family members need \"h\" and \"system\"");
            const double h = positive_number(m["h"], "family member step h");
            DifferenceSystem sys = system_from_json(m["system"]);
            if (std::abs(sys.h - h) > 1e-12 * std::max(1.0, h))
                fail("explicit member step disagrees with its system at h = " + format_step(h));
            tpl.members.emplace_back(h, std::move(sys));
        }
        std::sort(tpl.members.begin(), tpl.members.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        for (std::size_t i = 1; i < tpl.members.size(); ++i)
            if (!(tpl.members[i].first < tpl.members[i - 1].first))
                fail("explicit family members must have distinct steps");
    } else {
        fail("family kind must be \"fixed\", \"scaled\", or \"explicit\", got \"" + kind + "\"");
    }
    if (j.contains("atilde")) tpl.atilde = rational_from_json(j["atilde"]);
    return tpl;
}

} // namespace

RunConfig config_from_json(const Json& j) {
    if (!j.is_object()) fail("config root must be a JSON object");
    require_keys(j,
                 {"command", "seed", "truncation", "tolerances", "output", "system",
                  "h_sequence", "grid"},
                 "the config");
    RunConfig config;
    if (j.contains("command")) {
        if (!j["command"].is_string()) fail("command must be a string");
        config.command = j["command"].get<std::string>();
        if (!is_command(config.command))
            fail("unknown command \"" + config.command +
                 "\" (expected solve, connect, conflue, monodromy, or selftest)");
    }
    if (j.contains("seed")) {
        const Json& s = j["seed"];
        if (!s.is_number_integer() || (!s.is_number_unsigned() && s.get<long long>() < 0))
            fail("seed must be a non-negative integer");
        config.seed = s.is_number_unsigned()
                          ? s.get<std::uint64_t>()
                          : static_cast<std::uint64_t>(s.get<long long>());
    }
    if (j.contains("truncation")) {
        if (!j["truncation"].is_number_integer()) fail("truncation must be an integer");
        const long long t = j["truncation"].get<long long>();
        if (t < 8 || t > static_cast<long long>(kMaxOrder))
            fail("truncation must lie in [8, " + std::to_string(kMaxOrder) + "]");
        config.truncation = static_cast<std::size_t>(t);
    }
    if (j.contains("tolerances")) {
        if (!j["tolerances"].is_object()) fail("tolerances must be an object of named gates");
        for (auto it = j["tolerances"].begin(); it != j["tolerances"].end(); ++it) {
            if (!it.value().is_number() || it.value().get<double>() < 0.0)
                fail("tolerance \"" + it.key() + "\" must be a non-negative number");
            config.tolerances[it.key()] = it.value().get<double>();
        }
    }
    if (j.contains("output")) {
        const Json& out = j["output"];
        if (!out.is_object()) fail("output must be an object with \"path\" and/or \"format\"");
        require_keys(out, {"path", "format"}, "the output block");
        if (out.contains("path")) {
            if (!out["path"].is_string()) fail("output path must be a string");
            config.out_path = out["path"].get<std::string>();
        }
        if (out.contains("format")) {
            if (!out["format"].is_string()) fail("output format must be a string");
            config.format = out["format"].get<std::string>();
        }
    }
    if (config.format != "json" && config.format != "csv")
        fail("output format must be \"json\" or \"csv\", got \"" + config.format + "\"");
    if (j.contains("h_sequence")) {
        if (!j["h_sequence"].is_array()) fail("h_sequence must be an array of positive reals");
        for (const Json& h : j["h_sequence"])
            config.h_sequence.push_back(positive_number(h, "h_sequence entry"));
    }
    if (j.contains("grid")) {
        if (!j["grid"].is_array()) fail("grid must be an array of [re, im] points");
        for (const Json& x : j["grid"]) config.grid.push_back(complex_from_json(x));
    }
    if (j.contains("system")) {
        const Json& s = j["system"];
        if (!s.is_object()) fail("system must be an object");
        if (s.contains("kind"))
            config.family = family_from_json(s);
        else
            config.system = system_from_json(s);
    }
    if (config.command == "conflue" || config.command == "monodromy")
        for (std::size_t i = 1; i < config.h_sequence.size(); ++i)
            if (!(config.h_sequence[i] < config.h_sequence[i - 1]))
                fail("h_sequence must be strictly decreasing for " + config.command);
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open config file \"" + path + "\"");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        fail("config file \"" + path + "\" is not valid JSON: " + e.what());
    }
    return config_from_json(j);
}

int resolve_threads() {
    const char* env = std::getenv("CONFLUX_THREADS");
    if (!env || !*env) return 1;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 0)
        fail("CONFLUX_THREADS must be a non-negative integer, got \"" + std::string(env) +
             "\"");
    if (v == 0) return 1; // automatic: this runner executes sequentially
    return static_cast<int>(std::min(v, 1024L));
}

double tolerance_or(const RunConfig& config, const std::string& name, double fallback) {
    const auto it = config.tolerances.find(name);
    return it == config.tolerances.end() ? fallback : it->second;
}

namespace {

void validate_for_run(const RunConfig& config) {
    if (!is_command(config.command))
        fail("unknown command \"" + config.command +
             "\" (expected solve, connect, conflue, monodromy, or selftest)");
    if (config.truncation < 8 || config.truncation > kMaxOrder)
        fail("truncation must lie in [8, " + std::to_string(kMaxOrder) + "]");
    if (config.format != "json" && config.format != "csv")
        fail("output format must be \"json\" or \"csv\", got \"" + config.format + "\"");
    if (config.format == "csv" && config.command != "connect")
        fail("csv output is only available for connect reports");
    for (double h : config.h_sequence)
        if (!(h > 0.0)) fail("h_sequence entries must be positive");
    if (config.command == "conflue" || config.command == "monodromy")
        for (std::size_t i = 1; i < config.h_sequence.size(); ++i)
            if (!(config.h_sequence[i] < config.h_sequence[i - 1]))
                fail("h_sequence must be strictly decreasing for " + config.command);
}

// Runs `body` at x, retrying at x + u h/10 on numeric failures.  Reports the
// point actually used, whether it was nudged, and the final error on defeat.
template <typename Body>
bool with_nudges(std::uint64_t seed, std::size_t index, double h, Complex x, Body&& body,
                 Complex* x_used, bool* nudged, Json* error) {
    std::mt19937_64 gen(mix_seed(seed, static_cast<std::uint64_t>(index)));
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    Complex current = x;
    for (int attempt = 0;; ++attempt) {
        try {
            body(current);
            *x_used = current;
            *nudged = attempt > 0;
            return true;
        } catch (const NumericError& e) {
            if (attempt >= 3) {
                *error = error_details(e);
                return false;
            }
            current = x + Complex(uniform(gen) * h / 10.0, 0.0);
        }
    }
}

int exit_code_for(std::size_t failures, std::size_t total) {
    if (failures == 0) return 0;
    return failures == total ? 3 : 4;
}

int run_solve(const RunConfig& config, Json& report) {
    if (!config.system)
        fail("solve needs a concrete difference system under \"system\"");
    if (config.grid.empty()) fail("solve needs a non-empty \"grid\" of evaluation points");
    const DifferenceSystem& sys = *config.system;
    const CanonicalSolution sol = canonical_solution(sys, config.truncation);
    const double residual_tol = tolerance_or(config, "residual", 1e-9);
    Json points = Json::array();
    std::size_t failures = 0;
    for (std::size_t i = 0; i < config.grid.size(); ++i) {
        const Complex x = config.grid[i];
        Matrix value;
        double res = 0.0;
        Complex x_used;
        bool nudged = false;
        Json error;
        const bool ok = with_nudges(
            config.seed, i, sys.h, x,
            [&](Complex p) {
                value = continue_to(sol, p);
                res = residual(sys, [&](Complex z) { return continue_to(sol, z); }, p);
            },
            &x_used, &nudged, &error);
        if (ok) {
            points.push_back(Json{{"x", complex_to_json(x)},
                                  {"x_used", complex_to_json(x_used)},
                                  {"nudged", nudged},
                                  {"value", matrix_to_json(value)},
                                  {"residual", res},
                                  {"within_tolerance", res <= residual_tol}});
        } else {
            ++failures;
            points.push_back(Json{{"x", complex_to_json(x)}, {"error", std::move(error)}});
        }
    }
    report = Json{{"command", "solve"},
                  {"h", sys.h},
                  {"order", config.truncation},
                  {"points", std::move(points)},
                  {"partial", failures > 0}};
    if (!sol.warning.empty()) report["warnings"] = Json::array({sol.warning});
    return exit_code_for(failures, config.grid.size());
}

int run_connect(const RunConfig& config, Json& report) {
    if (!config.system)
        fail("connect needs a concrete difference system under \"system\"");
    if (config.grid.empty()) fail("connect needs a non-empty \"grid\" of evaluation points");
    const DifferenceSystem& sys = *config.system;
    const ConnectionContext ctx = make_connection(sys, config.truncation);
    const double periodicity_tol = tolerance_or(config, "periodicity", 1e-9);
    const double det_floor = tolerance_or(config, "det_floor", 1e-12);
    Json points = Json::array();
    std::size_t failures = 0;
    for (std::size_t i = 0; i < config.grid.size(); ++i) {
        const Complex x = config.grid[i];
        Matrix p, p_shift;
        Complex x_used;
        bool nudged = false;
        Json error;
        const bool ok = with_nudges(
            config.seed, i, sys.h, x,
            [&](Complex q) {
                p = connection_matrix(ctx, q);
                p_shift = connection_matrix(ctx, q + Complex(sys.h, 0.0));
            },
            &x_used, &nudged, &error);
        if (ok) {
            const double gap = norm_rowsum(p_shift - p);
            const Complex det = p.determinant();
            points.push_back(
                Json{{"x", complex_to_json(x)},
                     {"x_used", complex_to_json(x_used)},
                     {"nudged", nudged},
                     {"P", matrix_to_json(p)},
                     {"periodicity_gap", gap},
                     {"det", complex_to_json(det)},
                     {"within_tolerance", gap <= periodicity_tol && std::abs(det) > det_floor}});
        } else {
            ++failures;
            points.push_back(Json{{"x", complex_to_json(x)}, {"error", std::move(error)}});
        }
    }
    report = Json{{"command", "connect"},
                  {"h", sys.h},
                  {"order", config.truncation},
                  {"points", std::move(points)},
                  {"partial", failures > 0}};
    Json warnings = Json::array();
    if (!ctx.plus.warning.empty()) warnings.push_back(ctx.plus.warning);
    if (!ctx.minus.warning.empty()) warnings.push_back(ctx.minus.warning);
    if (!warnings.empty()) report["warnings"] = std::move(warnings);
    return exit_code_for(failures, config.grid.size());
}

std::string format_double17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// CSV grid for connect reports: x_re, x_im, then P entries row-major as
// re/im column pairs.  Failed points carry no P sample and are skipped.
std::string connect_csv(const Json& report, int n) {
    std::string out = "x_re,x_im";
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const std::string stem = ",P_" + std::to_string(i) + "_" + std::to_string(k);
            out += stem + "_re" + stem + "_im";
        }
    out += "\n";
    for (const Json& point : report["points"]) {
        if (!point.contains("P")) continue;
        const Json& x = point["x_used"];
        out += format_double17(x[0].get<double>()) + "," + format_double17(x[1].get<double>());
        const Json& p = point["P"];
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const Json& entry = p[i][k];
                out += "," + format_double17(entry[0].get<double>()) + "," +
                       format_double17(entry[1].get<double>());
            }
        out += "\n";
    }
    return out;
}

// Assembles the h-family for conflue/monodromy: explicit members as given
// (h_sequence, when also present, must agree), template kinds instantiated
// over the configured h-sequence.
std::vector<std::pair<double, DifferenceSystem>> family_members(const RunConfig& config) {
    if (!config.family)
        fail(config.command +
             " needs a family template under \"system\" (an object with a \"kind\")");
    const FamilyTemplate& tpl = *config.family;
    if (tpl.kind == FamilyTemplate::Kind::Explicit) {
        if (!config.h_sequence.empty()) {
            if (config.h_sequence.size() != tpl.members.size())
                fail("h_sequence disagrees with the explicit family members");
            for (std::size_t i = 0; i < tpl.members.size(); ++i)
                if (std::abs(config.h_sequence[i] - tpl.members[i].first) >
                    1e-12 * std::max(1.0, tpl.members[i].first))
                    fail("h_sequence disagrees with the explicit family members");
        }
        return tpl.members;
    }
    if (config.h_sequence.empty()) fail(config.command + " needs an \"h_sequence\"");
    std::vector<std::pair<double, DifferenceSystem>> members;
    for (double h : config.h_sequence) members.emplace_back(h, family_instantiate(tpl, h));
    return members;
}

Json band_json(const std::pair<double, double>& band) {
    Json lo = std::isinf(band.first) ? Json(nullptr) : Json(band.first);
    Json hi = std::isinf(band.second) ? Json(nullptr) : Json(band.second);
    return Json::array({std::move(lo), std::move(hi)});
}

Json strips_json(const StripDecomposition& strips, const StripLimitReport& rep) {
    Json arr = Json::array();
    for (std::size_t j = 0; j < rep.limits.size(); ++j) {
        const StripDiagnostics& d = rep.diagnostics[j];
        Json entry{{"band", band_json(strips.bands[j])},
                   {"midpoint", complex_to_json(d.midpoint)},
                   {"limit", matrix_to_json(rep.limits[j])},
                   {"diffs", d.diffs},
                   {"rates", d.rates},
                   {"contracting", d.contracting},
                   {"converged", d.converged}};
        entry["constancy"] = std::isnan(d.constancy) ? Json(nullptr) : Json(d.constancy);
        arr.push_back(std::move(entry));
    }
    return arr;
}

Json poles_json(const StripDecomposition& strips) {
    Json arr = Json::array();
    for (Complex z : strips.poles) arr.push_back(complex_to_json(z));
    return arr;
}

int run_conflue(const RunConfig& config, Json& report) {
    const auto members = family_members(config);
    const RationalMatrix atilde = family_limit(*config.family);
    const StripDecomposition strips = strip_partition(atilde);
    const StripLimitReport rep = strip_limits(members, strips, config.truncation);
    report = Json{{"command", "conflue"},
                  {"poles", poles_json(strips)},
                  {"h_sequence", rep.h_sequence},
                  {"strips", strips_json(strips, rep)}};
    return 0;
}

int run_monodromy(const RunConfig& config, Json& report) {
    const auto members = family_members(config);
    const RationalMatrix atilde = family_limit(*config.family);
    const StripDecomposition strips = strip_partition(atilde);
    const StripLimitReport rep = strip_limits(members, strips, config.truncation);
    const MonodromyReport mono = monodromy(rep, strips);
    const double agreement_tol = tolerance_or(config, "monodromy_agreement", 1e-4);
    Json monodromies = Json::array();
    for (const Matrix& m : mono.monodromies) monodromies.push_back(matrix_to_json(m));
    Json oracle = Json::array();
    bool partial = false;
    for (std::size_t j = 0; j < strips.poles.size(); ++j) {
        // Loop radius: well clear of the nearest other singular point.
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < strips.poles.size(); ++k)
            if (k != j) nearest = std::min(nearest, std::abs(strips.poles[k] - strips.poles[j]));
        const double radius = std::isinf(nearest) ? 0.5 : 0.4 * nearest;
        Json entry{{"pole", complex_to_json(strips.poles[j])}, {"radius", radius}};
        try {
            const Matrix w = ode_monodromy_oracle(atilde, j, radius, 256, config.truncation);
            const double gap = norm_rowsum(mono.monodromies[j] - w);
            entry["value"] = matrix_to_json(w);
            entry["gap"] = gap;
            entry["within_tolerance"] = gap <= agreement_tol;
        } catch (const NumericError& e) {
            partial = true;
            entry["error"] = error_details(e);
        }
        oracle.push_back(std::move(entry));
    }
    report = Json{{"command", "monodromy"},
                  {"poles", poles_json(strips)},
                  {"h_sequence", rep.h_sequence},
                  {"strips", strips_json(strips, rep)},
                  {"monodromies", std::move(monodromies)},
                  {"oracle", std::move(oracle)},
                  {"partial", partial}};
    return partial ? 4 : 0;
}

void write_text(const RunConfig& config, std::ostream& console, const std::string& text) {
    if (config.out_path.empty()) {
        console << text;
        return;
    }
    std::ofstream out(config.out_path, std::ios::binary);
    if (!out) fail("cannot open output path \"" + config.out_path + "\"");
    out << text;
    out.flush();
    if (!out) fail("failed while writing \"" + config.out_path + "\"");
}

int run_selftest(const RunConfig& config, std::ostream& console) {
    const std::vector<CriterionResult> results = run_acceptance(console);
    if (!config.out_path.empty()) {
        Json criteria = Json::array();
        for (const CriterionResult& r : results)
            criteria.push_back(Json{{"index", r.index},
                                    {"name", r.name},
                                    {"passed", r.passed},
                                    {"detail", r.detail},
                                    {"seconds", r.seconds}});
        const Json report{{"command", "selftest"},
                          {"criteria", std::move(criteria)},
                          {"passed", acceptance_passed(results)}};
        write_text(config, console, report.dump(2) + "\n");
    }
    return acceptance_passed(results) ? 0 : 3;
}

void flush_error(const RunConfig& config, std::ostream& console, const Error& e) {
    const std::string text = Json{{"error", error_details(e)}}.dump(2) + "\n";
    try {
        write_text(config, console, text);
    } catch (const Error&) {
        console << text;
        return;
    }
    if (!config.out_path.empty()) console << error_type(e) << ": " << e.what() << "\n";
}

} // namespace

int run(const RunConfig& config, std::ostream& console) {
    try {
        validate_for_run(config);
        if (config.command == "selftest") return run_selftest(config, console);
        Json report;
        int code = 0;
        if (config.command == "solve")
            code = run_solve(config, report);
        else if (config.command == "connect")
            code = run_connect(config, report);
        else if (config.command == "conflue")
            code = run_conflue(config, report);
        else
            code = run_monodromy(config, report);
        std::string text;
        if (config.command == "connect" && config.format == "csv")
            text = connect_csv(report, config.system->n());
        else
            text = report.dump(2) + "\n";
        write_text(config, console, text);
        return code;
    } catch (const ValidationError& e) {
        flush_error(config, console, e);
        return 2;
    } catch (const Error& e) {
        flush_error(config, console, e);
        return 3;
    }
}

} // namespace conflux
