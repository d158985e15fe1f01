#pragma once
/*
 * End-to-end verification scenarios.  Eight numbered criteria exercise the
 * whole pipeline — closed-form connection matrices, confluence limits,
 * monodromy cross-validation against ODE transport, factorial-series algebra,
 * gauge recurrences, character asymptotics and confluence, and global
 * periodicity/non-degeneracy of every connection sample taken along the way.
 * Each criterion prints one PASS/FAIL line with a quantitative summary; the
 * same runner backs both the standalone verification binary and the CLI
 * selftest command.
 */
#include <iosfwd>
#include <string>
#include <vector>

namespace conflux {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool passed = false;
    std::string detail;  // quantitative summary (max errors, counts, timing)
    double seconds = 0.0;
};

// Runs all criteria in order, streaming one line per criterion to `out`.
std::vector<CriterionResult> run_acceptance(std::ostream& out);

bool acceptance_passed(const std::vector<CriterionResult>& results);

} // namespace conflux
