// Standalone acceptance runner: one PASS/FAIL line per criterion on stdout,
// exit status 0 only when every criterion passes.
#include <iostream>

#include "conflux/acceptance.hpp"

int main() {
    const auto results = conflux::run_acceptance(std::cout);
    return conflux::acceptance_passed(results) ? 0 : 1;
}
