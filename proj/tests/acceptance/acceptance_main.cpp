// Runs every acceptance criterion against the bundled scenario files and
// prints one PASS/FAIL line per criterion.
#include <cstdio>
#include <iostream>

#include "predprey_app/acceptance.hpp"

int main() {
  predprey::app::AcceptanceOptions opts;
  opts.scenarios_dir = PREDPREY_TEST_SCENARIO_DIR;
  opts.on_line = [](const std::string& line) { std::cout << line << std::endl; };
  try {
    const auto report = predprey::app::run_acceptance(opts);
    std::size_t passed = 0;
    for (const auto& r : report.results) passed += r.passed ? 1 : 0;
    std::cout << passed << " of " << report.results.size() << " criteria passed" << std::endl;
    return report.all_passed() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "acceptance suite aborted: " << e.what() << std::endl;
    return 1;
  }
}
