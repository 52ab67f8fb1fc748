// Acceptance gate: one line per criterion, nonzero exit on any failure.
#include <iostream>

#include "torsionlab/verification.hpp"

int main() {
  const auto results = tl::run_verification_suite();
  bool all = true;
  for (const auto& r : results) {
    std::cout << tl::format_line(r) << '\n';
    all = all && r.pass;
  }
  std::cout << (all ? "acceptance: all criteria pass" : "acceptance: FAILED") << '\n';
  return all ? 0 : 1;
}
