#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tl {

class UnknownTarget : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CheckResult {
  int criterion = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct VerificationOptions {
  // Restricts the catalog sweeps (criteria 9 and 10) to one catalog entry,
  // matched by label ("u2") or algebra name ("u(2)"); the fixed criteria
  // are skipped.
  std::optional<std::string> target;
  std::uint64_t seed = 20240607;
  std::size_t random_per_size = 100;
};

std::vector<CheckResult> run_verification_suite(const VerificationOptions& options = {});

std::string format_line(const CheckResult& r);

}  // namespace tl
