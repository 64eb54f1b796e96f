#pragma once

#include <string>
#include <vector>

namespace sh2geo {

struct CheckReport {
  std::string name;
  bool pass = false;
  double max_err = 0.0;
  double tol = 0.0;
  std::string note;
};

/// Runs one verification suite: "elliptic", "oracle", "symmetry",
/// "roundtrip", "strata" or "all".  Throws std::domain_error for unknown
/// suite names.
std::vector<CheckReport> verify_suite(const std::string& suite);

}  // namespace sh2geo
