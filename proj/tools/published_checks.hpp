#pragma once

#include <string>
#include <vector>

namespace harmkern::cli {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Regression suite against the published closed-form coefficients.
std::vector<Check> run_published_checks();

}  // namespace harmkern::cli
