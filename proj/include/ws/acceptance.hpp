#pragma once

// The acceptance criteria, shared by the acceptance binary and `ws selftest`.

#include <functional>
#include <string>
#include <vector>

#include "ws/config.hpp"

namespace ws {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

using CriterionReporter = std::function<void(const CriterionResult&)>;

// Criteria 1..10.  `only` restricts the set (empty: all).  The reporter, if
// given, is called as each criterion finishes.
std::vector<CriterionResult> run_acceptance(const RunConfig& cfg, const std::vector<int>& only = {},
                                            const CriterionReporter& report = {});

// "PASS  3  title  (detail) [12.3 s]"
std::string format_line(const CriterionResult& r);

// Pairing of the rho = 1 J.J integral written directly as a principal value
// plus a delta at x = 1, from the pointwise closed form with arguments x^{-2}
// (x > 1) and x^2 (x < 1).  Used as the independent side of criterion 2.
cplx rho1_principal_value_pairing(double mu, double nu, const TestFunction& phi);

}  // namespace ws
