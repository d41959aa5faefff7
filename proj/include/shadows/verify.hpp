// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#ifndef SHADOWS_VERIFY_HPP_
#define SHADOWS_VERIFY_HPP_

#include <string>
#include <vector>

namespace shadows {

struct CheckResult {
  std::string name;
  bool pass = false;
  double max_err = 0.0;
  std::string detail;
};

/// Runs the named invariant suites at desk scale (n <= 2 for exact checks).
/// `filter` keeps only checks whose name contains it as a substring.
std::vector<CheckResult> run_verify_checks(const std::string& filter = "");

/// Names of all registered checks, in execution order.
std::vector<std::string> verify_check_names();

}  // namespace shadows

#endif  // SHADOWS_VERIFY_HPP_
