#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "steklov/models.hpp"
#include "steklov/numerics.hpp"

namespace steklov::verify {

/// Outcome of one named check. A check passes when `measured` is finite and
/// at most `limit`; a check that throws fails with the message in `error`.
struct CheckResult {
  std::string module;
  std::string name;
  double measured = 0.0;
  double limit = 0.0;
  bool passed = false;
  std::string error;
};

/// Modules that own invariant checks, in run order.
const std::vector<std::string>& modules();

/// Runs the invariant suite, or only the checks of `only` when non-empty.
/// Throws std::invalid_argument for an unknown module name.
std::vector<CheckResult> run_invariants(std::string_view only = {}, const Tolerances& tol = {});

/// Checks of the model constants against their reference values and the
/// identities tying them together.
std::vector<CheckResult> constants_checks(const ModelConstants& constants,
                                          const Tolerances& tol = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace steklov::verify
