#pragma once

#include <string_view>

namespace oscillab {

/// Floating comparison thresholds shared by the analysis modules.
///
/// `absolute` applies to O(1) quantities, `relative` elsewhere. `condition`
/// is the slack accepted on the eigenvalue inequalities (R >= -condition) and
/// `coefficient` is the modal-coefficient cutoff relative to max |a_j|.
struct Tolerances {
  double absolute = 1e-10;
  double relative = 1e-9;
  double condition = 1e-9;
  double coefficient = 1e-12;

  /// Parses an override string. A bare number replaces `condition`;
  /// otherwise a comma-separated list of `abs=`, `rel=`, `cond=`, `coeff=`.
  /// Throws InvalidInput on malformed text.
  static Tolerances parse(std::string_view text, Tolerances base);
  static Tolerances parse(std::string_view text);

  /// Defaults, overridden by the OSCILLAB_TOL environment variable if set.
  static Tolerances from_environment();
};

}  // namespace oscillab
