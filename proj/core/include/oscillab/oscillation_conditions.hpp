#pragma once

// Oscillation-free and fast-decay conditions on scheme eigenvalues, the
// largest admissible mesh ratio r for each, and the resulting classification
// of a (scheme, r, sigma, initial data) configuration.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oscillab/lattice_spectral.hpp"
#include "oscillab/schemes.hpp"
#include "oscillab/tolerances.hpp"

namespace oscillab::conditions {

enum class Classification {
  NonOscillatory,
  FastDecayingOscillations,
  PersistentOscillations,
  Unstable,
};

std::string_view to_string(Classification c) noexcept;
/// 0 = NonOscillatory, 1 = FastDecaying, 2 = Persistent, 3 = Unstable.
int exit_code(Classification c) noexcept;

struct ModeRecord {
  std::size_t j = 0;  // 1-based
  double lambda = 0.0;
  double scheme_value = 0.0;
  double modal_coeff = 0.0;
  bool nonneg_ok = true;
  std::size_t pair_index = 0;  // k + 1 - j
  double pair_sum = 0.0;       // R_j + R_{k+1-j}
  bool balanced_value_ok = true;
  bool balanced_coeff_ok = true;
};

struct ConditionReport {
  std::vector<ModeRecord> per_mode;
  bool nonneg_pass = true;
  bool balanced_pass = true;
  Classification classification = Classification::NonOscillatory;
};

/// Per-mode check of R_j >= -tol or |a_j| <= coeff_tol. The returned report
/// also carries the balanced flags; classification ignores stability.
/// Throws InvalidInput if scheme values or coefficients are missing.
ConditionReport nonneg_condition(const lattice::Spectrum& spec, const Tolerances& tol = {});

/// Pairwise check R_j + R_{k+1-j} >= -tol and |a_j| >= |a_{k+1-j}| - coeff_tol
/// for j <= floor((k+1)/2). Same report shape as nonneg_condition.
ConditionReport balanced_condition(const lattice::Spectrum& spec, const Tolerances& tol = {});

/// Largest admissible r, or an unbounded / infeasible marker.
class RBound {
 public:
  enum class Kind { Finite, Unbounded, Infeasible };

  static RBound finite(double value) { return RBound(Kind::Finite, value); }
  static RBound unbounded() { return RBound(Kind::Unbounded, 0.0); }
  static RBound infeasible() { return RBound(Kind::Infeasible, 0.0); }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  /// Meaningful only for finite bounds.
  double value() const noexcept { return value_; }
  /// r <= bound (1 + rel_slack), ties counted as admissible.
  bool admits(double r, double rel_slack = 0.0) const noexcept;
  /// "0.25", "unbounded" or "infeasible".
  std::string to_string() const;

  friend bool operator==(const RBound&, const RBound&) = default;

 private:
  RBound(Kind k, double v) : kind_(k), value_(v) {}
  Kind kind_;
  double value_;
};

/// Largest r with R(r lambda - sigma) >= 0 for all lambda in [-4, 0].
/// Located exactly from the sign changes of p and q left of -sigma.
RBound max_r_nonneg(const schemes::RationalScheme& scheme, double sigma);

/// Largest r with min over theta in [0, pi/2] of
/// R(-4r sin^2 theta - sigma) + R(-4r cos^2 theta - sigma) >= 0.
RBound max_r_balanced(const schemes::RationalScheme& scheme, double sigma);

/// Largest r with |R(r lambda - sigma)| <= 1 for all lambda in [-4, 0].
RBound max_r_stable(const schemes::RationalScheme& scheme, double sigma);

/// Discrete counterparts evaluated on an actual grid spectrum (lambdas
/// ordered by mode, as produced by analytic_eigenvalues).
RBound max_r_nonneg(const schemes::RationalScheme& scheme, double sigma,
                    std::span<const double> lambdas);
RBound max_r_balanced(const schemes::RationalScheme& scheme, double sigma,
                      std::span<const double> lambdas);
RBound max_r_stable(const schemes::RationalScheme& scheme, double sigma,
                    std::span<const double> lambdas);

/// Unstable if r exceeds the stability bound, else the most benign class
/// whose condition holds for the given modal coefficients.
ConditionReport classify(const schemes::RationalScheme& scheme,
                         const schemes::Discretization& disc, std::span<const double> coeffs,
                         const Tolerances& tol = {});

/// One row of the bounds table.
struct BoundsRow {
  std::string scheme;
  double sigma = 0.0;
  RBound nonneg = RBound::infeasible();
  RBound balanced = RBound::infeasible();
  RBound stable = RBound::infeasible();
};

/// Bounds for every scheme x sigma cell, in scheme-major order.
std::vector<BoundsRow> bounds_table(const std::vector<schemes::RationalScheme>& schemes,
                                    std::span<const double> sigmas);

}  // namespace oscillab::conditions
