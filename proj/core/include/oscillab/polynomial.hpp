#pragma once

#include <span>
#include <vector>

namespace oscillab {

/// Real polynomial with coefficients in ascending degree: c0 + c1 z + ...
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  /// Degree after dropping trailing zeros; -1 for the zero polynomial.
  int degree() const noexcept;
  double operator()(double z) const noexcept;

  Polynomial derivative() const;
  /// (p(z) - p(0)) / z.
  Polynomial shift_down() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Real roots in the open interval (lo, hi) at which the polynomial changes
  /// sign, ascending. Roots of even multiplicity are not reported.
  std::vector<double> sign_change_roots(double lo, double hi) const;

  /// Cauchy bound: every root satisfies |z| < bound.
  double root_bound() const;

 private:
  std::vector<double> coeffs_;
};

}  // namespace oscillab
