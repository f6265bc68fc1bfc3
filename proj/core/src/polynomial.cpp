#include "oscillab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace oscillab {
namespace {

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

// Bisection on a bracket [a, b] with sign(p(a)) * sign(p(b)) < 0.
double bisect(const Polynomial& p, double a, double b) {
  int sa = sign_of(p(a));
  for (int it = 0; it < 400; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const int sm = sign_of(p(m));
    if (sm == 0) return m;
    if (sm == sa) {
      a = m;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

int Polynomial::degree() const noexcept {
  for (std::size_t i = coeffs_.size(); i-- > 0;)
    if (coeffs_[i] != 0.0) return static_cast<int>(i);
  return -1;
}

double Polynomial::operator()(double z) const noexcept {
  double acc = 0.0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * z + coeffs_[i];
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::shift_down() const {
  if (coeffs_.size() <= 1) return Polynomial({0.0});
  return Polynomial(std::vector<double>(coeffs_.begin() + 1, coeffs_.end()));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
  return Polynomial(std::move(c));
}

double Polynomial::root_bound() const {
  const int n = degree();
  if (n <= 0) return 1.0;
  double m = 0.0;
  for (int i = 0; i < n; ++i) m = std::max(m, std::abs(coeffs_[i] / coeffs_[n]));
  return 1.0 + m;
}

std::vector<double> Polynomial::sign_change_roots(double lo, double hi) const {
  const int n = degree();
  std::vector<double> roots;
  if (n <= 0 || !(lo < hi)) return roots;
  if (n == 1) {
    const double z = -coeffs_[0] / coeffs_[1];
    if (z > lo && z < hi) roots.push_back(z);
    return roots;
  }
  // Between consecutive extrema the polynomial is monotone, so each such
  // piece holds at most one crossing.
  std::vector<double> knots{lo};
  for (double c : derivative().sign_change_roots(lo, hi)) knots.push_back(c);
  knots.push_back(hi);
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i];
    const double b = knots[i + 1];
    const int sa = sign_of((*this)(a));
    const int sb = sign_of((*this)(b));
    if (sa * sb < 0) roots.push_back(bisect(*this, a, b));
    // Odd-multiplicity root sitting exactly on an extremum-free knot.
    if (sb == 0 && i + 2 < knots.size() && sa * sign_of((*this)(knots[i + 2])) < 0) {
      roots.push_back(b);
    }
  }
  return roots;
}

}  // namespace oscillab
