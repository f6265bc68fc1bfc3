#pragma once

// Time-stepping schemes as rational amplification functions R(z) = p(z)/q(z).
//
// For the semi-discrete system du/dt = (delta/dx^2) (T0 u + b) - rho u the
// per-step generator is A = r T0 - sigma I with r = delta dt / dx^2 and
// sigma = rho dt, and one step of a scheme is u <- q(A)^-1 p(A) u + B.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "oscillab/lattice_spectral.hpp"
#include "oscillab/linalg.hpp"
#include "oscillab/polynomial.hpp"

namespace oscillab::schemes {

class RationalScheme {
 public:
  /// Throws InvalidInput when q(0) == 0 or p(0)/q(0) != 1.
  RationalScheme(std::string name, std::vector<double> p_coeffs, std::vector<double> q_coeffs);

  const std::string& name() const noexcept { return name_; }
  const Polynomial& numerator() const noexcept { return p_; }
  const Polynomial& denominator() const noexcept { return q_; }
  bool is_explicit() const noexcept { return q_.degree() == 0; }

  /// "p: 1,1,0.5 / q: 1", accepted back by parse_scheme.
  std::string describe() const;

 private:
  std::string name_;
  Polynomial p_;
  Polynomial q_;
};

/// Degree-m Taylor polynomial of exp (classical RK-m on linear systems).
/// 1 <= m <= 12.
RationalScheme taylor_scheme(int m);

/// forward_euler, backward_euler, crank_nicolson, taylor(m) (also taylorM, rkM).
RationalScheme builtin_scheme(std::string_view name);

/// A builtin name or a custom "p: c0,c1,... / q: c0,..." description.
RationalScheme parse_scheme(std::string_view text);

/// forward_euler, taylor(3), taylor(5), crank_nicolson: the schemes whose
/// bounds are tabulated for the heat equation.
std::vector<RationalScheme> table_schemes();

/// Every builtin: the table schemes plus backward_euler, taylor(2), taylor(4).
std::vector<RationalScheme> all_builtin_schemes();

/// R(z) by Horner evaluation. Throws PoleError when q(z) vanishes.
double amplification(const RationalScheme& scheme, double z);

struct Discretization {
  std::size_t k = 0;
  double dx = 0.0;
  double dt = 0.0;
  double delta = 0.0;
  double rho = 0.0;
  double r = 0.0;      // delta dt / dx^2
  double sigma = 0.0;  // rho dt

  /// Derives r and sigma from the step sizes.
  static Discretization from_time_step(std::size_t k, double dx, double dt, double delta,
                                       double rho = 0.0);
  /// Stores r as given and derives dt = r dx^2 / delta.
  static Discretization from_ratio(std::size_t k, double r, double dx, double delta,
                                   double rho = 0.0);
  /// Unit diffusivity and spacing, so dt == r and sigma == rho * r.
  static Discretization unit(std::size_t k, double r, double rho = 0.0);

  /// Same grid and steps with the reaction removed (sigma = 0).
  Discretization without_reaction() const;
};

struct BoundaryData {
  double left = 0.0;
  double right = 0.0;
};

/// Applies M = q(A)^-1 p(A) and assembles the boundary vector for a fixed
/// scheme and generator A = r T0 - sigma I. Factorizes q(A) once: scalar for
/// explicit schemes, Thomas for degree-1 q, pivoted LU otherwise.
class SchemeOperator {
 public:
  /// Throws SingularMatrix when q(A) is singular.
  SchemeOperator(const RationalScheme& scheme, std::size_t k, double r, double sigma);
  SchemeOperator(const RationalScheme& scheme, const Discretization& disc);

  std::size_t size() const noexcept { return generator_.size(); }
  const SymTridiagonal& generator() const noexcept { return generator_; }

  Vector apply(std::span<const double> u) const;
  /// B = q(A)^-1 g(A) b with b = r (left, 0, ..., 0, right) and
  /// g(z) = (p(z) - q(z)) / z, so that (I - M)^-1 B solves the discrete
  /// boundary-value problem exactly.
  Vector boundary_vector(const BoundaryData& bc) const;
  Matrix dense() const;

 private:
  Vector poly_apply(const Polynomial& poly, std::span<const double> v) const;
  Vector solve_denominator(Vector rhs) const;

  Polynomial p_;
  Polynomial q_;
  Polynomial g_;
  double r_;
  SymTridiagonal generator_;
  std::variant<double, TridiagonalSolver, LuFactorization> denominator_;
};

/// Dense k x k time-step matrix M.
Matrix time_step_matrix(const RationalScheme& scheme, const Discretization& disc);

Vector boundary_vector(const RationalScheme& scheme, const Discretization& disc,
                       const BoundaryData& bc);

/// Analytic lambda_j with scheme values R(r lambda_j - sigma).
/// Throws PoleError naming the 1-based mode on a pole.
lattice::Spectrum scheme_spectrum(const RationalScheme& scheme, const Discretization& disc);

}  // namespace oscillab::schemes
