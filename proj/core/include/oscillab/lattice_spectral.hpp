#pragma once

// Second-difference Toeplitz matrix on a Dirichlet lattice, its closed-form
// eigenpairs and the (unnormalized) sine eigenvector matrix S.
//
// Mode indices j and grid indices n are 1-based in every API that speaks
// about modes, matching S(n, j) = sin(pi n j / (k + 1)); raw vectors are
// stored 0-based, so lambda_j lives at lambdas[j - 1].

#include <cstddef>
#include <optional>
#include <span>

#include "oscillab/linalg.hpp"

namespace oscillab::lattice {

inline constexpr std::size_t kDefaultDenseCap = 4096;

/// The k x k tridiagonal (1, -2, 1) matrix T0.
class ToeplitzSecondDiff {
 public:
  /// Throws InvalidInput for k == 0.
  explicit ToeplitzSecondDiff(std::size_t k);

  std::size_t size() const noexcept { return k_; }
  /// 0-based entry access.
  double entry(std::size_t i, std::size_t j) const noexcept;
  Vector multiply(std::span<const double> v) const;
  SymTridiagonal tridiagonal() const;
  Matrix dense() const;

 private:
  std::size_t k_;
};

ToeplitzSecondDiff toeplitz_second_diff(std::size_t k);

/// Eigenvalues of T0 (or a frozen operator) with optional per-mode scheme
/// values R(r lambda_j - sigma) and modal coefficients a_j.
struct Spectrum {
  std::size_t k = 0;
  Vector lambdas;
  std::optional<Vector> scheme_values;
  std::optional<Vector> modal_coeffs;
};

/// lambda_j = -4 sin^2(pi j / (2 (k + 1))), 1-based j.
double analytic_eigenvalue(std::size_t k, std::size_t j);

/// All k analytic eigenvalues, strictly decreasing in j.
Spectrum analytic_eigenvalues(std::size_t k);

/// Dense S with S(n, j) = sin(pi n j / (k + 1)). Column j is the
/// eigenvector of T0 for lambda_j; S is symmetric and S^-1 = 2/(k+1) S.
class SineBasis {
 public:
  /// Throws InvalidInput for k == 0 or k > dense_cap.
  explicit SineBasis(std::size_t k, std::size_t dense_cap = kDefaultDenseCap);

  std::size_t size() const noexcept { return k_; }
  /// 1-based S(n, j).
  double operator()(std::size_t n, std::size_t j) const noexcept {
    return s_(n - 1, j - 1);
  }
  const Matrix& matrix() const noexcept { return s_; }
  /// Column x_j (1-based j), unnormalized.
  Vector eigenvector(std::size_t j) const { return s_.column(j - 1); }

  /// Discrete sine transform a = S v.
  Vector transform(std::span<const double> v) const;
  /// Inverse transform v = 2/(k+1) S a.
  Vector inverse(std::span<const double> a) const;

 private:
  std::size_t k_;
  Matrix s_;
};

/// sin(pi n j / (k + 1)) with the argument reduced in integer arithmetic.
double sine_entry(std::size_t k, std::size_t n, std::size_t j);

SineBasis sine_basis(std::size_t k);

/// One-shot DST of v (k = v.size()).
Vector dst(std::span<const double> v);

}  // namespace oscillab::lattice
