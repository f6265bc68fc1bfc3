#pragma once

// Symmetric eigensolver: Sturm-sequence bisection for eigenvalues, inverse
// iteration for eigenvectors. Dense symmetric input is reduced to
// tridiagonal form first.

#include <cstddef>
#include <span>

#include "oscillab/linalg.hpp"

namespace oscillab::eigen {

struct EigenDecomposition {
  Vector values;          // ascending
  Matrix vectors;         // column i pairs with values[i]; unit norm
  double residual_norm;   // max_i ||A v_i - values[i] v_i||_inf
};

inline constexpr std::size_t kInverseIterationCap = 64;

/// Number of eigenvalues strictly below x.
std::size_t sturm_count(const SymTridiagonal& t, double x);

/// The m-th smallest eigenvalue (0-based) by bisection.
double tridiag_eigenvalue(const SymTridiagonal& t, std::size_t m);

/// Every eigenpair. Eigenvector signs are fixed so that the first component
/// of non-negligible size is positive. Throws ConvergenceFailure naming the
/// eigenvalue index when inverse iteration does not settle within the cap.
EigenDecomposition tridiag_eigen(std::span<const double> diag, std::span<const double> offdiag);
EigenDecomposition tridiag_eigen(const SymTridiagonal& t);

/// Full decomposition of a symmetric matrix. Throws InvalidInput when the
/// matrix is not symmetric within 1e-12 (relative to its largest entry).
EigenDecomposition symmetric_eigen(const Matrix& m);

double min_eigenvalue(const Matrix& m);

/// True iff every eigenvalue exceeds -floor_tol (the non-strict, "positive
/// semidefinite at tolerance" reading). Throws InvalidInput on asymmetry.
bool is_positive_definite(const Matrix& m, double floor_tol = 1e-12);

}  // namespace oscillab::eigen
