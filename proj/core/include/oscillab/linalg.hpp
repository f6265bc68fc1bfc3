#pragma once

// Small dense and tridiagonal linear algebra used throughout the library.
// Matrices here are at most a few thousand rows, so everything is plain
// row-major storage with O(n^3) factorizations.

#include <cstddef>
#include <span>
#include <vector>

namespace oscillab {

using Vector = std::vector<double>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  Vector column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const double> values);

  Vector multiply(std::span<const double> v) const;
  Matrix multiply(const Matrix& other) const;
  Matrix transposed() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  bool is_symmetric(double tol) const;
  double max_abs() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);
double norm_inf(std::span<const double> v);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
double max_abs_diff(const Matrix& a, const Matrix& b);

/// LU factorization with partial pivoting. Throws SingularMatrix when a pivot
/// falls below n * eps * max|a_ij|.
class LuFactorization {
 public:
  explicit LuFactorization(Matrix a);

  Vector solve(std::span<const double> b) const;
  std::size_t size() const noexcept { return lu_.rows(); }

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
};

/// Symmetric tridiagonal matrix: `diag` has n entries, `off` has n-1.
struct SymTridiagonal {
  Vector diag;
  Vector off;

  std::size_t size() const noexcept { return diag.size(); }
  Vector multiply(std::span<const double> v) const;
  Matrix dense() const;
};

/// General tridiagonal solve by the Thomas algorithm. `lower` and `upper`
/// hold the n-1 sub/super-diagonal entries. The elimination is done once at
/// construction; `solve` is O(n).
class TridiagonalSolver {
 public:
  TridiagonalSolver(Vector lower, Vector diag, Vector upper);

  Vector solve(std::span<const double> rhs) const;
  std::size_t size() const noexcept { return diag_.size(); }

 private:
  Vector lower_;
  Vector diag_;   // eliminated pivots
  Vector upper_;
};

/// Householder reduction of a symmetric matrix to tridiagonal form,
/// A = Q T Q^T. `q` is populated only when requested.
struct TridiagonalReduction {
  SymTridiagonal tridiagonal;
  Matrix q;
};

TridiagonalReduction householder_tridiagonalize(const Matrix& symmetric,
                                                bool accumulate_q);

}  // namespace oscillab
