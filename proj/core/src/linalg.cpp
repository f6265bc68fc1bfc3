#include "oscillab/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "oscillab/errors.hpp"

namespace oscillab {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

void Matrix::set_column(std::size_t j, std::span<const double> values) {
  assert(values.size() == rows_);
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
}

Vector Matrix::multiply(std::span<const double> v) const {
  if (v.size() != cols_) throw InvalidInput("matrix-vector size mismatch");
  Vector out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const auto r = row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += r[j] * v[j];
    out[i] = s;
  }
  return out;
}

Matrix Matrix::multiply(const Matrix& other) const {
  if (cols_ != other.rows_) throw InvalidInput("matrix-matrix size mismatch");
  Matrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t l = 0; l < cols_; ++l) {
      const double a = (*this)(i, l);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(l, j);
    }
  }
  return out;
}

Matrix Matrix::transposed() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidInput("matrix size mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidInput("matrix size mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

bool Matrix::is_symmetric(double tol) const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
  return true;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(double s, Matrix a) { return a *= s; }

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double norm_inf(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidInput("vector size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidInput("matrix size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

LuFactorization::LuFactorization(Matrix a) : lu_(std::move(a)), perm_(lu_.rows()) {
  const std::size_t n = lu_.rows();
  if (n == 0 || lu_.cols() != n) throw InvalidInput("LU requires a non-empty square matrix");
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  const double scale = std::max(lu_.max_abs(), std::numeric_limits<double>::min());
  const double tiny = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * scale;

  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t i = c + 1; i < n; ++i)
      if (std::abs(lu_(i, c)) > std::abs(lu_(p, c))) p = i;
    if (std::abs(lu_(p, c)) <= tiny) {
      throw SingularMatrix("matrix is singular to working precision (column " +
                           std::to_string(c) + ")");
    }
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(p, j), lu_(c, j));
      std::swap(perm_[p], perm_[c]);
    }
    const double pivot = lu_(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      const double f = lu_(i, c) / pivot;
      lu_(i, c) = f;
      if (f == 0.0) continue;
      for (std::size_t j = c + 1; j < n; ++j) lu_(i, j) -= f * lu_(c, j);
    }
  }
}

Vector LuFactorization::solve(std::span<const double> b) const {
  const std::size_t n = size();
  if (b.size() != n) throw InvalidInput("LU solve size mismatch");
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[perm_[i]];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * x[j];
    x[i] = s / lu_(i, i);
  }
  return x;
}

Vector SymTridiagonal::multiply(std::span<const double> v) const {
  const std::size_t n = size();
  if (v.size() != n) throw InvalidInput("tridiagonal multiply size mismatch");
  Vector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[i] * v[i];
    if (i > 0) s += off[i - 1] * v[i - 1];
    if (i + 1 < n) s += off[i] * v[i + 1];
    out[i] = s;
  }
  return out;
}

Matrix SymTridiagonal::dense() const {
  const std::size_t n = size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = diag[i];
    if (i + 1 < n) {
      m(i, i + 1) = off[i];
      m(i + 1, i) = off[i];
    }
  }
  return m;
}

TridiagonalSolver::TridiagonalSolver(Vector lower, Vector diag, Vector upper)
    : lower_(std::move(lower)), diag_(std::move(diag)), upper_(std::move(upper)) {
  const std::size_t n = diag_.size();
  if (n == 0 || lower_.size() + 1 != n || upper_.size() + 1 != n) {
    throw InvalidInput("tridiagonal solver: inconsistent band lengths");
  }
  double scale = 0.0;
  for (double x : diag_) scale = std::max(scale, std::abs(x));
  for (double x : lower_) scale = std::max(scale, std::abs(x));
  for (double x : upper_) scale = std::max(scale, std::abs(x));
  const double tiny = 64.0 * std::numeric_limits<double>::epsilon() *
                      std::max(scale, std::numeric_limits<double>::min());

  // Forward elimination; lower_[i-1] is overwritten with the multiplier.
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      const double m = lower_[i - 1] / diag_[i - 1];
      lower_[i - 1] = m;
      diag_[i] -= m * upper_[i - 1];
    }
    if (std::abs(diag_[i]) <= tiny) {
      throw SingularMatrix("tridiagonal system is singular (pivot " + std::to_string(i) + ")");
    }
  }
}

Vector TridiagonalSolver::solve(std::span<const double> rhs) const {
  const std::size_t n = size();
  if (rhs.size() != n) throw InvalidInput("tridiagonal solve size mismatch");
  Vector x(rhs.begin(), rhs.end());
  for (std::size_t i = 1; i < n; ++i) x[i] -= lower_[i - 1] * x[i - 1];
  x[n - 1] /= diag_[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (x[i] - upper_[i] * x[i + 1]) / diag_[i];
  return x;
}

TridiagonalReduction householder_tridiagonalize(const Matrix& symmetric, bool accumulate_q) {
  const std::size_t n = symmetric.rows();
  if (n == 0 || symmetric.cols() != n) throw InvalidInput("tridiagonalization needs a square matrix");
  Matrix a = symmetric;
  Matrix q = accumulate_q ? Matrix::identity(n) : Matrix{};

  Vector v(n), p(n), w(n);
  for (std::size_t c = 0; c + 2 < n; ++c) {
    // Reflector zeroing a(c+2.., c).
    double alpha = 0.0;
    for (std::size_t i = c + 1; i < n; ++i) alpha += a(i, c) * a(i, c);
    alpha = std::sqrt(alpha);
    if (alpha == 0.0) continue;
    if (a(c + 1, c) > 0) alpha = -alpha;

    std::fill(v.begin(), v.end(), 0.0);
    v[c + 1] = a(c + 1, c) - alpha;
    for (std::size_t i = c + 2; i < n; ++i) v[i] = a(i, c);
    double vnorm2 = 0.0;
    for (std::size_t i = c + 1; i < n; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 == 0.0) continue;
    const double beta = 2.0 / vnorm2;

    // A <- H A H with H = I - beta v v^T, via p = beta A v, w = p - (beta/2)(v.p) v.
    for (std::size_t i = c; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = c + 1; j < n; ++j) s += a(i, j) * v[j];
      p[i] = beta * s;
    }
    double vp = 0.0;
    for (std::size_t i = c + 1; i < n; ++i) vp += v[i] * p[i];
    const double kfac = 0.5 * beta * vp;
    for (std::size_t i = c; i < n; ++i) w[i] = p[i] - kfac * v[i];
    for (std::size_t i = c; i < n; ++i)
      for (std::size_t j = c; j < n; ++j) a(i, j) -= v[i] * w[j] + w[i] * v[j];

    if (accumulate_q) {
      // Q <- Q H
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = c + 1; j < n; ++j) s += q(i, j) * v[j];
        s *= beta;
        for (std::size_t j = c + 1; j < n; ++j) q(i, j) -= s * v[j];
      }
    }
  }

  TridiagonalReduction out;
  out.tridiagonal.diag.resize(n);
  out.tridiagonal.off.resize(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) {
    out.tridiagonal.diag[i] = a(i, i);
    if (i + 1 < n) out.tridiagonal.off[i] = 0.5 * (a(i + 1, i) + a(i, i + 1));
  }
  out.q = std::move(q);
  return out;
}

}  // namespace oscillab
