#include "oscillab/tridiag_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "oscillab/errors.hpp"

namespace oscillab::eigen {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double pivot_floor(const SymTridiagonal& t) {
  double e2 = 1.0;
  for (double e : t.off) e2 = std::max(e2, e * e);
  return std::numeric_limits<double>::min() * e2;
}

// Gershgorin interval.
void bounds(const SymTridiagonal& t, double& lo, double& hi) {
  const std::size_t n = t.size();
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double rad = 0.0;
    if (i > 0) rad += std::abs(t.off[i - 1]);
    if (i + 1 < n) rad += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - rad);
    hi = std::max(hi, t.diag[i] + rad);
  }
  const double pad = 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) + pivot_floor(t);
  lo -= pad;
  hi += pad;
}

double norm1(const SymTridiagonal& t) {
  double lo, hi;
  bounds(t, lo, hi);
  return std::max(std::abs(lo), std::abs(hi));
}

// LU of (T - shift I) with partial pivoting, stored LAPACK gttrf-style.
class PivotedLu {
 public:
  PivotedLu(const SymTridiagonal& t, double shift, double tiny) {
    const std::size_t n = t.size();
    d_.resize(n);
    for (std::size_t i = 0; i < n; ++i) d_[i] = t.diag[i] - shift;
    dl_ = t.off;
    du_ = t.off;
    du2_.assign(n > 1 ? n - 1 : 0, 0.0);
    swap_.assign(n > 1 ? n - 1 : 0, 0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(d_[i]) >= std::abs(dl_[i])) {
        if (d_[i] == 0.0) d_[i] = tiny;
        const double f = dl_[i] / d_[i];
        dl_[i] = f;
        d_[i + 1] -= f * du_[i];
      } else {
        const double f = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = f;
        const double tmp = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = tmp - f * d_[i + 1];
        if (i + 2 < n) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -f * du_[i + 1];
        }
        swap_[i] = 1;
      }
    }
    for (double& p : d_)
      if (std::abs(p) < tiny) p = std::copysign(tiny, p == 0.0 ? 1.0 : p);
  }

  void solve(Vector& b) const {
    const std::size_t n = d_.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!swap_[i]) {
        b[i + 1] -= dl_[i] * b[i];
      } else {
        const double tmp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = tmp - dl_[i] * b[i];
      }
    }
    b[n - 1] /= d_[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du_[n - 2] * b[n - 1]) / d_[n - 2];
    for (std::size_t i = n >= 3 ? n - 2 : 0; i-- > 0;) {
      b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
    }
  }

 private:
  Vector d_, dl_, du_, du2_;
  std::vector<char> swap_;
};

double residual(const SymTridiagonal& t, std::span<const double> v, double lambda) {
  const Vector tv = t.multiply(v);
  double r = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) r = std::max(r, std::abs(tv[i] - lambda * v[i]));
  return r;
}

void normalize(Vector& v) {
  const double s = norm2(v);
  for (double& x : v) x /= s;
}

void fix_sign(Vector& v) {
  const double big = norm_inf(v);
  for (double x : v) {
    if (std::abs(x) > 1e-6 * big) {
      if (x < 0.0)
        for (double& y : v) y = -y;
      return;
    }
  }
}

void check_symmetric(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("matrix must be square");
  if (m.rows() == 0) throw InvalidInput("matrix must be non-empty");
  if (!m.is_symmetric(1e-12 * std::max(1.0, m.max_abs()))) {
    throw InvalidInput("matrix is not symmetric");
  }
}

// Symmetrized tridiagonal part when everything outside the band is zero.
bool exact_tridiagonal(const Matrix& m, SymTridiagonal& t) {
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((i > j + 1 || j > i + 1) && m(i, j) != 0.0) return false;
  t.diag.resize(n);
  t.off.resize(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    t.diag[i] = m(i, i);
    if (i + 1 < n) t.off[i] = 0.5 * (m(i, i + 1) + m(i + 1, i));
  }
  return true;
}

SymTridiagonal reduce(const Matrix& m) {
  SymTridiagonal t;
  if (exact_tridiagonal(m, t)) return t;
  Matrix s = m;
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s(i, j) = s(j, i) = 0.5 * (m(i, j) + m(j, i));
  return householder_tridiagonalize(s, false).tridiagonal;
}

}  // namespace

std::size_t sturm_count(const SymTridiagonal& t, double x) {
  const std::size_t n = t.size();
  const double pivmin = pivot_floor(t);
  std::size_t count = 0;
  double q = t.diag[0] - x;
  for (std::size_t i = 0;; ++i) {
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
    if (i + 1 == n) break;
    q = t.diag[i + 1] - x - t.off[i] * t.off[i] / q;
  }
  return count;
}

double tridiag_eigenvalue(const SymTridiagonal& t, std::size_t m) {
  if (m >= t.size()) throw InvalidInput("eigenvalue index out of range");
  double lo, hi;
  bounds(t, lo, hi);
  const double pivmin = pivot_floor(t);
  for (int it = 0; it < 256; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) + pivmin) break;
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(t, mid) <= m) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

EigenDecomposition tridiag_eigen(std::span<const double> diag, std::span<const double> offdiag) {
  if (diag.empty()) throw InvalidInput("tridiagonal matrix must be non-empty");
  if (offdiag.size() + 1 != diag.size()) {
    throw InvalidInput("off-diagonal length must be one less than the diagonal");
  }
  return tridiag_eigen(SymTridiagonal{Vector(diag.begin(), diag.end()),
                                      Vector(offdiag.begin(), offdiag.end())});
}

EigenDecomposition tridiag_eigen(const SymTridiagonal& t) {
  const std::size_t n = t.size();
  if (n == 0 || t.off.size() + 1 != n) throw InvalidInput("malformed tridiagonal matrix");

  EigenDecomposition out;
  out.values.resize(n);
  for (std::size_t m = 0; m < n; ++m) out.values[m] = tridiag_eigenvalue(t, m);
  out.vectors = Matrix(n, n);
  out.residual_norm = 0.0;

  const double tnorm = std::max(norm1(t), std::numeric_limits<double>::min());
  const double tiny = kEps * tnorm;
  const double gap_tol = 1e-3 * tnorm;
  const double accept = 32.0 * static_cast<double>(n) * kEps * tnorm;

  std::uint64_t state = 0x9E3779B97F4A7C15ULL;
  std::size_t cluster_start = 0;
  double prev_shift = 0.0;
  std::vector<Vector> cols;
  cols.reserve(n);

  for (std::size_t m = 0; m < n; ++m) {
    const double lambda = out.values[m];
    double shift = lambda;
    if (m > 0) {
      if (lambda - out.values[m - 1] > gap_tol) cluster_start = m;
      // Coincident shifts would reproduce the previous vector.
      if (m > cluster_start && shift - prev_shift < 10.0 * tiny) shift = prev_shift + 10.0 * tiny;
    }
    prev_shift = shift;
    const PivotedLu lu(t, shift, tiny);

    Vector v(n);
    for (double& x : v) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      x = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
    }
    bool done = false;
    int extra = -1;
    for (std::size_t it = 0; it < kInverseIterationCap; ++it) {
      lu.solve(v);
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t c = cluster_start; c < m; ++c) {
          const double proj = dot(cols[c], v);
          for (std::size_t i = 0; i < n; ++i) v[i] -= proj * cols[c][i];
        }
      }
      normalize(v);
      if (!std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); })) break;
      if (extra >= 0) {
        if (++extra >= 1) {
          done = true;
          break;
        }
      } else if (it >= 1 && residual(t, v, lambda) <= accept) {
        extra = 0;
      }
    }
    const double res = residual(t, v, lambda);
    if (!done && !(res <= accept)) {
      throw ConvergenceFailure(
          "inverse iteration did not converge at eigenvalue index " + std::to_string(m), m);
    }
    fix_sign(v);
    out.residual_norm = std::max(out.residual_norm, res);
    out.vectors.set_column(m, v);
    cols.push_back(std::move(v));
  }
  return out;
}

EigenDecomposition symmetric_eigen(const Matrix& m) {
  check_symmetric(m);
  SymTridiagonal t;
  if (exact_tridiagonal(m, t)) return tridiag_eigen(t);

  const std::size_t n = m.rows();
  Matrix s = m;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s(i, j) = s(j, i) = 0.5 * (m(i, j) + m(j, i));
  const TridiagonalReduction red = householder_tridiagonalize(s, true);
  EigenDecomposition inner = tridiag_eigen(red.tridiagonal);

  EigenDecomposition out;
  out.values = std::move(inner.values);
  out.vectors = red.q.multiply(inner.vectors);
  out.residual_norm = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    Vector v = out.vectors.column(c);
    fix_sign(v);
    out.vectors.set_column(c, v);
    const Vector mv = s.multiply(v);
    for (std::size_t i = 0; i < n; ++i)
      out.residual_norm = std::max(out.residual_norm, std::abs(mv[i] - out.values[c] * v[i]));
  }
  return out;
}

double min_eigenvalue(const Matrix& m) {
  check_symmetric(m);
  return tridiag_eigenvalue(reduce(m), 0);
}

bool is_positive_definite(const Matrix& m, double floor_tol) {
  check_symmetric(m);
  return sturm_count(reduce(m), -floor_tol) == 0;
}

}  // namespace oscillab::eigen
