#include "oscillab/lattice_spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "oscillab/errors.hpp"

namespace oscillab::lattice {
namespace {

void require_grid(std::size_t k) {
  if (k == 0) throw InvalidInput("invalid grid: k must be at least 1");
}

}  // namespace

ToeplitzSecondDiff::ToeplitzSecondDiff(std::size_t k) : k_(k) { require_grid(k); }

double ToeplitzSecondDiff::entry(std::size_t i, std::size_t j) const noexcept {
  if (i == j) return -2.0;
  if (i + 1 == j || j + 1 == i) return 1.0;
  return 0.0;
}

Vector ToeplitzSecondDiff::multiply(std::span<const double> v) const {
  if (v.size() != k_) throw InvalidInput("T0 multiply: length mismatch");
  Vector out(k_);
  for (std::size_t i = 0; i < k_; ++i) {
    double s = -2.0 * v[i];
    if (i > 0) s += v[i - 1];
    if (i + 1 < k_) s += v[i + 1];
    out[i] = s;
  }
  return out;
}

SymTridiagonal ToeplitzSecondDiff::tridiagonal() const {
  return SymTridiagonal{Vector(k_, -2.0), Vector(k_ - 1, 1.0)};
}

Matrix ToeplitzSecondDiff::dense() const { return tridiagonal().dense(); }

ToeplitzSecondDiff toeplitz_second_diff(std::size_t k) { return ToeplitzSecondDiff(k); }

double analytic_eigenvalue(std::size_t k, std::size_t j) {
  require_grid(k);
  if (j == 0 || j > k) throw InvalidInput("mode index out of range");
  const double s = std::sin(std::numbers::pi * static_cast<double>(j) /
                            (2.0 * static_cast<double>(k + 1)));
  return -4.0 * s * s;
}

Spectrum analytic_eigenvalues(std::size_t k) {
  require_grid(k);
  Spectrum spec;
  spec.k = k;
  spec.lambdas.resize(k);
  for (std::size_t j = 1; j <= k; ++j) spec.lambdas[j - 1] = analytic_eigenvalue(k, j);
  return spec;
}

double sine_entry(std::size_t k, std::size_t n, std::size_t j) {
  // sin(pi m / (k+1)) is 2(k+1)-periodic in m.
  const std::size_t period = 2 * (k + 1);
  const std::size_t m = (n * j) % period;
  return std::sin(std::numbers::pi * static_cast<double>(m) / static_cast<double>(k + 1));
}

SineBasis::SineBasis(std::size_t k, std::size_t dense_cap) : k_(k) {
  require_grid(k);
  if (k > dense_cap) {
    throw InvalidInput("sine basis: k = " + std::to_string(k) + " exceeds dense cap " +
                       std::to_string(dense_cap));
  }
  s_ = Matrix(k, k);
  for (std::size_t n = 1; n <= k; ++n)
    for (std::size_t j = n; j <= k; ++j) {
      const double v = sine_entry(k, n, j);
      s_(n - 1, j - 1) = v;
      s_(j - 1, n - 1) = v;
    }
}

Vector SineBasis::transform(std::span<const double> v) const {
  if (v.size() != k_) {
    throw InvalidInput("dst: length " + std::to_string(v.size()) + " does not match k = " +
                       std::to_string(k_));
  }
  return s_.multiply(v);
}

Vector SineBasis::inverse(std::span<const double> a) const {
  Vector v = transform(a);
  const double scale = 2.0 / static_cast<double>(k_ + 1);
  for (double& x : v) x *= scale;
  return v;
}

SineBasis sine_basis(std::size_t k) { return SineBasis(k); }

Vector dst(std::span<const double> v) { return SineBasis(v.size()).transform(v); }

}  // namespace oscillab::lattice
