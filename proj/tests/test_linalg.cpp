#include <cmath>
#include <random>

#include "doctest.h"
#include "oscillab/errors.hpp"
#include "oscillab/linalg.hpp"
#include "oscillab/polynomial.hpp"

using namespace oscillab;

namespace {

Matrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = u(gen);
  return m;
}

}  // namespace

TEST_CASE("lu solve recovers a known solution") {
  const Matrix a = random_matrix(12, 7);
  Vector x(12);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(static_cast<double>(i));
  const Vector b = a.multiply(x);
  const Vector y = LuFactorization(a).solve(b);
  CHECK(max_abs_diff(x, y) < 1e-12);
}

TEST_CASE("lu rejects a singular matrix") {
  Matrix a(3, 3);
  a(0, 0) = 1;
  a(0, 1) = 2;
  a(1, 0) = 2;
  a(1, 1) = 4;
  a(2, 2) = 1;
  CHECK_THROWS_AS(LuFactorization{a}, SingularMatrix);
}

TEST_CASE("thomas solve agrees with dense lu") {
  const std::size_t n = 20;
  Vector lo(n - 1, -0.3), di(n, 2.5), up(n - 1, 0.7);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = di[i];
    if (i + 1 < n) {
      a(i + 1, i) = lo[i];
      a(i, i + 1) = up[i];
    }
  }
  Vector b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = 1.0 + 0.1 * static_cast<double>(i);
  const Vector x1 = TridiagonalSolver(lo, di, up).solve(b);
  const Vector x2 = LuFactorization(a).solve(b);
  CHECK(max_abs_diff(x1, x2) < 1e-13);
}

TEST_CASE("thomas flags a zero pivot") {
  CHECK_THROWS_AS(TridiagonalSolver({1.0}, {1.0, 1.0}, {1.0}), SingularMatrix);
}

TEST_CASE("householder reduction reproduces the matrix") {
  Matrix a = random_matrix(9, 3);
  a = a + a.transposed();
  const auto red = householder_tridiagonalize(a, true);
  const Matrix t = red.tridiagonal.dense();
  const Matrix back = red.q.multiply(t).multiply(red.q.transposed());
  CHECK(max_abs_diff(a, back) < 1e-12);
  const Matrix qtq = red.q.transposed().multiply(red.q);
  CHECK(max_abs_diff(qtq, Matrix::identity(9)) < 1e-13);
}

TEST_CASE("polynomial evaluation, derivative and shift") {
  const Polynomial p({1.0, -3.0, 0.0, 2.0});  // 1 - 3z + 2z^3
  CHECK(p.degree() == 3);
  CHECK(p(2.0) == doctest::Approx(11.0));
  CHECK(p.derivative()(2.0) == doctest::Approx(21.0));
  CHECK(p.shift_down()(2.0) == doctest::Approx(5.0));
  CHECK((p - p).degree() == -1);
}

TEST_CASE("sign change roots of a cubic with known roots") {
  // (z - 1)(z + 2)(z - 3) = z^3 - 2z^2 - 5z + 6
  const Polynomial p({6.0, -5.0, -2.0, 1.0});
  const auto roots = p.sign_change_roots(-10.0, 10.0);
  REQUIRE(roots.size() == 3);
  std::vector<double> sorted = roots;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted[0] == doctest::Approx(-2.0).epsilon(1e-13));
  CHECK(sorted[1] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(sorted[2] == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("double roots do not count as sign changes") {
  const Polynomial p({1.0, -2.0, 1.0});  // (z - 1)^2
  CHECK(p.sign_change_roots(-5.0, 5.0).empty());
}
