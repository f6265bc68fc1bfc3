#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oscillab/errors.hpp"
#include "oscillab/lattice_spectral.hpp"
#include "oscillab/nonlinear_analysis.hpp"
#include "oscillab/oscillation_conditions.hpp"

using namespace oscillab;
using namespace oscillab::nonlinear;
using schemes::builtin_scheme;
using schemes::Discretization;

namespace {

Problem make(ProblemKind kind, std::size_t k, double r, double rho, double a = 0.0,
             double dx = -1.0) {
  Problem p;
  p.kind = kind;
  if (dx < 0) dx = 1.0 / static_cast<double>(k + 1);
  p.disc = Discretization::from_ratio(k, r, dx, 1.0, rho);
  p.a_param = a;
  p.initial = Vector(k, 0.0);
  return p;
}

Vector sorted_eigenvalues(const Matrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = 0.5 * (m(i, j) + m(j, i));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s(e, Eigen::EigenvaluesOnly);
  return Vector(s.eigenvalues().data(), s.eigenvalues().data() + m.rows());
}

}  // namespace

TEST_CASE("tabulated linearizations") {
  const double rho = 1.5, a = 0.3;
  CHECK(linearize(make(ProblemKind::NonlinearRD, 5, 0.2, rho), 0.0).effective_rho == 0.0);
  CHECK(linearize(make(ProblemKind::FisherKPP, 5, 0.2, rho), 1.0).effective_rho == rho);
  CHECK(linearize(make(ProblemKind::CubicRD, 5, 0.2, rho, a), 0.0).effective_rho ==
        doctest::Approx(-rho * a));
  CHECK(linearize(make(ProblemKind::CubicRD, 5, 0.2, rho, a), 1.0).effective_rho ==
        doctest::Approx(-rho * (1 - a)));
  // The derivative of the implemented reaction, for comparison.
  CHECK(linearize(make(ProblemKind::FisherKPP, 5, 0.2, rho), 1.0).jacobian_rho ==
        doctest::Approx(-rho));
  CHECK(linearize(make(ProblemKind::CubicRD, 5, 0.2, rho, a), 0.0).jacobian_rho ==
        doctest::Approx(rho * a));
  CHECK_THROWS_AS(linearize(make(ProblemKind::FisherKPP, 5, 0.2, rho), 0.5), InvalidInput);
  CHECK_THROWS_AS(linearize(make(ProblemKind::CubicRD, 5, 0.2, rho, a), a), InvalidInput);
}

TEST_CASE("frozen matrices at zero and at equilibria") {
  const auto fe = builtin_scheme("forward_euler");
  const auto p = make(ProblemKind::NonlinearRD, 12, 0.3, 2.0);
  const Matrix diff = schemes::time_step_matrix(fe, p.disc.without_reaction());
  CHECK(max_abs_diff(frozen_jacobian(p, fe, Vector(12, 0.0)), diff) == 0.0);
  CHECK(max_abs_diff(frozen_jacobian(p, fe, Vector(12, 0.0), FrozenForm::Secant), diff) == 0.0);

  struct Case {
    ProblemKind kind;
    double about;
  };
  for (const auto& s : schemes::all_builtin_schemes()) {
    for (Case c : {Case{ProblemKind::NonlinearRD, 0.0}, Case{ProblemKind::FisherKPP, 1.0},
                   Case{ProblemKind::CubicRD, 0.0}, Case{ProblemKind::CubicRD, 1.0}}) {
      const auto q = make(c.kind, 15, 0.35, 1.3, 0.4);
      const auto lin = linearize(q, c.about);
      const Vector got = sorted_eigenvalues(frozen_jacobian(q, s, Vector(15, c.about)));
      const Vector want = linearized_frozen_spectrum(q, s, lin);
      CHECK(max_abs_diff(got, want) <= 1e-9);
      if (s.name() == "forward_euler") {
        // Same as the scheme spectrum with sigma = dt * jacobian_rho.
        auto d = q.disc;
        d.sigma = d.dt * lin.jacobian_rho;
        Vector sv = *schemes::scheme_spectrum(s, d).scheme_values;
        std::sort(sv.begin(), sv.end());
        CHECK(max_abs_diff(got, sv) <= 1e-9);
      }
    }
  }
}

TEST_CASE("linear kinds return their exact time-step matrix") {
  const auto cn = builtin_scheme("crank_nicolson");
  auto p = make(ProblemKind::LinearRD, 8, 0.5, 3.0);
  CHECK(max_abs_diff(frozen_jacobian(p, cn, Vector(8, 0.3)), schemes::time_step_matrix(cn, p.disc)) ==
        0.0);
}

TEST_CASE("guarantee for the quadratic reaction at the nonneg bound") {
  const auto fe = builtin_scheme("forward_euler");
  auto p = make(ProblemKind::NonlinearRD, 50, 0.25, 1.0);
  CHECK(linearized_nn_bound(p, fe) == doctest::Approx(0.25).epsilon(1e-12));
  const auto rep = nonlinear_nn_guarantee(p, fe);
  CHECK(rep.guaranteed);
  CHECK(rep.linearized_psd);
  CHECK(rep.difference_psd);
  CHECK_FALSE(rep.witness.has_value());
  CHECK(rep.frozen_floor >= -1e-10);

  auto q = make(ProblemKind::NonlinearRD, 50, 0.2, 1.0);
  CHECK(nonlinear_nn_guarantee(q, fe).guaranteed);
  auto bad = make(ProblemKind::NonlinearRD, 50, 0.3, 1.0);
  CHECK_FALSE(nonlinear_nn_guarantee(bad, fe).guaranteed);
}

TEST_CASE("fisher guarantee at the linearized bound") {
  const auto fe = builtin_scheme("forward_euler");
  const std::size_t k = 40;
  const double dx = 1.0 / (k + 1), rho = 3.0;
  auto p = make(ProblemKind::FisherKPP, k, 0.25, rho);
  const double r = linearized_nn_bound(p, fe);
  CHECK(r == doctest::Approx(1.0 / (4.0 + rho * dx * dx)).epsilon(1e-12));
  p = make(ProblemKind::FisherKPP, k, r, rho);
  const auto rep = nonlinear_nn_guarantee(p, fe);
  CHECK(rep.guaranteed);
  CHECK(rep.reverse_difference_psd);
  CHECK(rep.frozen_floor >= -1e-10);
  CHECK(rep.linearization.effective_rho == rho);
}

TEST_CASE("cubic about zero with a small threshold is not guaranteed") {
  const auto fe = builtin_scheme("forward_euler");
  const double a = 0.05;
  auto p = make(ProblemKind::CubicRD, 20, 0.2, 1.0, a);
  const auto rep = nonlinear_nn_guarantee(p, fe, 0.0);
  CHECK_FALSE(rep.guaranteed);
  CHECK_FALSE(rep.difference_psd);
  REQUIRE(rep.witness.has_value());
  const double xs = 0.5 * (1 + a);
  CHECK(rep.difference_argmin == doctest::Approx(xs).epsilon(1e-12));
  CHECK((*rep.witness)[0] == doctest::Approx(xs));
  CHECK(rep.difference_min ==
        doctest::Approx(p.disc.dt * (2 * a - (1 + a) * (1 + a) / 4)).epsilon(1e-10));
}

TEST_CASE("cubic difference term about one is nonnegative on a fine grid") {
  for (int ia = 0; ia <= 100; ++ia) {
    const double a = ia / 100.0;
    for (int ix = 1; ix < 1000; ++ix) {
      const double x = ix / 1000.0;
      CHECK(difference_term(ProblemKind::CubicRD, 1.0, 1.0, a, x) >= -1e-15);
    }
  }
}

TEST_CASE("admissible cubic intervals") {
  const auto zero = cubic_admissible_interval(0.0);
  REQUIRE(zero.has_value());
  CHECK(std::abs(zero->first - (3.0 - 2.0 * std::sqrt(2.0))) <= 1e-9);
  CHECK(zero->second == 1.0);
  const auto one = cubic_admissible_interval(1.0);
  REQUIRE(one.has_value());
  CHECK(one->first == 0.0);
  CHECK(one->second == 1.0);
  CHECK_THROWS_AS(cubic_admissible_interval(0.5), InvalidInput);
}

TEST_CASE("frozen floor matches brute force over constant and random states") {
  const auto fe = builtin_scheme("forward_euler");
  auto p = make(ProblemKind::CubicRD, 12, 0.2, 2.0, 0.3);
  const auto rep = nonlinear_nn_guarantee(p, fe, 0.0);
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Vector s(12);
    for (double& x : s) x = u(gen);
    const double m = sorted_eigenvalues(frozen_jacobian(p, fe, s, FrozenForm::Secant))[0];
    CHECK(m >= rep.frozen_floor - 1e-12);
  }
}

TEST_CASE("frozen matrices stay psd when the linearization dominates") {
  // Whenever M - dt N(ubar) is psd and N(ubar) - N(u) is psd, M - dt N(u) is psd.
  const auto fe = builtin_scheme("forward_euler");
  const std::size_t k = 30;
  auto p = make(ProblemKind::FisherKPP, k, 0.24, 1.0);
  p.bc = {1.0, 0.0};
  Vector u(k);
  for (std::size_t i = 0; i < k; ++i) u[i] = 1.0 - static_cast<double>(i + 1) / (k + 1);
  p.initial = u;
  const auto traj = sim::run(p, fe, 300);
  const auto rep = nonlinear_nn_guarantee(p, fe);
  REQUIRE(rep.linearized_psd);
  REQUIRE(rep.reverse_difference_psd);
  for (const auto& st : traj.states) {
    for (double x : st) REQUIRE((x >= 0.0 && x <= 1.0));
    CHECK(eigen::is_positive_definite(frozen_jacobian(p, fe, st, FrozenForm::Secant)));
  }
}

TEST_CASE("localization metrics") {
  const std::size_t k = 99;
  const auto d = eigen::tridiag_eigen(lattice::toeplitz_second_diff(k).tridiagonal());
  const auto loc = localization_metrics(d);
  // Every sine mode except the middle one has sum sin^4 = 3(k+1)/8.
  CHECK(loc[k - 1].participation_ratio == doctest::Approx(2.0 * (k + 1) / 3.0).epsilon(1e-10));
  CHECK(loc[0].center_of_mass == doctest::Approx(50.0).epsilon(1e-10));

  eigen::EigenDecomposition e{Vector{1, 2, 3}, Matrix::identity(3), 0.0};
  const auto le = localization_metrics(e);
  CHECK(le[0].participation_ratio == 1.0);
  CHECK(le[2].center_of_mass == 3.0);
}

TEST_CASE("pairing symmetry") {
  const auto d = eigen::tridiag_eigen(lattice::toeplitz_second_diff(31).tridiagonal());
  const auto pairs = pairing_symmetry(d);
  REQUIRE(pairs.size() == 31);
  for (const auto& p : pairs) {
    CHECK(p.partner == 32 - p.j);
    CHECK(p.magnitude_mismatch <= 1e-10);
  }
  const auto one = pairing_symmetry(eigen::tridiag_eigen(Vector{-2}, Vector{}));
  REQUIRE(one.size() == 1);
  CHECK(one[0].partner == 1);
  CHECK(one[0].magnitude_mismatch == 0.0);
}

TEST_CASE("fisher eigenvectors lean toward the stable equilibrium") {
  const auto fe = builtin_scheme("forward_euler");
  const std::size_t k = 60;
  auto p = make(ProblemKind::FisherKPP, k, 1.0, 1.0, 0.0, 1.0);
  p.bc = {1.0, 0.0};
  for (std::size_t i = 0; i < k; ++i) p.initial[i] = 1.0 - static_cast<double>(i + 1) / (k + 1);
  const Vector ubar = sim::steady_state(p, fe);
  for (std::size_t i = 1; i < k; ++i) CHECK(ubar[i] <= ubar[i - 1] + 1e-12);
  const auto d = eigen::symmetric_eigen(frozen_jacobian(p, fe, ubar));
  const auto loc = localization_metrics(d);
  // u = 0 is the stable state of this reaction, reached on the right.
  const double mid = 0.5 * (k + 1);
  for (std::size_t i = 0; i < 5; ++i) CHECK(loc[i].center_of_mass > mid);
  const Matrix g = d.vectors.transposed().multiply(d.vectors);
  CHECK(max_abs_diff(g, Matrix::identity(k)) <= 1e-8);
}
