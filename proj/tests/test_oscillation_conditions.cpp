#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oscillab/errors.hpp"
#include "oscillab/lattice_spectral.hpp"
#include "oscillab/oscillation_conditions.hpp"
#include "oscillab/schemes.hpp"

using namespace oscillab;
using namespace oscillab::conditions;
using schemes::builtin_scheme;
using schemes::Discretization;

namespace {

double R(const schemes::RationalScheme& s, double z) { return schemes::amplification(s, z); }

// Brute-force references: dense scans with no root finding.
double scan_nonneg(const schemes::RationalScheme& s) {
  const int n = 2'000'000;
  for (int i = 1; i <= n; ++i) {
    const double z = -8.0 * i / n;
    if (R(s, z) < 0.0) return -(z + 4.0 / n) / 4.0;
  }
  return INFINITY;
}

double pair_min(const schemes::RationalScheme& s, double r) {
  double m = INFINITY;
  const int n = 4000;
  for (int i = 0; i <= n; ++i) {
    const double th = 0.5 * std::numbers::pi * i / n;
    const double sn = std::sin(th), cs = std::cos(th);
    m = std::min(m, R(s, -4 * r * sn * sn) + R(s, -4 * r * cs * cs));
  }
  return m;
}

double scan_balanced(const schemes::RationalScheme& s) {
  double lo = 0.01, hi = 0.01;
  while (pair_min(s, hi) >= 0.0) {
    lo = hi;
    hi *= 1.1;
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (pair_min(s, mid) >= 0.0 ? lo : hi) = mid;
  }
  return lo;
}

lattice::Spectrum spectrum_with(const schemes::RationalScheme& s, const Discretization& d,
                                Vector coeffs) {
  auto spec = schemes::scheme_spectrum(s, d);
  spec.modal_coeffs = std::move(coeffs);
  return spec;
}

Vector ramp_coeffs(std::size_t k) {
  Vector u(k);
  for (std::size_t i = 1; i <= k; ++i) u[i - 1] = 1.0 - static_cast<double>(i) / (k + 1);
  return lattice::dst(u);
}

}  // namespace

TEST_CASE("tabulated heat-equation bounds") {
  const auto fe = builtin_scheme("forward_euler");
  const auto t3 = builtin_scheme("taylor(3)");
  const auto t5 = builtin_scheme("taylor(5)");
  const auto cn = builtin_scheme("crank_nicolson");
  CHECK(max_r_nonneg(fe, 0).value() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(max_r_balanced(fe, 0).value() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(max_r_nonneg(t3, 0).value() - 0.39902) <= 1e-4);
  CHECK(std::abs(max_r_balanced(t3, 0).value() - 0.62819) <= 1e-4);
  CHECK(std::abs(max_r_nonneg(t5, 0).value() - 0.54515) <= 1e-4);
  CHECK(std::abs(max_r_balanced(t5, 0).value() - 0.80426) <= 1e-4);
  CHECK(max_r_nonneg(cn, 0).value() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(max_r_balanced(cn, 0).value() - 1.0) <= 1e-4);
}

TEST_CASE("bounds agree with brute-force scans") {
  for (const auto& s : schemes::table_schemes()) {
    CHECK_MESSAGE(std::abs(max_r_nonneg(s, 0).value() - scan_nonneg(s)) < 1e-5, s.name());
    CHECK_MESSAGE(std::abs(max_r_balanced(s, 0).value() - scan_balanced(s)) < 1e-5, s.name());
  }
}

TEST_CASE("closed forms in sigma") {
  const auto fe = builtin_scheme("forward_euler");
  const auto cn = builtin_scheme("crank_nicolson");
  for (double s : {0.0, 0.1, 0.2, 0.3, 0.5}) {
    CHECK(std::abs(max_r_nonneg(fe, s).value() - (0.25 - s / 4)) <= 1e-6);
    CHECK(std::abs(max_r_balanced(fe, s).value() - (0.5 - s / 2)) <= 1e-6);
    CHECK(std::abs(max_r_nonneg(cn, s).value() - (0.5 - s / 4)) <= 1e-6);
    CHECK(std::abs(max_r_balanced(cn, s).value() - (1.0 - s / 2)) <= 1e-6);
  }
}

TEST_CASE("unbounded and infeasible markers") {
  const auto be = builtin_scheme("backward_euler");
  CHECK(max_r_nonneg(be, 0).kind() == RBound::Kind::Unbounded);
  CHECK(max_r_stable(builtin_scheme("crank_nicolson"), 0).kind() == RBound::Kind::Unbounded);
  CHECK(max_r_stable(builtin_scheme("forward_euler"), 0).value() == doctest::Approx(0.5));
  CHECK(max_r_nonneg(builtin_scheme("forward_euler"), 1.5).kind() == RBound::Kind::Infeasible);
  CHECK(RBound::unbounded().to_string() == "unbounded");
  CHECK(RBound::infeasible().to_string() == "infeasible");
  CHECK(RBound::unbounded().admits(1e300));
  CHECK_FALSE(RBound::infeasible().admits(0.0));
}

TEST_CASE("bound ordering nonneg <= balanced <= stable") {
  for (const auto& s : schemes::all_builtin_schemes()) {
    const auto nn = max_r_nonneg(s, 0);
    const auto bal = max_r_balanced(s, 0);
    const auto st = max_r_stable(s, 0);
    if (nn.is_finite() && bal.is_finite()) CHECK(nn.value() <= bal.value());
    if (nn.is_finite()) CHECK(bal.admits(nn.value()));
    if (bal.is_finite()) CHECK(st.admits(bal.value(), 1e-9));
    if (!st.is_finite()) CHECK(st.kind() == RBound::Kind::Unbounded);
  }
  CHECK(max_r_stable(builtin_scheme("forward_euler"), 0).value() ==
        doctest::Approx(max_r_balanced(builtin_scheme("forward_euler"), 0).value()));
}

TEST_CASE("discrete bounds approach the continuous ones") {
  const auto lam = lattice::analytic_eigenvalues(400).lambdas;
  for (const auto& s : schemes::table_schemes()) {
    const auto c_nn = max_r_nonneg(s, 0), d_nn = max_r_nonneg(s, 0, lam);
    const auto c_b = max_r_balanced(s, 0), d_b = max_r_balanced(s, 0, lam);
    CHECK_MESSAGE(std::abs(c_nn.value() - d_nn.value()) < 2e-3, s.name());
    CHECK_MESSAGE(std::abs(c_b.value() - d_b.value()) < 2e-3, s.name());
    CHECK(d_nn.value() >= c_nn.value());
  }
}

TEST_CASE("nonneg condition examples") {
  const auto fe = builtin_scheme("forward_euler");
  const std::size_t k = 20;
  auto rep = nonneg_condition(spectrum_with(fe, Discretization::unit(k, 0.2), ramp_coeffs(k)));
  CHECK(rep.nonneg_pass);
  const auto spec03 = spectrum_with(fe, Discretization::unit(k, 0.3), ramp_coeffs(k));
  rep = nonneg_condition(spec03);
  CHECK_FALSE(rep.nonneg_pass);
  CHECK_FALSE(rep.per_mode.back().nonneg_ok);
  CHECK(rep.per_mode.front().nonneg_ok);

  // Zeroing every mode with a negative value restores the condition.
  Vector a = ramp_coeffs(k);
  for (std::size_t j = 0; j < k; ++j)
    if ((*spec03.scheme_values)[j] < 0.0) a[j] = 0.0;
  CHECK(nonneg_condition(spectrum_with(fe, Discretization::unit(k, 0.3), a)).nonneg_pass);

  lattice::Spectrum missing = schemes::scheme_spectrum(fe, Discretization::unit(k, 0.3));
  CHECK_THROWS_AS(nonneg_condition(missing), InvalidInput);
}

TEST_CASE("balanced condition examples") {
  const auto fe = builtin_scheme("forward_euler");
  const std::size_t k = 21;
  auto rep = balanced_condition(spectrum_with(fe, Discretization::unit(k, 0.5), ramp_coeffs(k)));
  CHECK(rep.balanced_pass);
  for (const auto& m : rep.per_mode) CHECK(m.balanced_coeff_ok);
  const auto& mid = rep.per_mode[k / 2];
  CHECK(mid.pair_index == mid.j);

  Vector alt(k);
  for (std::size_t i = 0; i < k; ++i) alt[i] = i % 2 == 0 ? 1.0 : -1.0;
  rep = balanced_condition(spectrum_with(fe, Discretization::unit(k, 0.5), lattice::dst(alt)));
  CHECK_FALSE(rep.balanced_pass);
  bool some_coeff_fail = false;
  for (const auto& m : rep.per_mode) some_coeff_fail |= !m.balanced_coeff_ok;
  CHECK(some_coeff_fail);
}

TEST_CASE("classification examples") {
  const std::size_t k = 50;
  const auto a = ramp_coeffs(k);
  const auto fe = builtin_scheme("forward_euler");
  CHECK(classify(fe, Discretization::unit(k, 0.2), a).classification ==
        Classification::NonOscillatory);
  CHECK(classify(fe, Discretization::unit(k, 0.3), a).classification ==
        Classification::FastDecayingOscillations);
  CHECK(classify(fe, Discretization::unit(k, 0.6), a).classification == Classification::Unstable);
  CHECK(classify(builtin_scheme("crank_nicolson"), Discretization::unit(k, 2.0), a).classification ==
        Classification::PersistentOscillations);
  CHECK(exit_code(Classification::NonOscillatory) == 0);
  CHECK(exit_code(Classification::Unstable) == 3);
}

TEST_CASE("classification boundary ties go to the benign class") {
  const std::size_t k = 30;
  const auto a = ramp_coeffs(k);
  const auto fe = builtin_scheme("forward_euler");
  CHECK(classify(fe, Discretization::unit(k, 0.25), a).classification ==
        Classification::NonOscillatory);
  CHECK(classify(fe, Discretization::unit(k, 0.5), a).classification ==
        Classification::FastDecayingOscillations);
}

TEST_CASE("classification is monotone in r") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t k = 24;
  for (const auto& s : schemes::all_builtin_schemes()) {
    for (int trial = 0; trial < 5; ++trial) {
      Vector a(k);
      for (double& x : a) x = u(gen);
      int prev = -1;
      for (double r = 0.05; r < 4.0; r *= 1.15) {
        const int c = exit_code(classify(s, Discretization::unit(k, r), a).classification);
        CHECK(c >= prev);
        prev = c;
      }
    }
  }
}

TEST_CASE("values below the nonneg bound are nonnegative on any grid") {
  for (const auto& s : schemes::table_schemes()) {
    const double r = max_r_nonneg(s, 0.1).value();
    for (std::size_t k : {5u, 40u, 333u}) {
      const auto spec = schemes::scheme_spectrum(s, Discretization{k, 1, r, 1, 0.1 / r, r, 0.1});
      for (double v : *spec.scheme_values) CHECK(v >= -1e-12);
    }
  }
}

TEST_CASE("bounds table ordering") {
  const std::vector<double> sig{0.0, 0.1};
  const auto rows = bounds_table(schemes::table_schemes(), sig);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0].scheme == "forward_euler");
  CHECK(rows[1].sigma == 0.1);
  CHECK(rows[7].scheme == "crank_nicolson");
}
