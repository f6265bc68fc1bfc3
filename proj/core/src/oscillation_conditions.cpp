#include "oscillab/oscillation_conditions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "oscillab/errors.hpp"

namespace oscillab::conditions {
namespace {

using schemes::RationalScheme;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// R(z), with a pole mapped to -inf so that it fails every inequality.
double amp_or_fail(const RationalScheme& s, double z) {
  try {
    return schemes::amplification(s, z);
  } catch (const PoleError&) {
    return kNegInf;
  }
}

void require_sigma(double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw InvalidInput("sigma must be finite and non-negative");
  }
}

// Largest r in (0, inf) such that feasible(s) holds for all s in (0, r],
// found by a geometric scan for the first failure followed by bisection.
RBound largest_admissible(const std::function<bool(double)>& feasible) {
  constexpr double kStart = 1e-3;
  constexpr double kGrowth = 1.05;
  constexpr double kLimit = 1e4;
  if (!feasible(0.0)) return RBound::infeasible();
  double lo = 0.0;
  double hi = kStart;
  while (feasible(hi)) {
    lo = hi;
    hi *= kGrowth;
    if (hi > kLimit) return RBound::unbounded();
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo > 0.0 ? RBound::finite(lo) : RBound::infeasible();
}

// Walks left from -sigma across the candidate sign-change points and returns
// the bound implied by the first interval on which `ok` fails.
RBound bound_from_boundaries(const std::function<bool(double)>& ok, std::vector<double> knots,
                             double sigma) {
  const double start = -sigma;
  std::sort(knots.begin(), knots.end(), std::greater<>());
  double prev = start;
  double z_star = std::numeric_limits<double>::quiet_NaN();
  if (!ok(start)) return RBound::infeasible();
  for (double c : knots) {
    if (!(c < prev)) continue;
    if (!ok(0.5 * (prev + c))) {
      z_star = prev;
      break;
    }
    if (!ok(c)) {
      z_star = c;
      break;
    }
    prev = c;
  }
  if (std::isnan(z_star)) {
    if (ok(prev - 1.0) && ok(prev - 1e3)) return RBound::unbounded();
    z_star = prev;
  }
  const double r = (-z_star - sigma) / 4.0;
  return r > 0.0 ? RBound::finite(r) : RBound::infeasible();
}

std::vector<double> roots_left_of(const Polynomial& p, double start, double extent) {
  return p.sign_change_roots(start - extent, start);
}

double search_extent(const RationalScheme& s, double sigma) {
  return std::max(s.numerator().root_bound(), s.denominator().root_bound()) + sigma + 16.0;
}

// min over theta of R(-4r sin^2 - sigma) + R(-4r cos^2 - sigma).
double pair_sum_min(const RationalScheme& s, double r, double sigma) {
  const auto f = [&](double theta) {
    const double sn = std::sin(theta);
    const double s2 = sn * sn;
    return amp_or_fail(s, -4.0 * r * s2 - sigma) + amp_or_fail(s, -4.0 * r * (1.0 - s2) - sigma);
  };
  constexpr int kSamples = 1024;
  const double h = (std::numbers::pi / 2.0) / (kSamples - 1);
  int best = 0;
  double best_val = f(0.0);
  for (int m = 1; m < kSamples; ++m) {
    const double v = f(h * m);
    if (v < best_val) {
      best_val = v;
      best = m;
    }
  }
  if (best_val == kNegInf) return best_val;
  // Golden-section refinement around the best sample.
  double a = h * std::max(best - 1, 0);
  double b = h * std::min(best + 1, kSamples - 1);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - g * (b - a);
  double x2 = a + g * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > 1e-12) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    }
  }
  return std::min({best_val, f1, f2});
}

ConditionReport build_report(const lattice::Spectrum& spec, const Tolerances& tol) {
  if (!spec.scheme_values || !spec.modal_coeffs) {
    throw InvalidInput("condition check needs scheme values and modal coefficients");
  }
  const auto& values = *spec.scheme_values;
  const auto& coeffs = *spec.modal_coeffs;
  const std::size_t k = spec.k;
  if (values.size() != k || coeffs.size() != k || spec.lambdas.size() != k) {
    throw InvalidInput("condition check: spectrum fields have inconsistent lengths");
  }
  double a_max = 0.0;
  for (double a : coeffs) a_max = std::max(a_max, std::abs(a));
  const double coeff_tol = tol.coefficient * a_max;

  ConditionReport report;
  report.per_mode.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    auto& m = report.per_mode[i];
    m.j = i + 1;
    m.lambda = spec.lambdas[i];
    m.scheme_value = values[i];
    m.modal_coeff = coeffs[i];
    m.nonneg_ok = values[i] >= -tol.condition || std::abs(coeffs[i]) <= coeff_tol;
    const std::size_t p = k - 1 - i;  // 0-based partner
    m.pair_index = p + 1;
    m.pair_sum = values[i] + values[p];
    if (p == i) {
      m.balanced_value_ok = true;
      m.balanced_coeff_ok = true;
    } else {
      m.balanced_value_ok = m.pair_sum >= -tol.condition;
      // The envelope is the lower-index member of the pair.
      const std::size_t lo = std::min(i, p);
      const std::size_t hi = std::max(i, p);
      m.balanced_coeff_ok = std::abs(coeffs[lo]) >= std::abs(coeffs[hi]) - coeff_tol;
    }
    report.nonneg_pass = report.nonneg_pass && m.nonneg_ok;
    report.balanced_pass = report.balanced_pass && m.balanced_value_ok && m.balanced_coeff_ok;
  }
  if (report.nonneg_pass) {
    report.classification = Classification::NonOscillatory;
  } else if (report.balanced_pass) {
    report.classification = Classification::FastDecayingOscillations;
  } else {
    report.classification = Classification::PersistentOscillations;
  }
  return report;
}

}  // namespace

std::string_view to_string(Classification c) noexcept {
  switch (c) {
    case Classification::NonOscillatory:
      return "NonOscillatory";
    case Classification::FastDecayingOscillations:
      return "FastDecayingOscillations";
    case Classification::PersistentOscillations:
      return "PersistentOscillations";
    case Classification::Unstable:
      return "Unstable";
  }
  return "Unknown";
}

int exit_code(Classification c) noexcept { return static_cast<int>(c); }

ConditionReport nonneg_condition(const lattice::Spectrum& spec, const Tolerances& tol) {
  return build_report(spec, tol);
}

ConditionReport balanced_condition(const lattice::Spectrum& spec, const Tolerances& tol) {
  return build_report(spec, tol);
}

bool RBound::admits(double r, double rel_slack) const noexcept {
  switch (kind_) {
    case Kind::Unbounded:
      return true;
    case Kind::Infeasible:
      return false;
    case Kind::Finite:
      return r <= value_ * (1.0 + rel_slack);
  }
  return false;
}

std::string RBound::to_string() const {
  if (kind_ == Kind::Unbounded) return "unbounded";
  if (kind_ == Kind::Infeasible) return "infeasible";
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

RBound max_r_nonneg(const RationalScheme& scheme, double sigma) {
  require_sigma(sigma);
  const double start = -sigma;
  const double extent = search_extent(scheme, sigma);
  auto knots = roots_left_of(scheme.numerator(), start, extent);
  for (double z : roots_left_of(scheme.denominator(), start, extent)) knots.push_back(z);
  const auto ok = [&](double z) { return amp_or_fail(scheme, z) >= 0.0; };
  return bound_from_boundaries(ok, std::move(knots), sigma);
}

RBound max_r_stable(const RationalScheme& scheme, double sigma) {
  require_sigma(sigma);
  const double start = -sigma;
  const double extent = search_extent(scheme, sigma);
  const auto& p = scheme.numerator();
  const auto& q = scheme.denominator();
  // R = 1 at z = 0 by consistency; (p - q) / z carries the other crossings.
  auto knots = roots_left_of((p - q).shift_down(), start, extent);
  for (double z : roots_left_of(p + q, start, extent)) knots.push_back(z);
  for (double z : roots_left_of(q, start, extent)) knots.push_back(z);
  const auto ok = [&](double z) {
    const double v = amp_or_fail(scheme, z);
    return v != kNegInf && std::abs(v) <= 1.0;
  };
  return bound_from_boundaries(ok, std::move(knots), sigma);
}

RBound max_r_balanced(const RationalScheme& scheme, double sigma) {
  require_sigma(sigma);
  return largest_admissible(
      [&](double r) { return pair_sum_min(scheme, r, sigma) >= 0.0; });
}

RBound max_r_nonneg(const RationalScheme& scheme, double sigma, std::span<const double> lambdas) {
  require_sigma(sigma);
  return largest_admissible([&](double r) {
    return std::all_of(lambdas.begin(), lambdas.end(),
                       [&](double l) { return amp_or_fail(scheme, r * l - sigma) >= 0.0; });
  });
}

RBound max_r_balanced(const RationalScheme& scheme, double sigma,
                      std::span<const double> lambdas) {
  require_sigma(sigma);
  const std::size_t k = lambdas.size();
  return largest_admissible([&](double r) {
    for (std::size_t i = 0; i < (k + 1) / 2; ++i) {
      const std::size_t p = k - 1 - i;
      if (p == i) continue;
      const double s = amp_or_fail(scheme, r * lambdas[i] - sigma) +
                       amp_or_fail(scheme, r * lambdas[p] - sigma);
      if (!(s >= 0.0)) return false;
    }
    return true;
  });
}

RBound max_r_stable(const RationalScheme& scheme, double sigma, std::span<const double> lambdas) {
  require_sigma(sigma);
  return largest_admissible([&](double r) {
    return std::all_of(lambdas.begin(), lambdas.end(), [&](double l) {
      const double v = amp_or_fail(scheme, r * l - sigma);
      return v != kNegInf && std::abs(v) <= 1.0;
    });
  });
}

ConditionReport classify(const RationalScheme& scheme, const schemes::Discretization& disc,
                         std::span<const double> coeffs, const Tolerances& tol) {
  if (coeffs.size() != disc.k) {
    throw InvalidInput("classify: expected " + std::to_string(disc.k) +
                       " modal coefficients, got " + std::to_string(coeffs.size()));
  }
  auto spec = schemes::scheme_spectrum(scheme, disc);
  spec.modal_coeffs = Vector(coeffs.begin(), coeffs.end());
  auto report = build_report(spec, tol);

  bool unstable = false;
  if (disc.sigma >= 0.0) {
    unstable = !max_r_stable(scheme, disc.sigma).admits(disc.r, tol.relative);
  } else {
    // Growth reaction: no continuous bound exists, judge the actual modes.
    for (double v : *spec.scheme_values) unstable = unstable || std::abs(v) > 1.0 + tol.condition;
  }
  if (unstable) report.classification = Classification::Unstable;
  return report;
}

std::vector<BoundsRow> bounds_table(const std::vector<RationalScheme>& schemes,
                                    std::span<const double> sigmas) {
  std::vector<BoundsRow> rows;
  rows.reserve(schemes.size() * sigmas.size());
  for (const auto& s : schemes) {
    for (double sigma : sigmas) {
      BoundsRow row;
      row.scheme = s.name();
      row.sigma = sigma;
      row.nonneg = max_r_nonneg(s, sigma);
      row.balanced = max_r_balanced(s, sigma);
      row.stable = max_r_stable(s, sigma);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace oscillab::conditions
