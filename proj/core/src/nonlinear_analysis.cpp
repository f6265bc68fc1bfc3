#include "oscillab/nonlinear_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "oscillab/errors.hpp"
#include "oscillab/lattice_spectral.hpp"

namespace oscillab::nonlinear {
namespace {

constexpr double kPsdFloor = 1e-12;
constexpr int kRangeSamples = 4096;

bool near(double x, double v) { return std::abs(x - v) <= 1e-12; }

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  std::vector<double> c(ca.size() + cb.size() - 1, 0.0);
  for (std::size_t i = 0; i < ca.size(); ++i)
    for (std::size_t j = 0; j < cb.size(); ++j) c[i + j] += ca[i] * cb[j];
  return Polynomial(std::move(c));
}

// Candidate points for extrema of a polynomial of degree <= 2 on [lo, hi]:
// the endpoints, the vertex (1 + a) / 2 of the cubic terms, and a grid.
template <class F>
std::pair<double, double> extremum(F&& f, double lo, double hi, double a, bool minimize) {
  double best_x = lo;
  double best = f(lo);
  auto consider = [&](double x) {
    const double v = f(x);
    if (minimize ? v < best : v > best) {
      best = v;
      best_x = x;
    }
  };
  consider(hi);
  consider(std::clamp(0.5 * (1.0 + a), lo, hi));
  for (int i = 1; i < kRangeSamples; ++i) consider(lo + (hi - lo) * i / kRangeSamples);
  return {best_x, best};
}

Matrix diffusion_matrix(const Problem& problem, const schemes::RationalScheme& scheme) {
  return schemes::time_step_matrix(scheme, problem.disc.without_reaction());
}

void require_nonlinear(const Problem& problem) {
  if (sim::is_linear(problem.kind)) {
    throw InvalidInput("problem kind '" + std::string(sim::to_string(problem.kind)) +
                       "' is linear");
  }
}

// min over z in [-4r, 0] of R(z); -inf when a pole lies in the interval.
double min_amplification(const schemes::RationalScheme& scheme, double r) {
  const Polynomial& p = scheme.numerator();
  const Polynomial& q = scheme.denominator();
  const double lo = -4.0 * r;
  if (!q.sign_change_roots(lo, 0.0).empty() || q(lo) == 0.0) {
    return -std::numeric_limits<double>::infinity();
  }
  auto value = [&](double z) { return p(z) / q(z); };
  double m = std::min(value(lo), value(0.0));
  const Polynomial crit = multiply(p.derivative(), q) - multiply(p, q.derivative());
  for (double z : crit.sign_change_roots(lo, 0.0)) m = std::min(m, value(z));
  return m;
}

}  // namespace

double default_equilibrium(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::NonlinearRD:
      return 0.0;
    case ProblemKind::FisherKPP:
      return 1.0;
    case ProblemKind::CubicRD:
      return 0.0;
    default:
      return 0.0;
  }
}

Linearization linearize(const Problem& problem, double about) {
  const double rho = problem.rho();
  const double a = problem.a_param;
  const ProblemKind kind = problem.kind;
  if (!std::isfinite(about) ||
      std::abs(sim::reaction(kind, rho, a, about)) > 1e-12 * std::max(1.0, std::abs(rho))) {
    throw InvalidInput("u = " + std::to_string(about) + " is not an equilibrium of " +
                       std::string(sim::to_string(kind)));
  }
  Linearization lin{kind, about, 0.0, -sim::reaction_derivative(kind, rho, a, about)};
  bool tabulated = true;
  switch (kind) {
    case ProblemKind::Heat:
      lin.effective_rho = 0.0;
      break;
    case ProblemKind::LinearRD:
      lin.effective_rho = rho;
      break;
    case ProblemKind::NonlinearRD:
      tabulated = near(about, 0.0);
      lin.effective_rho = 0.0;
      break;
    case ProblemKind::FisherKPP:
      tabulated = near(about, 1.0);
      lin.effective_rho = rho;
      break;
    case ProblemKind::CubicRD:
      if (near(about, 0.0)) {
        lin.effective_rho = -rho * a;
      } else if (near(about, 1.0)) {
        lin.effective_rho = -rho * (1.0 - a);
      } else {
        tabulated = false;
      }
      break;
  }
  if (!tabulated) {
    throw InvalidInput("no tabulated linearization of " + std::string(sim::to_string(kind)) +
                       " about u = " + std::to_string(about));
  }
  return lin;
}

Matrix frozen_jacobian(const Problem& problem, const schemes::RationalScheme& scheme,
                       std::span<const double> u, FrozenForm form) {
  const std::size_t k = problem.disc.k;
  if (u.size() != k) throw InvalidInput("state length does not match k");
  if (sim::is_linear(problem.kind)) return schemes::time_step_matrix(scheme, problem.disc);
  Matrix m = diffusion_matrix(problem, scheme);
  const double dt = problem.disc.dt;
  for (std::size_t i = 0; i < k; ++i) {
    const double d = form == FrozenForm::Jacobian
                         ? sim::reaction_derivative(problem.kind, problem.rho(), problem.a_param, u[i])
                         : -sim::reaction_secant(problem.kind, problem.rho(), problem.a_param, u[i]);
    m(i, i) += dt * d;
  }
  return m;
}

Vector linearized_frozen_spectrum(const Problem& problem, const schemes::RationalScheme& scheme,
                                  const Linearization& lin) {
  const auto& disc = problem.disc;
  Vector out(disc.k);
  for (std::size_t j = 1; j <= disc.k; ++j) {
    out[j - 1] = schemes::amplification(scheme, disc.r * lattice::analytic_eigenvalue(disc.k, j)) -
                 disc.dt * lin.jacobian_rho;
  }
  std::sort(out.begin(), out.end());
  return out;
}

double difference_term(ProblemKind kind, double about, double rho, double a, double x) {
  if (kind == ProblemKind::NonlinearRD && near(about, 0.0)) return rho * x;
  if (kind == ProblemKind::FisherKPP && near(about, 1.0)) return rho * x;
  if (kind == ProblemKind::CubicRD && near(about, 0.0)) return rho * (2.0 * a - (1.0 + a) * x + x * x);
  if (kind == ProblemKind::CubicRD && near(about, 1.0)) return rho * (1.0 - (1.0 + a) * x + x * x);
  throw InvalidInput("no difference term for " + std::string(sim::to_string(kind)) +
                     " about u = " + std::to_string(about));
}

GuaranteeReport nonlinear_nn_guarantee(const Problem& problem,
                                       const schemes::RationalScheme& scheme,
                                       std::optional<double> about, StateRange range) {
  require_nonlinear(problem);
  if (!(range.lo <= range.hi)) throw InvalidInput("empty state range");
  const double u0 = about.value_or(default_equilibrium(problem.kind));
  const double rho = problem.rho();
  const double a = problem.a_param;
  const double dt = problem.disc.dt;
  const std::size_t k = problem.disc.k;

  GuaranteeReport rep;
  rep.linearization = linearize(problem, u0);

  const Matrix m = diffusion_matrix(problem, scheme);
  Matrix lin = m;
  for (std::size_t i = 0; i < k; ++i) lin(i, i) -= dt * rep.linearization.effective_rho;
  rep.linearized_min_eigenvalue = eigen::min_eigenvalue(lin);
  rep.linearized_psd = eigen::is_positive_definite(lin, kPsdFloor);

  const auto [xd, dmin] = extremum(
      [&](double x) { return dt * difference_term(problem.kind, u0, rho, a, x); }, range.lo,
      range.hi, a, true);
  rep.difference_min = dmin;
  rep.difference_argmin = xd;
  rep.difference_psd = dmin >= -kPsdFloor;
  if (!rep.difference_psd) rep.witness = Vector(k, xd);

  const auto [xr, rmin] = extremum(
      [&](double x) {
        return dt * (rep.linearization.effective_rho -
                     sim::reaction_secant(problem.kind, rho, a, x));
      },
      range.lo, range.hi, a, true);
  (void)xr;
  rep.reverse_difference_psd = rmin >= -kPsdFloor;

  const auto [xn, nmax] = extremum(
      [&](double x) { return sim::reaction_secant(problem.kind, rho, a, x); }, range.lo, range.hi,
      a, false);
  (void)xn;
  rep.frozen_floor = eigen::min_eigenvalue(m) - dt * nmax;

  rep.guaranteed = rep.linearized_psd && rep.difference_psd;
  return rep;
}

double linearized_nn_bound(const Problem& problem, const schemes::RationalScheme& scheme,
                           std::optional<double> about) {
  const Linearization lin =
      linearize(problem, about.value_or(default_equilibrium(problem.kind)));
  const double dx2_over_delta = problem.disc.dx * problem.disc.dx / problem.disc.delta;
  auto ok = [&](double r) {
    return min_amplification(scheme, r) - r * dx2_over_delta * lin.effective_rho >= 0.0;
  };
  if (!ok(0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1e-3;
  while (ok(hi)) {
    lo = hi;
    hi *= 1.05;
    if (hi > 1e4) return std::numeric_limits<double>::infinity();
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

std::optional<std::pair<double, double>> cubic_admissible_interval(double about,
                                                                   StateRange range) {
  if (!(near(about, 0.0) || near(about, 1.0))) {
    throw InvalidInput("cubic_rd is linearized about 0 or 1 only");
  }
  auto admissible = [&](double a) {
    const auto [x, v] = extremum(
        [&](double xx) { return difference_term(ProblemKind::CubicRD, about, 1.0, a, xx); },
        range.lo, range.hi, a, true);
    (void)x;
    return v >= 0.0;
  };
  constexpr int n = 2000;
  int first = -1;
  int last = -1;
  for (int i = 0; i <= n; ++i) {
    if (admissible(static_cast<double>(i) / n)) {
      if (first < 0) first = i;
      last = i;
    }
  }
  if (first < 0) return std::nullopt;

  auto refine = [&](double in, double out) {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (in + out);
      if (mid == in || mid == out) break;
      (admissible(mid) ? in : out) = mid;
    }
    return in;
  };
  const double left =
      first == 0 ? 0.0 : refine(static_cast<double>(first) / n, static_cast<double>(first - 1) / n);
  const double right =
      last == n ? 1.0 : refine(static_cast<double>(last) / n, static_cast<double>(last + 1) / n);
  return std::make_pair(left, right);
}

std::vector<Localization> localization_metrics(const EigenDecomposition& decomp) {
  const std::size_t k = decomp.vectors.rows();
  std::vector<Localization> out;
  out.reserve(decomp.vectors.cols());
  for (std::size_t c = 0; c < decomp.vectors.cols(); ++c) {
    double s4 = 0.0;
    double com = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double v2 = decomp.vectors(i, c) * decomp.vectors(i, c);
      s4 += v2 * v2;
      com += static_cast<double>(i + 1) * v2;
    }
    out.push_back({1.0 / s4, com});
  }
  return out;
}

std::vector<Pairing> pairing_symmetry(const EigenDecomposition& decomp) {
  const std::size_t k = decomp.vectors.cols();
  const std::size_t n = decomp.vectors.rows();
  std::vector<Pairing> out;
  out.reserve(k);
  for (std::size_t j = 1; j <= k; ++j) {
    const std::size_t p = k + 1 - j;
    double mismatch = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      mismatch = std::max(mismatch, std::abs(std::abs(decomp.vectors(i, j - 1)) -
                                             std::abs(decomp.vectors(i, p - 1))));
    }
    out.push_back({j, p, mismatch});
  }
  return out;
}

}  // namespace oscillab::nonlinear
