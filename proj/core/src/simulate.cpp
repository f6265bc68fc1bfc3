#include "oscillab/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oscillab/errors.hpp"
#include "oscillab/lattice_spectral.hpp"

namespace oscillab::sim {
namespace {

schemes::Discretization operator_disc(const Problem& p) {
  return p.kind == ProblemKind::LinearRD ? p.disc : p.disc.without_reaction();
}

bool within_guard(std::span<const double> u, double guard) {
  return std::all_of(u.begin(), u.end(),
                     [guard](double x) { return std::isfinite(x) && std::abs(x) <= guard; });
}

// Smallest eigenvalue estimate of the step Jacobian, used to pick a damping
// factor that keeps the relaxed iteration contractive.
double jacobian_floor_estimate(const Problem& p, const schemes::RationalScheme& scheme) {
  const double r = p.disc.r;
  double r_min = 1.0;
  for (int i = 0; i <= 2000; ++i) {
    const double z = -4.0 * r * i / 2000.0;
    try {
      r_min = std::min(r_min, schemes::amplification(scheme, z));
    } catch (const PoleError&) {
    }
  }
  double lo = std::min(0.0, std::min(p.bc.left, p.bc.right));
  double hi = std::max(1.0, std::max(p.bc.left, p.bc.right));
  for (double x : p.initial) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  double slope_min = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double x = lo + (hi - lo) * i / 200.0;
    slope_min = std::min(slope_min, reaction_derivative(p.kind, p.rho(), p.a_param, x));
  }
  return r_min + p.disc.dt * slope_min;
}

}  // namespace

std::string_view to_string(ProblemKind kind) noexcept {
  switch (kind) {
    case ProblemKind::Heat:
      return "heat";
    case ProblemKind::LinearRD:
      return "linear_rd";
    case ProblemKind::NonlinearRD:
      return "nonlinear_rd";
    case ProblemKind::FisherKPP:
      return "fisher_kpp";
    case ProblemKind::CubicRD:
      return "cubic_rd";
  }
  return "unknown";
}

ProblemKind parse_problem_kind(std::string_view text) {
  for (auto k : {ProblemKind::Heat, ProblemKind::LinearRD, ProblemKind::NonlinearRD,
                 ProblemKind::FisherKPP, ProblemKind::CubicRD}) {
    if (text == to_string(k)) return k;
  }
  throw InvalidInput("unknown problem kind '" + std::string(text) + "'");
}

bool is_linear(ProblemKind kind) noexcept {
  return kind == ProblemKind::Heat || kind == ProblemKind::LinearRD;
}

void Problem::validate() const {
  if (initial.size() != disc.k) {
    throw InvalidInput("initial condition has " + std::to_string(initial.size()) +
                       " entries, grid has k = " + std::to_string(disc.k));
  }
  if (kind == ProblemKind::Heat && disc.rho != 0.0) {
    throw InvalidInput("heat problem must have rho = 0");
  }
  if (kind == ProblemKind::CubicRD && !(a_param >= 0.0 && a_param <= 1.0)) {
    throw InvalidInput("cubic parameter a must lie in [0, 1]");
  }
  if (!std::isfinite(bc.left) || !std::isfinite(bc.right)) {
    throw InvalidInput("boundary values must be finite");
  }
  if (!std::all_of(initial.begin(), initial.end(), [](double x) { return std::isfinite(x); })) {
    throw InvalidInput("initial condition must be finite");
  }
}

double reaction(ProblemKind kind, double rho, double a, double u) noexcept {
  switch (kind) {
    case ProblemKind::Heat:
      return 0.0;
    case ProblemKind::LinearRD:
      return -rho * u;
    case ProblemKind::NonlinearRD:
      return -rho * u * u;
    case ProblemKind::FisherKPP:
      return -rho * u * (1.0 - u);
    case ProblemKind::CubicRD:
      return -rho * u * (1.0 - u) * (a - u);
  }
  return 0.0;
}

double reaction_derivative(ProblemKind kind, double rho, double a, double u) noexcept {
  switch (kind) {
    case ProblemKind::Heat:
      return 0.0;
    case ProblemKind::LinearRD:
      return -rho;
    case ProblemKind::NonlinearRD:
      return -2.0 * rho * u;
    case ProblemKind::FisherKPP:
      return -rho * (1.0 - 2.0 * u);
    case ProblemKind::CubicRD:
      // d/du of -(a u - (1 + a) u^2 + u^3)
      return -rho * (a - 2.0 * (1.0 + a) * u + 3.0 * u * u);
  }
  return 0.0;
}

double reaction_secant(ProblemKind kind, double rho, double a, double u) noexcept {
  switch (kind) {
    case ProblemKind::Heat:
      return 0.0;
    case ProblemKind::LinearRD:
      return rho;
    case ProblemKind::NonlinearRD:
      return rho * u;
    case ProblemKind::FisherKPP:
      return rho * (1.0 - u);
    case ProblemKind::CubicRD:
      return rho * (1.0 - u) * (a - u);
  }
  return 0.0;
}

Stepper::Stepper(const Problem& problem, const schemes::RationalScheme& scheme)
    : kind_(problem.kind),
      rho_(problem.rho()),
      a_(problem.a_param),
      dt_(problem.disc.dt),
      op_(scheme, operator_disc(problem)),
      boundary_(op_.boundary_vector(problem.bc)) {
  problem.validate();
}

Vector Stepper::step(std::span<const double> u) const {
  Vector next = op_.apply(u);
  for (std::size_t i = 0; i < next.size(); ++i) next[i] += boundary_[i];
  if (!is_linear(kind_)) {
    for (std::size_t i = 0; i < next.size(); ++i) next[i] += dt_ * reaction(kind_, rho_, a_, u[i]);
  }
  return next;
}

Vector step(const Problem& problem, const schemes::RationalScheme& scheme,
            std::span<const double> u) {
  return Stepper(problem, scheme).step(u);
}

Trajectory run(const Problem& problem, const schemes::RationalScheme& scheme,
               std::size_t n_steps, double guard) {
  const Stepper stepper(problem, scheme);
  Trajectory traj;
  traj.problem = problem;
  traj.states.reserve(n_steps + 1);
  traj.states.push_back(problem.initial);
  for (std::size_t n = 0; n < n_steps; ++n) {
    Vector next = stepper.step(traj.states.back());
    if (!within_guard(next, guard)) {
      traj.diverged = true;
      traj.diverged_at = n + 1;
      break;
    }
    traj.states.push_back(std::move(next));
  }
  return traj;
}

Vector steady_state(const Problem& problem, const schemes::RationalScheme& scheme,
                    const SteadyStateOptions& options) {
  problem.validate();
  const std::size_t k = problem.disc.k;
  if (is_linear(problem.kind)) {
    const schemes::SchemeOperator op(scheme, operator_disc(problem));
    Matrix lhs = Matrix::identity(k) - op.dense();
    return LuFactorization(std::move(lhs)).solve(op.boundary_vector(problem.bc));
  }

  const Stepper stepper(problem, scheme);
  double omega = 1.0;
  if (options.damping) {
    omega = *options.damping;
  } else {
    const double floor = jacobian_floor_estimate(problem, scheme);
    if (floor < -0.8) omega = 1.8 / (1.0 - floor);
  }
  if (!(omega > 0.0 && omega <= 1.0)) throw InvalidInput("damping must lie in (0, 1]");

  Vector u = problem.initial;
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    const Vector next = stepper.step(u);
    double diff = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double d = next[i] - u[i];
      diff = std::max(diff, std::abs(d));
      u[i] += omega * d;
    }
    if (!std::isfinite(diff)) throw ConvergenceFailure("steady-state iteration diverged", it);
    if (diff <= options.tolerance) return u;
  }
  throw ConvergenceFailure("steady-state iteration did not converge", options.max_iterations);
}

Vector modal_solution(const Problem& problem, const schemes::RationalScheme& scheme,
                      std::size_t n) {
  if (!is_linear(problem.kind)) {
    throw InvalidInput("modal solution is defined for heat and linear_rd only");
  }
  problem.validate();
  const auto disc = operator_disc(problem);
  const std::size_t k = disc.k;
  const Vector ubar = steady_state(problem, scheme);

  const lattice::SineBasis basis(k);
  Vector dev(k);
  for (std::size_t i = 0; i < k; ++i) dev[i] = problem.initial[i] - ubar[i];
  Vector coeffs = basis.transform(dev);
  for (std::size_t j = 1; j <= k; ++j) {
    const double z = disc.r * lattice::analytic_eigenvalue(k, j) - disc.sigma;
    const double rj = schemes::amplification(scheme, z);
    coeffs[j - 1] *= std::pow(rj, static_cast<double>(n));
  }
  Vector u = basis.inverse(coeffs);
  for (std::size_t i = 0; i < k; ++i) u[i] += ubar[i];
  return u;
}

}  // namespace oscillab::sim
