#pragma once

// Time stepping of the five 1-D parabolic problems, steady states, and the
// closed-form modal solution used to cross-check linear runs.
//
// Reaction terms are written u_t = delta u_xx + f(u) with
//   Heat         f = 0
//   LinearRD     f = -rho u
//   NonlinearRD  f = -rho u^2
//   FisherKPP    f = -rho u (1 - u)
//   CubicRD      f = -rho u (1 - u) (a - u)

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "oscillab/linalg.hpp"
#include "oscillab/schemes.hpp"

namespace oscillab::sim {

enum class ProblemKind { Heat, LinearRD, NonlinearRD, FisherKPP, CubicRD };

std::string_view to_string(ProblemKind kind) noexcept;
/// Accepts heat, linear_rd, nonlinear_rd, fisher_kpp, cubic_rd.
ProblemKind parse_problem_kind(std::string_view text);
bool is_linear(ProblemKind kind) noexcept;

struct Problem {
  ProblemKind kind = ProblemKind::Heat;
  schemes::Discretization disc;  // carries delta and rho
  double a_param = 0.0;          // CubicRD only, in [0, 1]
  schemes::BoundaryData bc;
  Vector initial;

  double delta() const noexcept { return disc.delta; }
  double rho() const noexcept { return disc.rho; }

  /// Throws InvalidInput: wrong initial length, rho != 0 for Heat,
  /// a outside [0, 1], non-finite data.
  void validate() const;
};

/// f(u) for the given kind.
double reaction(ProblemKind kind, double rho, double a, double u) noexcept;
/// f'(u).
double reaction_derivative(ProblemKind kind, double rho, double a, double u) noexcept;
/// n(u) with f(u) = -n(u) u: the diagonal of the frozen reaction matrix N.
double reaction_secant(ProblemKind kind, double rho, double a, double u) noexcept;

/// One-step map for a fixed problem and scheme. Linear kinds step with
/// M(r T0 - sigma I) u + B. Nonlinear kinds use the frozen-coefficient form
/// (M - dt N(u)) u + B where M and B belong to the diffusion part alone.
class Stepper {
 public:
  Stepper(const Problem& problem, const schemes::RationalScheme& scheme);

  Vector step(std::span<const double> u) const;
  const schemes::SchemeOperator& diffusion() const noexcept { return op_; }
  const Vector& boundary() const noexcept { return boundary_; }

 private:
  ProblemKind kind_;
  double rho_;
  double a_;
  double dt_;
  schemes::SchemeOperator op_;
  Vector boundary_;
};

Vector step(const Problem& problem, const schemes::RationalScheme& scheme,
            std::span<const double> u);

struct Trajectory {
  std::vector<Vector> states;
  Problem problem;
  bool diverged = false;
  /// Step index whose state exceeded the guard (not stored in `states`).
  std::optional<std::size_t> diverged_at;

  const schemes::Discretization& disc() const noexcept { return problem.disc; }
};

inline constexpr double kDivergenceGuard = 1e12;

/// states[0] = initial, states[n+1] = step(states[n]). A non-finite state or
/// one with an entry beyond `guard` ends the run with `diverged` set.
Trajectory run(const Problem& problem, const schemes::RationalScheme& scheme,
               std::size_t n_steps, double guard = kDivergenceGuard);

struct SteadyStateOptions {
  double tolerance = 1e-12;
  std::size_t max_iterations = 1'000'000;
  /// Relaxation for the nonlinear fixed-point iteration; chosen from the
  /// scheme spectrum and reaction slope when unset.
  std::optional<double> damping;
};

/// Linear kinds: direct solve of (I - M) u = B. Nonlinear kinds: damped
/// fixed-point iteration of `step` from problem.initial.
/// Throws SingularMatrix or ConvergenceFailure.
Vector steady_state(const Problem& problem, const schemes::RationalScheme& scheme,
                    const SteadyStateOptions& options = {});

/// u_n = ubar + 2/(k+1) sum_j a_j R(r lambda_j - sigma)^n x_j with
/// a = S (u_0 - ubar). Linear kinds only; does not use Stepper.
Vector modal_solution(const Problem& problem, const schemes::RationalScheme& scheme,
                      std::size_t n);

}  // namespace oscillab::sim
