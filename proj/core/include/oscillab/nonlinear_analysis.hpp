#pragma once

// Linearizations of the nonlinear problems about constant equilibria, frozen
// time-step matrices, the nonnegative-eigenvalue guarantee for nonlinear
// schemes, and eigenvector structure metrics.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "oscillab/linalg.hpp"
#include "oscillab/schemes.hpp"
#include "oscillab/simulate.hpp"
#include "oscillab/tridiag_eigen.hpp"

namespace oscillab::nonlinear {

using eigen::EigenDecomposition;
using sim::Problem;
using sim::ProblemKind;

struct Linearization {
  ProblemKind source_kind;
  double about;
  /// Tabulated linear reaction coefficient: the linearized PDE reads
  /// u_t = delta u_xx - effective_rho u.
  double effective_rho;
  /// -f'(about) for the reaction as implemented. Differs in sign from
  /// effective_rho for fisher_kpp and cubic_rd.
  double jacobian_rho;
};

/// Tabulated rows: nonlinear_rd@0 -> 0, fisher_kpp@1 -> rho,
/// cubic_rd@0 -> -rho a, cubic_rd@1 -> -rho (1 - a). Linear kinds return
/// their own coefficient about 0. Throws InvalidInput when `about` is not a
/// root of the reaction or has no tabulated row.
Linearization linearize(const Problem& problem, double about);

/// The equilibrium each nonlinear kind is linearized about by default:
/// nonlinear_rd 0, fisher_kpp 1, cubic_rd 0.
double default_equilibrium(ProblemKind kind);

enum class FrozenForm {
  Jacobian,  // M + dt diag(f'(u))
  Secant,    // M - dt diag(n(u)),  f(u) = -n(u) u
};

/// Time-step matrix with the reaction frozen at u. M is the diffusion-only
/// scheme matrix. Linear kinds return their exact time-step matrix.
Matrix frozen_jacobian(const Problem& problem, const schemes::RationalScheme& scheme,
                       std::span<const double> u, FrozenForm form = FrozenForm::Jacobian);

/// Eigenvalues R(r lambda_j) - dt jacobian_rho, ascending: the spectrum the
/// frozen Jacobian has at the equilibrium. For forward Euler this coincides
/// with scheme_spectrum at sigma = dt jacobian_rho.
Vector linearized_frozen_spectrum(const Problem& problem, const schemes::RationalScheme& scheme,
                                  const Linearization& lin);

struct GuaranteeReport {
  bool guaranteed = false;
  Linearization linearization{};
  /// Smallest eigenvalue of M - dt effective_rho I.
  double linearized_min_eigenvalue = 0.0;
  bool linearized_psd = false;
  /// Minimum over the state range of dt d(x), where d is the difference
  /// term of the proof for this kind (see difference_term).
  double difference_min = 0.0;
  bool difference_psd = false;
  double difference_argmin = 0.0;
  /// Constant state at the worst point when difference_psd fails.
  std::optional<Vector> witness;
  /// min over x of dt (effective_rho - n(x)) >= 0. This is the ordering
  /// under which psd of the linearized matrix carries over to every frozen
  /// matrix M - dt N(u).
  bool reverse_difference_psd = false;
  /// Worst-case smallest eigenvalue of M - dt N(u) over u in the range,
  /// which is lambda_min(M) - dt max n(x).
  double frozen_floor = 0.0;
};

/// Difference term d(x) for the given kind and equilibrium:
///   nonlinear_rd@0:  rho x
///   fisher_kpp@1:    rho x
///   cubic_rd@0:      rho (2a - (1 + a) x + x^2)
///   cubic_rd@1:      rho (1 - (1 + a) x + x^2)
double difference_term(ProblemKind kind, double about, double rho, double a, double x);

struct StateRange {
  double lo = 0.0;
  double hi = 1.0;
};

GuaranteeReport nonlinear_nn_guarantee(const Problem& problem,
                                       const schemes::RationalScheme& scheme,
                                       std::optional<double> about = std::nullopt,
                                       StateRange range = {});

/// Largest r for which the linearized matrix of `problem` (with dt tied to r
/// through dx and delta) satisfies the nonnegative eigenvalue condition.
double linearized_nn_bound(const Problem& problem, const schemes::RationalScheme& scheme,
                           std::optional<double> about = std::nullopt);

/// Sub-interval of a in [0, 1] for which min over x in the range of the
/// cubic_rd difference term is nonnegative. nullopt when empty. The set is
/// assumed to be a single interval, which holds for both equilibria.
std::optional<std::pair<double, double>> cubic_admissible_interval(double about,
                                                                   StateRange range = {});

struct Localization {
  double participation_ratio;
  double center_of_mass;  // 1-based grid index units
};

std::vector<Localization> localization_metrics(const EigenDecomposition& decomp);

struct Pairing {
  std::size_t j;        // 1-based, ascending eigenvalue order
  std::size_t partner;  // k + 1 - j
  double magnitude_mismatch;
};

std::vector<Pairing> pairing_symmetry(const EigenDecomposition& decomp);

}  // namespace oscillab::nonlinear
