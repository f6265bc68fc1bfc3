#pragma once

// Oscillation detector over trajectories: DST mode energies of u_n - ubar,
// second-difference sign alternation, per-mode decay fits.

#include <cstddef>
#include <optional>
#include <span>

#include "oscillab/linalg.hpp"
#include "oscillab/simulate.hpp"

namespace oscillab::diagnostics {

struct DetectorThresholds {
  double energy = 0.05;       // tau_e on the high-mode energy fraction
  double sign_change = 0.2;   // tau_s on the sign-change density
  std::size_t max_samples = 1024;
};

/// e_j = 2/(k+1) a_j^2 with a = S (u - steady); sums to ||u - steady||^2.
Vector mode_energies(std::span<const double> u, std::span<const double> steady);

/// Share of the energy in modes j > floor(k/2). Zero when u - steady is at
/// round-off level (below 1e-10 max(1, |steady|_inf)).
double high_mode_energy_fraction(std::span<const double> u, std::span<const double> steady);

/// Fraction of the k-1 adjacent pairs of second differences of u - steady
/// (zero-padded at both ends) that alternate in sign. Entries below
/// 1e-10 max(1, |u|_inf) count as zero.
double sign_change_density(std::span<const double> u, std::span<const double> steady);

struct OscillationReport {
  /// Maxima over the sampled steps after the first.
  double high_mode_energy_fraction = 0.0;
  double sign_change_density = 0.0;
  /// Fitted per-step factor of the largest mode that flips sign on the first
  /// step; empty when no mode does.
  std::optional<double> decay_rate_estimate;
  std::optional<std::size_t> decay_rate_mode;
  /// Sum over sampled steps after the first of the squared high-mode part
  /// of u_n - ubar, per grid index.
  Vector spatial_profile;
  bool verdict = false;
  std::size_t samples = 0;
};

/// Sampled step indices: all of 0..N when N + 1 <= max_samples, else
/// max_samples indices spread uniformly, both ends included.
std::vector<std::size_t> sample_steps(std::size_t n_states, std::size_t max_samples);

/// Throws InvalidInput for fewer than two states or a length mismatch.
OscillationReport oscillation_score(const sim::Trajectory& traj, std::span<const double> steady,
                                    const DetectorThresholds& thresholds = {});

/// exp of the least-squares slope of log|a_j(n)| over the leading run of
/// states where |a_j(n)| > 1e-8 max_i |a_i(0)|. `mode` is 1-based. Throws
/// InvalidInput when a_j(0) is zero.
double decay_rate(const sim::Trajectory& traj, std::span<const double> steady, std::size_t mode);

}  // namespace oscillab::diagnostics
