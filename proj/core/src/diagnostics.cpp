#include "oscillab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oscillab/errors.hpp"
#include "oscillab/lattice_spectral.hpp"

namespace oscillab::diagnostics {
namespace {

constexpr double kNoiseFloor = 1e-10;

Vector deviation(std::span<const double> u, std::span<const double> steady) {
  if (u.size() != steady.size()) throw InvalidInput("state and steady state differ in length");
  if (u.empty()) throw InvalidInput("empty state");
  Vector w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] - steady[i];
  return w;
}

bool at_noise_level(std::span<const double> w, std::span<const double> steady) {
  return norm_inf(w) <= kNoiseFloor * std::max(1.0, norm_inf(steady));
}

double high_fraction(std::span<const double> a, std::size_t k) {
  double total = 0.0;
  double high = 0.0;
  for (std::size_t j = 1; j <= k; ++j) {
    const double e = a[j - 1] * a[j - 1];
    total += e;
    if (j > k / 2) high += e;
  }
  return total > 0.0 ? std::clamp(high / total, 0.0, 1.0) : 0.0;
}

double alternation_density(std::span<const double> w, double floor) {
  const std::size_t k = w.size();
  if (k < 2) return 0.0;
  auto at = [&](std::size_t i) { return i == 0 || i > k ? 0.0 : w[i - 1]; };
  int prev = 0;
  std::size_t flips = 0;
  for (std::size_t i = 1; i <= k; ++i) {
    const double d = at(i - 1) - 2.0 * at(i) + at(i + 1);
    const int s = std::abs(d) <= floor ? 0 : (d > 0.0 ? 1 : -1);
    if (s != 0 && prev != 0 && s != prev) ++flips;
    prev = s;
  }
  return static_cast<double>(flips) / static_cast<double>(k - 1);
}

}  // namespace

Vector mode_energies(std::span<const double> u, std::span<const double> steady) {
  const Vector w = deviation(u, steady);
  const std::size_t k = w.size();
  Vector a = lattice::SineBasis(k).transform(w);
  const double scale = 2.0 / static_cast<double>(k + 1);
  for (double& x : a) x = scale * x * x;
  return a;
}

double high_mode_energy_fraction(std::span<const double> u, std::span<const double> steady) {
  const Vector w = deviation(u, steady);
  if (at_noise_level(w, steady)) return 0.0;
  return high_fraction(lattice::SineBasis(w.size()).transform(w), w.size());
}

double sign_change_density(std::span<const double> u, std::span<const double> steady) {
  const Vector w = deviation(u, steady);
  if (at_noise_level(w, steady)) return 0.0;
  return alternation_density(w, kNoiseFloor * std::max(1.0, norm_inf(u)));
}

std::vector<std::size_t> sample_steps(std::size_t n_states, std::size_t max_samples) {
  std::vector<std::size_t> idx;
  if (n_states == 0) return idx;
  if (max_samples < 2) max_samples = 2;
  if (n_states <= max_samples) {
    idx.resize(n_states);
    for (std::size_t i = 0; i < n_states; ++i) idx[i] = i;
    return idx;
  }
  const std::size_t last = n_states - 1;
  idx.reserve(max_samples);
  for (std::size_t i = 0; i < max_samples; ++i) {
    // Integer rounding of i * last / (max_samples - 1).
    const std::size_t num = i * last;
    const std::size_t den = max_samples - 1;
    idx.push_back((2 * num + den) / (2 * den));
  }
  return idx;
}

OscillationReport oscillation_score(const sim::Trajectory& traj, std::span<const double> steady,
                                    const DetectorThresholds& thresholds) {
  if (traj.states.size() < 2) throw InvalidInput("oscillation score needs at least two states");
  const std::size_t k = steady.size();
  if (k == 0 || traj.states.front().size() != k) {
    throw InvalidInput("steady state length does not match the trajectory");
  }
  const lattice::SineBasis basis(k);
  const double steady_scale = std::max(1.0, norm_inf(steady));

  OscillationReport rep;
  rep.spatial_profile.assign(k, 0.0);
  const auto steps = sample_steps(traj.states.size(), thresholds.max_samples);
  rep.samples = steps.size();

  Vector high(k, 0.0);
  for (std::size_t n : steps) {
    if (n == 0) continue;
    const Vector w = deviation(traj.states[n], steady);
    if (norm_inf(w) <= kNoiseFloor * steady_scale) continue;
    const Vector a = basis.transform(w);
    const double hf = high_fraction(a, k);
    const double sc =
        alternation_density(w, kNoiseFloor * std::max(1.0, norm_inf(traj.states[n])));
    rep.high_mode_energy_fraction = std::max(rep.high_mode_energy_fraction, hf);
    rep.sign_change_density = std::max(rep.sign_change_density, sc);
    if (hf > thresholds.energy || sc > thresholds.sign_change) rep.verdict = true;

    for (std::size_t j = 0; j < k; ++j) high[j] = j + 1 > k / 2 ? a[j] : 0.0;
    const Vector h = basis.inverse(high);
    for (std::size_t i = 0; i < k; ++i) rep.spatial_profile[i] += h[i] * h[i];
  }

  // Mode with the largest initial coefficient among those that change sign
  // over the first step.
  const Vector a0 = basis.transform(deviation(traj.states[0], steady));
  const Vector a1 = basis.transform(deviation(traj.states[1], steady));
  const double cut = 1e-8 * norm_inf(a0);
  std::optional<std::size_t> best;
  for (std::size_t j = 0; j < k; ++j) {
    if (std::abs(a0[j]) > cut && a0[j] * a1[j] < 0.0 &&
        (!best || std::abs(a0[j]) > std::abs(a0[*best]))) {
      best = j;
    }
  }
  if (best) {
    rep.decay_rate_mode = *best + 1;
    rep.decay_rate_estimate = decay_rate(traj, steady, *best + 1);
  }
  return rep;
}

double decay_rate(const sim::Trajectory& traj, std::span<const double> steady, std::size_t mode) {
  const std::size_t k = steady.size();
  if (mode == 0 || mode > k) throw InvalidInput("mode index out of range");
  if (traj.states.empty()) throw InvalidInput("empty trajectory");

  Vector row(k);
  for (std::size_t i = 1; i <= k; ++i) row[i - 1] = lattice::sine_entry(k, i, mode);
  auto coeff = [&](std::size_t n) { return dot(row, deviation(traj.states[n], steady)); };

  const Vector a0 = lattice::SineBasis(k).transform(deviation(traj.states[0], steady));
  const double scale = norm_inf(a0);
  const double first = a0[mode - 1];
  if (scale == 0.0 || std::abs(first) <= 1e-14 * scale) {
    throw InvalidInput("mode " + std::to_string(mode) +
                       " is zero at step 0; decay rate is undefined");
  }
  if (traj.states.size() < 2) throw InvalidInput("decay rate needs at least two states");

  const double floor = 1e-8 * scale;
  std::vector<double> logs{std::log(std::abs(first))};
  double second = 0.0;
  for (std::size_t n = 1; n < traj.states.size(); ++n) {
    const double c = coeff(n);
    if (n == 1) second = c;
    if (!(std::abs(c) > floor)) break;
    logs.push_back(std::log(std::abs(c)));
  }
  if (logs.size() < 2) return std::abs(second) / std::abs(first);

  const double m = static_cast<double>(logs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t n = 0; n < logs.size(); ++n) {
    const double x = static_cast<double>(n);
    sx += x;
    sy += logs[n];
    sxx += x * x;
    sxy += x * logs[n];
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return std::exp(slope);
}

}  // namespace oscillab::diagnostics
