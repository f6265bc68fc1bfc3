#include "oscillab/export.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace oscillab::io {
namespace {

using nlohmann::json;

json number(double x) {
  if (!std::isfinite(x)) return json(nullptr);
  return json(x);
}

json vector_json(std::span<const double> v) {
  json out = json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

void header(std::ostream& os, std::string_view hash) { os << "# config_hash=" << hash << '\n'; }

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

std::string config_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::array<char, 17> buf{};
  std::snprintf(buf.data(), buf.size(), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf.data(), 16);
}

void write_trajectory_csv(std::ostream& os, const sim::Trajectory& traj, std::string_view hash) {
  header(os, hash);
  const std::size_t k = traj.problem.disc.k;
  os << "step,time";
  for (std::size_t i = 1; i <= k; ++i) os << ",u_" << i;
  os << '\n';
  for (std::size_t n = 0; n < traj.states.size(); ++n) {
    os << n << ',' << format_number(static_cast<double>(n) * traj.problem.disc.dt);
    for (double x : traj.states[n]) os << ',' << format_number(x);
    os << '\n';
  }
}

void write_spectrum_csv(std::ostream& os, const lattice::Spectrum& spec, std::string_view hash) {
  header(os, hash);
  os << "j,lambda,scheme_value\n";
  for (std::size_t j = 0; j < spec.lambdas.size(); ++j) {
    os << j + 1 << ',' << format_number(spec.lambdas[j]) << ','
       << (spec.scheme_values ? format_number((*spec.scheme_values)[j]) : std::string()) << '\n';
  }
}

void write_bounds_csv(std::ostream& os, const std::vector<conditions::BoundsRow>& rows,
                      std::string_view hash) {
  header(os, hash);
  os << "scheme,sigma,nn_bound,balanced_bound,stable_bound\n";
  for (const auto& row : rows) {
    os << row.scheme << ',' << format_number(row.sigma) << ',' << row.nonneg.to_string() << ','
       << row.balanced.to_string() << ',' << row.stable.to_string() << '\n';
  }
}

void write_eigenvectors_csv(std::ostream& os, const eigen::EigenDecomposition& decomp,
                            std::string_view hash) {
  header(os, hash);
  const std::size_t n = decomp.vectors.rows();
  const std::size_t m = decomp.vectors.cols();
  os << 'i';
  for (std::size_t c = 1; c <= m; ++c) os << ",v_" << c;
  os << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    os << i + 1;
    for (std::size_t c = 0; c < m; ++c) os << ',' << format_number(decomp.vectors(i, c));
    os << '\n';
  }
}

void write_eigenvalues_csv(std::ostream& os, const eigen::EigenDecomposition& decomp,
                           const std::vector<nonlinear::Localization>& loc, std::string_view hash) {
  header(os, hash);
  os << "index,eigenvalue,participation_ratio,center_of_mass\n";
  for (std::size_t i = 0; i < decomp.values.size(); ++i) {
    os << i + 1 << ',' << format_number(decomp.values[i]) << ','
       << format_number(loc.at(i).participation_ratio) << ','
       << format_number(loc.at(i).center_of_mass) << '\n';
  }
}

void write_pairing_csv(std::ostream& os, const std::vector<nonlinear::Pairing>& pairs,
                       double wave_like_tol, std::string_view hash) {
  header(os, hash);
  os << "j,partner,magnitude_mismatch,wave_like\n";
  for (const auto& p : pairs) {
    os << p.j << ',' << p.partner << ',' << format_number(p.magnitude_mismatch) << ','
       << (p.magnitude_mismatch <= wave_like_tol ? 1 : 0) << '\n';
  }
}

void write_profile_csv(std::ostream& os, std::span<const double> profile, std::string_view hash) {
  header(os, hash);
  os << "i,energy\n";
  for (std::size_t i = 0; i < profile.size(); ++i) {
    os << i + 1 << ',' << format_number(profile[i]) << '\n';
  }
}

PgmScaling write_pgm(std::ostream& os, const sim::Trajectory& traj) {
  PgmScaling s;
  s.height = traj.states.size();
  s.width = s.height ? traj.states.front().size() : 0;
  bool first = true;
  for (const auto& st : traj.states) {
    for (double x : st) {
      if (first) {
        s.min = s.max = x;
        first = false;
      }
      s.min = std::min(s.min, x);
      s.max = std::max(s.max, x);
    }
  }
  os << "P5\n" << s.width << ' ' << s.height << "\n255\n";
  const double span = s.max - s.min;
  for (const auto& st : traj.states) {
    for (double x : st) {
      const double t = span > 0.0 ? (x - s.min) / span : 0.0;
      const auto byte = static_cast<unsigned char>(std::lround(std::clamp(t, 0.0, 1.0) * 255.0));
      os.put(static_cast<char>(byte));
    }
  }
  return s;
}

std::string pgm_sidecar_json(const PgmScaling& scaling, std::string_view hash) {
  json j;
  j["config_hash"] = std::string(hash);
  j["min"] = number(scaling.min);
  j["max"] = number(scaling.max);
  j["width"] = scaling.width;
  j["height"] = scaling.height;
  j["mapping"] = "value = min + (max - min) * byte / 255";
  return j.dump(2);
}

std::string to_json(const conditions::ConditionReport& report) {
  json j;
  j["classification"] = std::string(conditions::to_string(report.classification));
  j["nonneg_pass"] = report.nonneg_pass;
  j["balanced_pass"] = report.balanced_pass;
  json modes = json::array();
  for (const auto& m : report.per_mode) {
    modes.push_back({{"j", m.j},
                     {"lambda", number(m.lambda)},
                     {"scheme_value", number(m.scheme_value)},
                     {"modal_coeff", number(m.modal_coeff)},
                     {"nonneg_ok", m.nonneg_ok},
                     {"pair_index", m.pair_index},
                     {"pair_sum", number(m.pair_sum)},
                     {"balanced_value_ok", m.balanced_value_ok},
                     {"balanced_coeff_ok", m.balanced_coeff_ok}});
  }
  j["per_mode"] = std::move(modes);
  return j.dump(2);
}

std::string to_json(const diagnostics::OscillationReport& report) {
  json j;
  j["verdict"] = report.verdict;
  j["high_mode_energy_fraction"] = number(report.high_mode_energy_fraction);
  j["sign_change_density"] = number(report.sign_change_density);
  j["decay_rate_estimate"] =
      report.decay_rate_estimate ? number(*report.decay_rate_estimate) : json(nullptr);
  j["decay_rate_mode"] = report.decay_rate_mode ? json(*report.decay_rate_mode) : json(nullptr);
  j["samples"] = report.samples;
  j["spatial_profile"] = vector_json(report.spatial_profile);
  return j.dump(2);
}

std::string to_json(const nonlinear::GuaranteeReport& report) {
  json j;
  j["guaranteed"] = report.guaranteed;
  j["linearization"] = {{"kind", std::string(sim::to_string(report.linearization.source_kind))},
                        {"about", number(report.linearization.about)},
                        {"effective_rho", number(report.linearization.effective_rho)},
                        {"jacobian_rho", number(report.linearization.jacobian_rho)}};
  j["linearized_min_eigenvalue"] = number(report.linearized_min_eigenvalue);
  j["linearized_psd"] = report.linearized_psd;
  j["difference_min"] = number(report.difference_min);
  j["difference_argmin"] = number(report.difference_argmin);
  j["difference_psd"] = report.difference_psd;
  j["witness"] = report.witness ? vector_json(*report.witness) : json(nullptr);
  j["reverse_difference_psd"] = report.reverse_difference_psd;
  j["frozen_floor"] = number(report.frozen_floor);
  return j.dump(2);
}

}  // namespace oscillab::io
