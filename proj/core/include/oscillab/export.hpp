#pragma once

// Deterministic text and image output: CSV tables headed by a config hash
// line, JSON reports, 8-bit PGM heat maps.

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oscillab/diagnostics.hpp"
#include "oscillab/lattice_spectral.hpp"
#include "oscillab/nonlinear_analysis.hpp"
#include "oscillab/oscillation_conditions.hpp"
#include "oscillab/simulate.hpp"
#include "oscillab/tridiag_eigen.hpp"

namespace oscillab::io {

/// Shortest round-trip decimal form; "nan", "inf", "-inf" otherwise.
std::string format_number(double x);

/// 64-bit FNV-1a of the text as 16 lowercase hex digits.
std::string config_hash(std::string_view canonical_text);

/// Every CSV starts with "# config_hash=<hash>" followed by a column header.
void write_trajectory_csv(std::ostream& os, const sim::Trajectory& traj, std::string_view hash);
void write_spectrum_csv(std::ostream& os, const lattice::Spectrum& spec, std::string_view hash);
void write_bounds_csv(std::ostream& os, const std::vector<conditions::BoundsRow>& rows,
                      std::string_view hash);
/// Rows are grid indices, one column per eigenvector (ascending eigenvalue).
void write_eigenvectors_csv(std::ostream& os, const eigen::EigenDecomposition& decomp,
                            std::string_view hash);
void write_eigenvalues_csv(std::ostream& os, const eigen::EigenDecomposition& decomp,
                           const std::vector<nonlinear::Localization>& loc, std::string_view hash);
/// `wave_like` marks pairs whose mismatch is at most `wave_like_tol`.
void write_pairing_csv(std::ostream& os, const std::vector<nonlinear::Pairing>& pairs,
                       double wave_like_tol, std::string_view hash);
void write_profile_csv(std::ostream& os, std::span<const double> profile, std::string_view hash);

struct PgmScaling {
  double min = 0.0;
  double max = 0.0;
  std::size_t width = 0;   // grid points
  std::size_t height = 0;  // time steps
};

/// Binary P5 image, rows = time, columns = space. Values map affinely from
/// [min, max] onto 0..255; a flat trajectory maps to 0.
PgmScaling write_pgm(std::ostream& os, const sim::Trajectory& traj);
std::string pgm_sidecar_json(const PgmScaling& scaling, std::string_view hash);

std::string to_json(const conditions::ConditionReport& report);
std::string to_json(const diagnostics::OscillationReport& report);
std::string to_json(const nonlinear::GuaranteeReport& report);

}  // namespace oscillab::io
