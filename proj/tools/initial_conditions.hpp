#pragma once

// Initial-condition generators for the command-line tool.
//
//   ramp            u_i = 1 - i/(k+1)
//   sine:j          u_i = sin(pi i j / (k+1))
//   step            u_i = 1 for i <= k/2, else 0
//   noise[:seed[:amp]]
//                   linear interpolation between the boundary values plus
//                   amp * (U - 0.5), U = (g() >> 11) * 2^-53 with g a
//                   std::mt19937_64 seeded with `seed` (default amp 1)
//   file:path       whitespace or comma separated values, exactly k of them

#include <cstdint>
#include <string>
#include <string_view>

#include "oscillab/linalg.hpp"
#include "oscillab/schemes.hpp"

namespace oscillab::cli {

/// `default_seed` applies to "noise" given without a seed. Throws
/// InvalidInput for unknown generators or malformed arguments.
Vector make_initial_condition(std::string_view spec, std::size_t k,
                              const schemes::BoundaryData& bc, std::uint64_t default_seed);

Vector noise(std::size_t k, const schemes::BoundaryData& bc, std::uint64_t seed,
             double amplitude = 1.0);

}  // namespace oscillab::cli
