#include "initial_conditions.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "oscillab/errors.hpp"
#include "oscillab/lattice_spectral.hpp"

namespace oscillab::cli {
namespace {

template <class T>
T parse_value(std::string_view text, const char* what) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw InvalidInput(std::string("malformed ") + what + " '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

Vector read_file(const std::string& path, std::size_t k) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open initial condition file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  for (char& c : text)
    if (c == ',') c = ' ';
  std::istringstream ss(text);
  Vector v;
  double x;
  while (ss >> x) v.push_back(x);
  if (!ss.eof()) throw InvalidInput("non-numeric data in '" + path + "'");
  if (v.size() != k) {
    throw InvalidInput("'" + path + "' holds " + std::to_string(v.size()) +
                       " values, expected k = " + std::to_string(k));
  }
  return v;
}

}  // namespace

Vector noise(std::size_t k, const schemes::BoundaryData& bc, std::uint64_t seed,
             double amplitude) {
  std::mt19937_64 gen(seed);
  Vector v(k);
  for (std::size_t i = 1; i <= k; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(k + 1);
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    v[i - 1] = bc.left + (bc.right - bc.left) * t + amplitude * (u - 0.5);
  }
  return v;
}

Vector make_initial_condition(std::string_view spec, std::size_t k,
                              const schemes::BoundaryData& bc, std::uint64_t default_seed) {
  if (k == 0) throw InvalidInput("k must be positive");
  if (spec.rfind("file:", 0) == 0) return read_file(std::string(spec.substr(5)), k);

  const auto parts = split(spec, ':');
  const std::string_view name = parts[0];
  Vector v(k);
  if (name == "ramp" && parts.size() == 1) {
    for (std::size_t i = 1; i <= k; ++i) v[i - 1] = 1.0 - static_cast<double>(i) / (k + 1);
    return v;
  }
  if (name == "step" && parts.size() == 1) {
    for (std::size_t i = 1; i <= k; ++i) v[i - 1] = i <= k / 2 ? 1.0 : 0.0;
    return v;
  }
  if (name == "sine" && parts.size() == 2) {
    const auto j = parse_value<std::size_t>(parts[1], "sine mode");
    if (j == 0 || j > k) throw InvalidInput("sine mode must lie in 1..k");
    for (std::size_t i = 1; i <= k; ++i) v[i - 1] = lattice::sine_entry(k, i, j);
    return v;
  }
  if (name == "noise" && parts.size() <= 3) {
    const std::uint64_t seed =
        parts.size() >= 2 ? parse_value<std::uint64_t>(parts[1], "seed") : default_seed;
    const double amp = parts.size() == 3 ? parse_value<double>(parts[2], "noise amplitude") : 1.0;
    if (!std::isfinite(amp)) throw InvalidInput("noise amplitude must be finite");
    return noise(k, bc, seed, amp);
  }
  throw InvalidInput("unknown initial condition '" + std::string(spec) +
                     "' (expected ramp, sine:j, step, noise[:seed[:amp]] or file:path)");
}

}  // namespace oscillab::cli
