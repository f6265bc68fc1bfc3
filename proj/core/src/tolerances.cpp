#include "oscillab/tolerances.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

#include "oscillab/errors.hpp"

namespace oscillab {
namespace {

double parse_positive(std::string_view text) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !(value >= 0.0)) {
    throw InvalidInput("invalid tolerance value '" + std::string(text) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Tolerances Tolerances::parse(std::string_view text, Tolerances base) {
  text = trim(text);
  if (text.empty()) return base;
  if (text.find('=') == std::string_view::npos) {
    base.condition = parse_positive(text);
    return base;
  }
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidInput("tolerance item '" + std::string(item) + "' lacks '='");
    }
    const auto key = trim(item.substr(0, eq));
    const double value = parse_positive(trim(item.substr(eq + 1)));
    if (key == "abs") {
      base.absolute = value;
    } else if (key == "rel") {
      base.relative = value;
    } else if (key == "cond") {
      base.condition = value;
    } else if (key == "coeff") {
      base.coefficient = value;
    } else {
      throw InvalidInput("unknown tolerance key '" + std::string(key) + "'");
    }
  }
  return base;
}

Tolerances Tolerances::parse(std::string_view text) { return parse(text, Tolerances{}); }

Tolerances Tolerances::from_environment() {
  const char* env = std::getenv("OSCILLAB_TOL");
  if (env == nullptr) return {};
  return parse(env);
}

}  // namespace oscillab
