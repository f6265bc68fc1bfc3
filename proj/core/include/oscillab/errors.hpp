#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace oscillab {

/// Base class for every error raised by the library.
class OscillabError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejected input: empty grid, mismatched lengths, unknown names, bad ranges.
class InvalidInput : public OscillabError {
 public:
  using OscillabError::OscillabError;
};

/// The denominator of an amplification function vanished at the argument.
class PoleError : public OscillabError {
 public:
  PoleError(const std::string& what, double argument,
            std::optional<std::size_t> mode = std::nullopt)
      : OscillabError(what), argument_(argument), mode_(mode) {}

  double argument() const noexcept { return argument_; }
  /// 1-based mode index when the pole was met while evaluating a spectrum.
  std::optional<std::size_t> mode() const noexcept { return mode_; }

 private:
  double argument_;
  std::optional<std::size_t> mode_;
};

class SingularMatrix : public OscillabError {
 public:
  using OscillabError::OscillabError;
};

/// An iteration hit its cap; `iterations()` is the count reached.
class ConvergenceFailure : public OscillabError {
 public:
  ConvergenceFailure(const std::string& what, std::size_t iterations)
      : OscillabError(what), iterations_(iterations) {}
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  std::size_t iterations_;
};

}  // namespace oscillab
