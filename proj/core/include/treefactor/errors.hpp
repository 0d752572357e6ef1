#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace treefactor {

/// A sampled distance fell outside the invertible range of a modulus.
struct ModulusRangeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Instance too large for an exponential-time exact algorithm.
struct SizeLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The contracted quotient graph has a cycle, so no tree factorization
/// exists at the requested resolution. Carries a closed vertex path of the
/// domain graph witnessing the cycle.
struct NotATreeError : std::runtime_error {
  explicit NotATreeError(std::vector<int> cycle_vertices)
      : std::runtime_error("quotient is not a tree"),
        cycle(std::move(cycle_vertices)) {}
  std::vector<int> cycle;
};

/// Parse failure for CSV/JSON inputs; line is 1-based, 0 when unknown.
struct ParseError : std::runtime_error {
  ParseError(const std::string& what, int line_number)
      : std::runtime_error(line_number > 0
                               ? what + " (line " + std::to_string(line_number) + ")"
                               : what),
        line(line_number) {}
  int line = 0;
};

}  // namespace treefactor
