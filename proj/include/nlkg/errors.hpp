#pragma once
#include <stdexcept>
#include <string>

namespace nlkg {

// Error taxonomy maps onto CLI exit codes:
//   ConfigError      -> 4   bad configuration / schema violation
//   HypothesisError  -> 2   a structural nondegeneracy check failed
//                           (resonant frequencies, eigenvalue at the
//                           spectral edge, degenerate coupling, ...)
//   ResolutionError  -> 3   the requested quantity is not resolvable at
//                           the current grid / tolerance settings
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& w) : std::runtime_error(w) {}
};

struct HypothesisError : std::runtime_error {
  explicit HypothesisError(const std::string& w) : std::runtime_error(w) {}
};

struct ResolutionError : std::runtime_error {
  explicit ResolutionError(const std::string& w) : std::runtime_error(w) {}
};

}  // namespace nlkg
