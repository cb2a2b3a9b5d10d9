#ifndef MJPSLICE_ERRORS_HPP
#define MJPSLICE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mjps {

// Model definition violated (non-finite rate, bad parameters, ...).
struct ModelError : std::runtime_error {
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

// Uniformization rate does not dominate an exit rate it must dominate.
struct DominatingRateError : std::runtime_error {
  explicit DominatingRateError(const std::string& what) : std::runtime_error(what) {}
};

// A forward-filter frontier emptied; `slot` is the failing transition index.
struct InfeasibleSliceError : std::runtime_error {
  std::size_t slot;
  explicit InfeasibleSliceError(std::size_t slot_, const std::string& what)
      : std::runtime_error(what), slot(slot_) {}
};

// Gibbs update could not produce a valid draw (constraints, degenerate weights).
struct InferenceError : std::runtime_error {
  explicit InferenceError(const std::string& what) : std::runtime_error(what) {}
};

// Bad run configuration or data file.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mjps

#endif
