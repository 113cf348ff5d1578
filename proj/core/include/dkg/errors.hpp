#pragma once

#include <stdexcept>
#include <string>

namespace dkg {

/// A field blew up (non-finite values) during time stepping.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, long step) : std::runtime_error(what), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

/// Picard iteration hit max_iters without meeting the tolerance.
class NonContractionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Compact support assumption of a windowed estimate was violated.
class WindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dkg
