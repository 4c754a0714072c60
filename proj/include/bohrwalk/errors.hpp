#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bohrwalk {

/// An exact construction (convolution, ball, pushforward) grew past its configured size cap.
class SizeCapExceeded : public std::runtime_error {
 public:
  SizeCapExceeded(const std::string& what, std::size_t reached)
      : std::runtime_error(what + " (size reached: " + std::to_string(reached) + ")"),
        reached_(reached) {}
  std::size_t reached() const noexcept { return reached_; }

 private:
  std::size_t reached_;
};

/// A torus coordinate sits closer to a window boundary than the evaluation error allows to decide.
class BoundaryUndecidable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RootFindingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bohrwalk
