#pragma once

#include <stdexcept>
#include <string>

namespace ilab {

struct CapacityExceeded : std::runtime_error {
  explicit CapacityExceeded(const std::string &what) : std::runtime_error(what) {}
};

struct NotNormal : std::runtime_error {
  explicit NotNormal(const std::string &what) : std::runtime_error(what) {}
};

struct NotAHomomorphism : std::runtime_error {
  explicit NotAHomomorphism(const std::string &what) : std::runtime_error(what) {}
};

struct NotBijective : std::runtime_error {
  explicit NotBijective(const std::string &what) : std::runtime_error(what) {}
};

struct NotAnObelisk : std::runtime_error {
  explicit NotAnObelisk(const std::string &what) : std::runtime_error(what) {}
};

struct BadInput : std::runtime_error {
  explicit BadInput(const std::string &what) : std::runtime_error(what) {}
};

// Raised when an internal cross-check fails (closure vs. filter set,
// non-integral width, snapshot corruption).  Never expected in a correct build.
struct ConsistencyError : std::logic_error {
  explicit ConsistencyError(const std::string &what) : std::logic_error(what) {}
};

}  // namespace ilab
