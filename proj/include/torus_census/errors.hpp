#pragma once

#include <stdexcept>
#include <string>

namespace torus_census {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text or JSON.
struct ParseError : Error {
  using Error::Error;
};

// An operation was called outside its domain.
struct PreconditionError : Error {
  using Error::Error;
};

// A lattice enumeration could not prove its search region finite under the ceiling.
struct CertificationError : Error {
  using Error::Error;
};

struct UnsupportedBlowdown : Error {
  using Error::Error;
};

}  // namespace torus_census
