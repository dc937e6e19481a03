#pragma once

#include <stdexcept>
#include <string>

namespace gcalc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad index, malformed input,
/// a graph with a loop, a pin on a part boundary, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A configured resource cap would be exceeded. Results are never truncated;
/// the computation is refused instead.
class ResourceLimitExceeded : public Error {
 public:
  using Error::Error;
};

/// An exact linear system turned out to be singular.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// An internal identity that must hold exactly did not (for example a
/// non-integral division in the consistency-matrix formula).
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace gcalc
