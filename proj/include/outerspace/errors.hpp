#pragma once

#include <stdexcept>
#include <string>

namespace outerspace {

// Base class for every error raised by the library. The CLI maps all of
// these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedInput : public Error {
 public:
  using Error::Error;
};

class RankMismatch : public Error {
 public:
  RankMismatch(int expected, int got)
      : Error("rank mismatch: expected " + std::to_string(expected) +
              ", got " + std::to_string(got)) {}
  using Error::Error;
};

class UnsupportedInput : public Error {
 public:
  using Error::Error;
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

inline void require_same_rank(int expected, int got) {
  if (expected != got) throw RankMismatch(expected, got);
}

}  // namespace outerspace
