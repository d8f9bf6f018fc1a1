#pragma once

#include <stdexcept>
#include <string>

namespace cdp {

/// Base for all engine errors; what() carries a human-readable message.
struct Error : std::runtime_error {
  explicit Error(const std::string& m) : std::runtime_error(m) {}
};

struct ParseError : Error {
  ParseError(const std::string& m, int line, int col)
      : Error(m + " at " + std::to_string(line) + ":" + std::to_string(col)),
        line(line), col(col) {}
  int line, col;
};

struct UnknownSymbol : Error {
  using Error::Error;
};

struct KindMismatch : Error {
  using Error::Error;
};

struct ValidationFailure : Error {
  using Error::Error;
};

struct ObjectFixed : Error {
  using Error::Error;
};

struct DegenerateShape : Error {
  using Error::Error;
};

/// A shape change collapsed a body to zero or negative area.
struct DegenerateResult : Error {
  using Error::Error;
};

struct OutOfMaterial : Error {
  using Error::Error;
};

struct Unrealizable : Error {
  using Error::Error;
};

struct ContactImpossible : Error {
  using Error::Error;
};

/// A tool's working end is facing away from its target.
struct NotOriented : Error {
  using Error::Error;
};

struct Diverged : Error {
  using Error::Error;
};

/// A process-stage diagram whose non-loop edges form a cycle.
struct CyclicChain : Error {
  using Error::Error;
};

/// A named part (or tag) matches nothing in the scene.
struct UnknownPart : Error {
  using Error::Error;
};

struct QueryFailure : Error {
  using Error::Error;
};

} // namespace cdp
