#pragma once

#include <stdexcept>
#include <string>

namespace wmdelay {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input documents (JSON, HOA, word syntax).
struct ParseError : Error {
  using Error::Error;
};

/// Structurally well-formed input violating a model invariant.
struct ValidationError : Error {
  using Error::Error;
};

/// Operation refused on domain grounds (infeasible n, wrong acceptance kind, ...).
struct DomainError : Error {
  using Error::Error;
};

/// A hard resource bound was exceeded. Never silent truncation.
struct ResourceError : Error {
  ResourceError(const std::string& msg, std::size_t bound, std::size_t reached)
      : Error(msg), bound(bound), reached(reached) {}
  std::size_t bound;
  std::size_t reached;
};

/// A strategy could not produce a move (e.g. insufficient lookahead).
struct StrategyError : Error {
  using Error::Error;
};

}  // namespace wmdelay
