#pragma once

#include <stdexcept>
#include <string>

namespace amplex {

enum class ErrorKind {
  MalformedInput,
  AbsentSimplex,
  AbsentVertex,
  IdCollision,
  InvalidQuery,
  InvalidSubcomplex,
  InvalidEmbedding,
  InvalidParameters,
  InvalidInput,
  ResourceLimit,
  NotAmpleEnough,
  OutOfRegime,
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` tells callers (and the CLI
/// exit-code mapping) which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace amplex
