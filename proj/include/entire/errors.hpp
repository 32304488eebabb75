#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace entire {

// Input/precondition violations. `kind` is a stable short tag used by the
// CLI for one-line diagnostics ("invalid-spec", "zero-denominator", ...).
class PreconditionError : public std::runtime_error {
public:
  PreconditionError(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

// Broken internal invariant (e.g. a fold that fails to terminate).
class InternalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace entire
