#pragma once

#include <stdexcept>
#include <string>

namespace multisym {

/// Operation called outside its documented domain: wrong grade, wrong
/// orbit, malformed input, mixed extension fields.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A computation contradicted an identity that holds unconditionally for
/// valid inputs. Reaching this indicates a bug, not a user error.
struct InternalInvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Input-file syntax error with 1-based line information.
struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg),
        line(line_) {}
};

struct NotMultisymplecticError : PreconditionError {
  NotMultisymplecticError() : PreconditionError("form is not multisymplectic") {}
};

}  // namespace multisym
