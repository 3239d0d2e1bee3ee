#pragma once

#include <stdexcept>
#include <string>

namespace sepkit {

  // Base class for everything the library throws on purpose.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // A precondition on the mathematical input failed (not an ideal, x in T,
  // non-commutative input where commutativity is required, ...).
  class ArgumentError : public Error {
   public:
    using Error::Error;
  };

  // Malformed text input or a table that is not a semigroup.
  class FormatError : public Error {
   public:
    using Error::Error;
  };

  // A configured size cap would be exceeded.
  class ResourceError : public Error {
   public:
    using Error::Error;
  };

  // An invariant that theory guarantees was observed to fail.  Seeing this
  // means a corrupt table or a bug, never bad user input.
  class InternalError : public Error {
   public:
    using Error::Error;
  };

}  // namespace sepkit
