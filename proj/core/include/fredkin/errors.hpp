#pragma once

#include <stdexcept>
#include <string>

namespace fredkin {

// Exit codes used by the command-line tool.  Library code throws the typed
// exceptions below; the tool maps them to these codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,              // malformed input, invalid arguments
  kExitCapacity = 2,           // requested size exceeds a configured cap
  kExitSpectralAmbiguity = 3,  // eigenvalue cluster too close to resolve
  kExitIdentityViolation = 4,  // an exact identity check failed
};

// Thrown when a request exceeds an explicit capacity cap (enumeration size,
// closure size, dense-solver dimension, ...).  Callers that want the expensive
// path anyway must raise the cap explicitly.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an eigenvalue computation cannot separate the requested
// eigenvalue cluster from the rest of the spectrum at the working tolerance.
class SpectralAmbiguityError : public std::runtime_error {
 public:
  explicit SpectralAmbiguityError(const std::string& what)
      : std::runtime_error(what) {}
};

// Thrown when an exact identity that the code verifies at runtime
// (convolution identities, composition laws, normalization) fails.
class IdentityViolationError : public std::runtime_error {
 public:
  explicit IdentityViolationError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace fredkin
