#ifndef MODSUPER_ERRORS_HPP
#define MODSUPER_ERRORS_HPP

#include <stdexcept>

namespace modsuper {

/// Raised when a randomized test exhausts its retry budget without reaching
/// a certified answer.
struct UnknownResult : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a structural identity asserted by the theory fails; callers
/// treat this as a theorem-level violation, never as a soft error.
struct TheoremViolation : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace modsuper

#endif
