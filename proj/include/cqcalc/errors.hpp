#pragma once

#include <stdexcept>
#include <string>

namespace cqcalc {

/// Malformed input: bad dimensions, non-associative tables, broken invariants.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A word-length or degree bound is too small to certify the requested quotient.
struct TruncationTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotQuasiFree : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotASection : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotARetraction : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotACocycle : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoConnection : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegreeOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cqcalc
