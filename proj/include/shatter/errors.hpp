#pragma once

#include <stdexcept>

namespace shatter {

/// An exhaustive operation was asked to enumerate more than its hard limit.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A proof pipeline could not produce its witness (bad gadget, exhausted
/// retries).
class ConstructionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace shatter
