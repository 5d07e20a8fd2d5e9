#pragma once
#ifndef WEIGHTCELL_ERRORS_HPP
#define WEIGHTCELL_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace weightcell {

/// Malformed input: bad JSON, unknown letters, mismatched alphabets.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configurable cap (states, cycles, rays, ball size, ...) was exceeded.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what_cap, std::size_t cap)
      : std::runtime_error(what_cap + " cap exceeded (cap = " + std::to_string(cap) + ")"),
        cap_name_(what_cap),
        cap_(cap) {}

  const std::string& cap_name() const noexcept { return cap_name_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::string cap_name_;
  std::size_t cap_;
};

/// A mathematical precondition does not hold (e.g. the weight function is unbounded).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace weightcell

#endif  // WEIGHTCELL_ERRORS_HPP
