#pragma once

#include <stdexcept>
#include <string>

namespace semiframe {

// Malformed request: mismatched dimensions or bases, invalid ordering, out-of-range parameter.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical precondition failed (singular restricted matrix, rank deficiency, empty mask).
// evidence() carries the offending quantity, e.g. the smallest eigenvalue seen.
class RefusedError : public std::runtime_error {
 public:
  RefusedError(const std::string& what, double evidence)
      : std::runtime_error(what), evidence_(evidence) {}

  double evidence() const noexcept { return evidence_; }

 private:
  double evidence_;
};

}  // namespace semiframe
