#pragma once

#include <stdexcept>
#include <string>

namespace igt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad or unreadable input: malformed files, invalid UTF-8, empty lines where
// content is required.
class InputError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a structural invariant, e.g. a misaligned
// record handed to the interleaved encoder.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace igt
