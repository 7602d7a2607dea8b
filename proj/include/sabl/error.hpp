#pragma once

#include <stdexcept>
#include <string>

namespace sabl {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: malformed files, invalid arguments, missing paths.
/// The CLI maps this to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace sabl
