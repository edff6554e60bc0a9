#pragma once

#include <stdexcept>
#include <string>

namespace padyn {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A read or consuming operation needed more known digits than the value carries.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

class PrimeMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidPrime : public Error {
 public:
  using Error::Error;
};

class InvalidDigit : public Error {
 public:
  using Error::Error;
};

/// val_unit on an element whose known digits are all zero.
class AllDigitsZero : public Error {
 public:
  using Error::Error;
};

class NotAUnit : public Error {
 public:
  using Error::Error;
};

class ZeroVector : public Error {
 public:
  using Error::Error;
};

/// box_discrepancy refused a grid with more than 10^7 cells.
class DepthTooLarge : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace padyn
