#pragma once

#include <stdexcept>
#include <string>

namespace eiscong {

// Root of everything this library throws on a domain failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violated by the caller (non-prime modulus, odd weight, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An operator needed coefficients beyond the truncation of its input.
class TruncationDeficit : public Error {
 public:
  TruncationDeficit(long needed, long available)
      : Error("truncation deficit: need coefficients up to " + std::to_string(needed) +
              ", input is truncated at " + std::to_string(available)),
        needed_(needed),
        available_(available) {}
  long needed() const { return needed_; }
  long available() const { return available_; }

 private:
  long needed_;
  long available_;
};

// The l-maximal order could not be reached within the iteration cap.
class IndexDivisorUnsupported : public Error {
 public:
  using Error::Error;
};

// Newform data (fixture, cache or remote) is missing or insufficient.
class DataUnavailable : public Error {
 public:
  using Error::Error;
};

// A fixture or remote payload does not match the record schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A bound check was asked for a label outside its hypotheses.
class InapplicableBound : public Error {
 public:
  using Error::Error;
};

}  // namespace eiscong
