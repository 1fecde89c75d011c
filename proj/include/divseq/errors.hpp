#pragma once

#include <stdexcept>
#include <string>

namespace divseq {

// Base class for every error raised by the library. The CLI maps the
// subclasses onto exit codes (input 1, unsupported 2, resource 3).
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Malformed user input or a violated precondition on user-supplied data.
class InputError : public Error {
  public:
    using Error::Error;
};

// Mathematically valid input that falls outside what the engine represents,
// e.g. an x-coordinate with a nonzero v-part.
class UnsupportedInput : public Error {
  public:
    using Error::Error;
};

// A computation exceeded a configured budget (recombination, degree, q).
class ResourceLimit : public Error {
  public:
    using Error::Error;
};

// [n]P = O where the operation needs a finite point.
class TorsionHit : public InputError {
  public:
    TorsionHit(int n, const std::string& what) : InputError(what), n_(n) {}
    int index() const noexcept { return n_; }

  private:
    int n_;
};

}  // namespace divseq
