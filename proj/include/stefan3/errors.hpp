#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stefan3 {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a special function (erf_inv, erfc_inv, U).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// One violated input invariant. `code` is stable and machine-readable.
struct Violation {
  std::string code;
  std::string message;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : Error(summarize(violations)), violations_(std::move(violations)) {}
  ValidationError(std::string code, std::string message)
      : ValidationError(std::vector<Violation>{{std::move(code), std::move(message)}}) {}

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  static std::string summarize(const std::vector<Violation>& v) {
    std::string out = "invalid problem data";
    for (const auto& item : v) out += "; " + item.code + ": " + item.message;
    return out;
  }

  std::vector<Violation> violations_;
};

/// Operation needs a boundary datum (h0/A_inf, A or q0) that the context lacks.
class MissingBoundaryDatum : public Error {
 public:
  using Error::Error;
};

class RootFailure : public Error {
 public:
  enum class Reason { NoSignChange, NonFinite, ResidualTooLarge };

  RootFailure(Reason reason, const std::string& what) : Error(what), reason_(reason) {}
  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

/// A named hypothesis inequality of an equivalence mapping does not hold.
class HypothesisError : public Error {
 public:
  HypothesisError(std::string inequality, double lhs, double rhs)
      : Error("hypothesis '" + inequality + "' fails: lhs=" + std::to_string(lhs) +
              " rhs=" + std::to_string(rhs)),
        inequality_(std::move(inequality)),
        lhs_(lhs),
        rhs_(rhs) {}

  const std::string& inequality() const noexcept { return inequality_; }
  double lhs() const noexcept { return lhs_; }
  double rhs() const noexcept { return rhs_; }

 private:
  std::string inequality_;
  double lhs_;
  double rhs_;
};

/// Reading a configuration or writing an output file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A finite-difference stencil point left the phase it was meant to sample.
class StencilCrossesFront : public Error {
 public:
  using Error::Error;
};

}  // namespace stefan3
