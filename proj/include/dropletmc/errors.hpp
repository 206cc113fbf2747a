#pragma once

#include <stdexcept>
#include <string>

namespace dropletmc {

// Base for every error raised by the library. The CLI maps the derived
// categories onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument to a pure function (non-positive length, etc).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// Config document could not be parsed.
class MalformedConfig : public Error {
 public:
  MalformedConfig(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// A value violates a documented invariant. field() names the offender.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Root finder did not converge.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, double t, double z, double lo, double hi)
      : Error(what), t_(t), z_(z), lo_(lo), hi_(hi) {}
  double t() const noexcept { return t_; }
  double z() const noexcept { return z_; }
  double bracket_lo() const noexcept { return lo_; }
  double bracket_hi() const noexcept { return hi_; }

 private:
  double t_, z_, lo_, hi_;
};

// Reynolds number outside every tabulated drag regime.
class OutOfRegime : public Error {
 public:
  using Error::Error;
};

// Cloud of zero extent where a finite radius is required.
class SingularGeometry : public Error {
 public:
  using Error::Error;
};

// Displacement decreased between steps.
class InvalidStep : public Error {
 public:
  using Error::Error;
};

// Zero-variance distribution evaluated at its atom.
class DegenerateDistribution : public Error {
 public:
  using Error::Error;
};

// Too many failed members in an ensemble.
class EnsembleError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace dropletmc
