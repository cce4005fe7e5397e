#pragma once

#include <stdexcept>
#include <string>

namespace predprey {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid model parameters or grid description.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// certify() was called for parameters that violate the stabilization condition.
class ConditionViolated : public Error {
public:
  using Error::Error;
};

/// The closed-form logistic comparison left its domain of validity.
class Degenerate : public Error {
public:
  using Error::Error;
};

/// waiting_time() target at or below m2+.
class InvalidTarget : public Error {
public:
  using Error::Error;
};

/// refinement_order() received an exact (zero) error.
class DegenerateInput : public Error {
public:
  using Error::Error;
};

/// The explicit integrator produced non-finite or runaway values.
class BlowUp : public Error {
public:
  BlowUp(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

private:
  double time_;
};

} // namespace predprey
