#pragma once

#include <stdexcept>
#include <string>

namespace capret {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Evaluation point outside a path's or scenario's domain.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Malformed argument (nonpositive horizon, empty grid, ragged rows, ...).
class ArgumentError : public Error {
public:
  using Error::Error;
};

/// Capital reached zero or went negative.
class DegenerateCapitalError : public Error {
public:
  using Error::Error;
};

/// Operation requires an investment-free scenario.
class UnsupportedScheduleError : public Error {
public:
  using Error::Error;
};

/// Cash flows all carry the same sign.
class NoRootError : public Error {
public:
  using Error::Error;
};

/// Event times have no common grid step.
class DiscretizationError : public Error {
public:
  using Error::Error;
};

/// Iterative method failed; message carries the residual.
class NumericalError : public Error {
public:
  using Error::Error;
};

class InvalidDiscountError : public Error {
public:
  using Error::Error;
};

/// Leveraged/unleveraged NPV ratio is singular (mean rate equals discount rate).
class IndeterminateRatioError : public Error {
public:
  using Error::Error;
};

class InvalidLeverageError : public Error {
public:
  using Error::Error;
};

/// Leveraged terminal value is nonpositive, so no discount rate exists.
class WipedOutEquityError : public Error {
public:
  using Error::Error;
};

}  // namespace capret
