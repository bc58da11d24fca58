#pragma once

#include <limits>
#include <memory>
#include <variant>
#include <vector>

#include "capret/quadrature.hpp"

namespace capret {

/// Closed time interval [lo, hi] in years; hi may be +inf.
struct Interval {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double t) const { return t >= lo && t <= hi; }
};

/// Spot return rate r(t) over a rotation cycle. Immutable once built.
class ReturnPath {
public:
  struct Constant {
    double rate;
    bool operator==(const Constant&) const = default;
  };

  /// r(t) = mean_rate * [shape + 2 (1 - shape) sin^2(pi t / full_cycle)], t in [0, full_cycle].
  /// The factor 2 makes the full-cycle time average equal mean_rate.
  struct Ansatz {
    double mean_rate;
    double shape;
    double full_cycle;
    bool operator==(const Ansatz&) const = default;
  };

  struct Knot {
    double time;
    double rate;
    bool operator==(const Knot&) const = default;
  };

  /// Piecewise-linear through the knots; no extrapolation.
  struct Tabulated {
    std::vector<Knot> knots;
    bool operator==(const Tabulated&) const = default;
  };

  /// r'(t) = inner(horizon - t).
  struct Reversed {
    std::shared_ptr<const ReturnPath> inner;
    double horizon;
    bool operator==(const Reversed& o) const { return horizon == o.horizon && *inner == *o.inner; }
  };

  using Variant = std::variant<Constant, Ansatz, Tabulated, Reversed>;

  static ReturnPath constant(double rate);
  static ReturnPath ansatz(double mean_rate, double shape, double full_cycle);
  static ReturnPath tabulated(std::vector<Knot> knots);
  static ReturnPath reversed(ReturnPath inner, double horizon);

  /// Throws DomainError outside domain().
  double rate(double t) const;
  Interval domain() const;

  /// Times inside (lo, hi) where the rate has a kink (tabulated knots).
  std::vector<double> breakpoints(double lo, double hi) const;

  /// Reference full-cycle average used to express rates as multiples:
  /// the ansatz mean rate, the constant rate, or the average over the knot range.
  double reference_rate() const;

  const Variant& variant() const { return v_; }

  bool operator==(const ReturnPath& o) const { return v_ == o.v_; }

private:
  explicit ReturnPath(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

double evaluate(const ReturnPath& path, double t);

/// R(t) = integral of r over [0, t].
double cumulative_return(const ReturnPath& path, double t, const Quadrature& q = {});

/// R(tau) / tau; tau must be positive.
double time_average_rate(const ReturnPath& path, double tau, const Quadrature& q = {});

}  // namespace capret
