#pragma once

#include <span>
#include <vector>

namespace capret {

/// Numeric settings shared by every integral over a rotation.
struct Quadrature {
  /// Composite Simpson intervals spread over one integration range.
  int intervals = 4096;

  bool operator==(const Quadrature&) const = default;
};

/// A sub-range of an integration range together with its (even) interval count.
struct Piece {
  double lo;
  double hi;
  int intervals;
};

/// Splits [lo, hi] at the given breakpoints (those strictly inside are used)
/// and distributes `intervals` over the pieces in proportion to length.
/// Every piece receives an even count of at least two.
std::vector<Piece> partition(double lo, double hi, std::span<const double> breaks, int intervals);

/// Composite Simpson's rule on a uniform grid of `intervals` (even) steps.
template <class F>
double simpson(F&& f, double lo, double hi, int intervals) {
  if (hi == lo) {
    return 0.0;
  }
  const int n = intervals + (intervals % 2);
  const double h = (hi - lo) / n;
  double odd = 0.0;
  double even = 0.0;
  for (int i = 1; i < n; ++i) {
    const double x = lo + i * h;
    if (i % 2 == 1) {
      odd += f(x);
    } else {
      even += f(x);
    }
  }
  return h / 3.0 * (f(lo) + 4.0 * odd + 2.0 * even + f(hi));
}

/// Simpson over [lo, hi] split at breakpoints, so kinks fall on piece edges.
template <class F>
double integrate(F&& f, double lo, double hi, std::span<const double> breaks, const Quadrature& q) {
  double total = 0.0;
  for (const Piece& p : partition(lo, hi, breaks, q.intervals)) {
    total += simpson(f, p.lo, p.hi, p.intervals);
  }
  return total;
}

}  // namespace capret
