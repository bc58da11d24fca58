#include "capret/search.hpp"

#include <algorithm>
#include <cmath>

#include "capret/errors.hpp"

namespace capret {

std::vector<double> TauGrid::points() const {
  if (steps < 2) {
    throw ArgumentError("tau grid needs at least two points");
  }
  if (!(max > min) || !std::isfinite(min) || !std::isfinite(max)) {
    throw ArgumentError("tau grid needs min < max");
  }
  std::vector<double> out(static_cast<std::size_t>(steps));
  const double h = spacing();
  for (int i = 0; i < steps; ++i) {
    out[static_cast<std::size_t>(i)] = i == steps - 1 ? max : min + i * h;
  }
  return out;
}

double golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                               double tolerance, int max_iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iterations && hi - lo > tolerance; ++i) {
    // >= keeps the left bracket on ties
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return fc >= fd ? c : d;
}

Optimum maximize_on_grid(const std::function<double(double)>& f, const TauGrid& grid) {
  const auto taus = grid.points();
  std::size_t best = 0;
  double best_value = f(taus[0]);
  for (std::size_t i = 1; i < taus.size(); ++i) {
    const double v = f(taus[i]);
    if (v > best_value) {
      best = i;
      best_value = v;
    }
  }
  Optimum out{taus[best], best_value, best, taus[best]};
  const double lo = taus[best == 0 ? 0 : best - 1];
  const double hi = taus[std::min(best + 1, taus.size() - 1)];
  const double refined = golden_section_maximize(f, lo, hi, 1e-9 * std::max(1.0, std::abs(hi)));
  const double refined_value = f(refined);
  if (refined_value > best_value) {
    out.tau = refined;
    out.value = refined_value;
  }
  return out;
}

}  // namespace capret
