#include "capret/return_path.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "capret/errors.hpp"

namespace capret {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void out_of_domain(double t, Interval d) {
  std::ostringstream msg;
  msg << "t = " << t << " outside path domain [" << d.lo << ", " << d.hi << "]";
  throw DomainError(msg.str());
}

}  // namespace

ReturnPath ReturnPath::constant(double rate) {
  if (!std::isfinite(rate)) {
    throw ArgumentError("constant rate must be finite");
  }
  return ReturnPath(Constant{rate});
}

ReturnPath ReturnPath::ansatz(double mean_rate, double shape, double full_cycle) {
  if (!(full_cycle > 0.0) || !std::isfinite(full_cycle)) {
    throw ArgumentError("ansatz full cycle must be positive");
  }
  if (!std::isfinite(mean_rate) || !std::isfinite(shape)) {
    throw ArgumentError("ansatz parameters must be finite");
  }
  return ReturnPath(Ansatz{mean_rate, shape, full_cycle});
}

ReturnPath ReturnPath::tabulated(std::vector<Knot> knots) {
  if (knots.size() < 2) {
    throw ArgumentError("tabulated path needs at least two knots");
  }
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i].time) || !std::isfinite(knots[i].rate)) {
      throw ArgumentError("tabulated knots must be finite");
    }
    if (i > 0 && !(knots[i].time > knots[i - 1].time)) {
      throw ArgumentError("tabulated knot times must be strictly increasing");
    }
  }
  return ReturnPath(Tabulated{std::move(knots)});
}

ReturnPath ReturnPath::reversed(ReturnPath inner, double horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw ArgumentError("reversal horizon must be positive");
  }
  const Interval d = inner.domain();
  if (!d.contains(horizon) || !d.contains(0.0)) {
    throw DomainError("reversal horizon must lie in the inner path's domain, which must start at 0");
  }
  return ReturnPath(Reversed{std::make_shared<const ReturnPath>(std::move(inner)), horizon});
}

Interval ReturnPath::domain() const {
  return std::visit(
      Overloaded{
          [](const Constant&) { return Interval{}; },
          [](const Ansatz& a) { return Interval{0.0, a.full_cycle}; },
          [](const Tabulated& t) { return Interval{t.knots.front().time, t.knots.back().time}; },
          [](const Reversed& r) {
            const Interval in = r.inner->domain();
            return Interval{std::max(0.0, r.horizon - in.hi), std::min(r.horizon, r.horizon - in.lo)};
          },
      },
      v_);
}

double ReturnPath::rate(double t) const {
  const Interval d = domain();
  if (!d.contains(t)) {
    out_of_domain(t, d);
  }
  return std::visit(
      Overloaded{
          [](const Constant& c) { return c.rate; },
          [t](const Ansatz& a) {
            const double s = std::sin(std::numbers::pi * t / a.full_cycle);
            return a.mean_rate * (a.shape + 2.0 * (1.0 - a.shape) * s * s);
          },
          [t](const Tabulated& tab) {
            const auto& k = tab.knots;
            auto hi = std::upper_bound(k.begin(), k.end(), t,
                                       [](double x, const Knot& kn) { return x < kn.time; });
            if (hi == k.end()) {
              return k.back().rate;
            }
            auto lo = hi - 1;
            const double w = (t - lo->time) / (hi->time - lo->time);
            return lo->rate + w * (hi->rate - lo->rate);
          },
          [t](const Reversed& r) { return r.inner->rate(std::clamp(r.horizon - t, 0.0, r.horizon)); },
      },
      v_);
}

std::vector<double> ReturnPath::breakpoints(double lo, double hi) const {
  std::vector<double> out;
  std::visit(Overloaded{
                 [](const Constant&) {},
                 [](const Ansatz&) {},
                 [&](const Tabulated& tab) {
                   for (const Knot& k : tab.knots) {
                     if (k.time > lo && k.time < hi) {
                       out.push_back(k.time);
                     }
                   }
                 },
                 [&](const Reversed& r) {
                   for (double b : r.inner->breakpoints(r.horizon - hi, r.horizon - lo)) {
                     out.push_back(r.horizon - b);
                   }
                   std::reverse(out.begin(), out.end());
                 },
             },
             v_);
  return out;
}

double ReturnPath::reference_rate() const {
  return std::visit(Overloaded{
                        [](const Constant& c) { return c.rate; },
                        [](const Ansatz& a) { return a.mean_rate; },
                        [](const Tabulated& tab) {
                          double area = 0.0;
                          for (std::size_t i = 1; i < tab.knots.size(); ++i) {
                            const auto& a = tab.knots[i - 1];
                            const auto& b = tab.knots[i];
                            area += 0.5 * (a.rate + b.rate) * (b.time - a.time);
                          }
                          return area / (tab.knots.back().time - tab.knots.front().time);
                        },
                        [](const Reversed& r) { return r.inner->reference_rate(); },
                    },
                    v_);
}

double evaluate(const ReturnPath& path, double t) { return path.rate(t); }

double cumulative_return(const ReturnPath& path, double t, const Quadrature& q) {
  const Interval d = path.domain();
  if (!d.contains(0.0) || !d.contains(t) || t < 0.0) {
    out_of_domain(t, d);
  }
  const auto breaks = path.breakpoints(0.0, t);
  return integrate([&](double s) { return path.rate(s); }, 0.0, t, breaks, q);
}

double time_average_rate(const ReturnPath& path, double tau, const Quadrature& q) {
  if (!(tau > 0.0)) {
    throw ArgumentError("averaging horizon must be positive");
  }
  return cumulative_return(path, tau, q) / tau;
}

}  // namespace capret
