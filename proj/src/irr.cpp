#include "capret/irr.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "capret/errors.hpp"

namespace capret {
namespace {

using cplx = std::complex<double>;

double real_gcd(double a, double b, double tol) {
  if (a < b) {
    std::swap(a, b);
  }
  while (b > tol) {
    const double r = std::fmod(a, b);
    if (r < tol || b - r < tol) {
      return b;
    }
    a = b;
    b = r;
  }
  return b;
}

cplx horner(std::span<const cplx> monic, cplx z) {
  // monic holds a_0..a_{n-1}; a_n = 1
  cplx acc = 1.0;
  for (std::size_t i = monic.size(); i-- > 0;) {
    acc = acc * z + monic[i];
  }
  return acc;
}

double horner_real(std::span<const double> coeffs, double x, double* derivative) {
  double p = 0.0;
  double dp = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    dp = dp * x + p;
    p = p * x + coeffs[i];
  }
  if (derivative != nullptr) {
    *derivative = dp;
  }
  return p;
}

}  // namespace

CashFlowSchedule::CashFlowSchedule(std::vector<CashFlow> events) : events_(std::move(events)) {
  if (events_.size() < 2) {
    throw ArgumentError("a cash-flow schedule needs at least two events");
  }
  bool positive = false;
  bool negative = false;
  for (std::size_t i = 0; i < events_.size(); ++i) {
    const CashFlow& e = events_[i];
    if (!std::isfinite(e.time) || !std::isfinite(e.amount)) {
      throw ArgumentError("cash-flow events must be finite");
    }
    if (e.time < 0.0) {
      throw ArgumentError("cash-flow times must be nonnegative");
    }
    if (i > 0 && e.time < events_[i - 1].time) {
      throw ArgumentError("cash-flow times must be nondecreasing");
    }
    positive = positive || e.amount > 0.0;
    negative = negative || e.amount < 0.0;
  }
  if (!positive || !negative) {
    throw NoRootError("cash flows of a single sign have no internal rate of return");
  }
}

double commensurable_step(std::span<const double> times, double tolerance, int max_multiple) {
  double step = 0.0;
  for (double t : times) {
    if (t > tolerance) {
      step = step == 0.0 ? t : real_gcd(step, t, tolerance);
    }
  }
  if (!(step > tolerance)) {
    throw DiscretizationError("event times do not span a positive grid step");
  }
  for (double t : times) {
    const double n = std::round(t / step);
    if (std::abs(t - n * step) > tolerance || n > max_multiple) {
      std::ostringstream msg;
      msg << "event time " << t << " is not commensurable with grid step " << step << " within "
          << tolerance << " years (limit " << max_multiple << " steps)";
      throw DiscretizationError(msg.str());
    }
  }
  return step;
}

std::vector<cplx> durand_kerner(std::span<const double> coeffs, const DurandKernerOptions& options) {
  if (coeffs.size() < 2 || coeffs.back() == 0.0) {
    throw ArgumentError("polynomial needs degree >= 1 and a nonzero leading coefficient");
  }
  const std::size_t n = coeffs.size() - 1;
  std::vector<cplx> monic(n);
  for (std::size_t i = 0; i < n; ++i) {
    monic[i] = coeffs[i] / coeffs.back();
  }
  if (n == 1) {
    return {-monic[0]};
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double radius = std::pow(std::abs(monic[0]), 1.0 / static_cast<double>(n));
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    radius = 1.0;
  }
  const double phase = 2.0 * std::numbers::pi * unit(rng);
  std::vector<cplx> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = phase + 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    z[k] = std::polar(radius * (1.0 + 0.1 * unit(rng)), angle);
  }

  bool converged = false;
  for (int it = 0; it < options.max_iterations && !converged; ++it) {
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      cplx denom = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) {
          denom *= z[k] - z[j];
        }
      }
      if (denom == cplx(0.0)) {
        denom = cplx(options.tolerance, options.tolerance);
      }
      const cplx delta = horner(monic, z[k]) / denom;
      z[k] -= delta;
      worst = std::max(worst, std::abs(delta) / std::max(1.0, std::abs(z[k])));
    }
    converged = worst <= options.tolerance;
  }

  if (!converged) {
    // Clustered roots converge linearly; accept if every root is a root to working precision.
    for (const cplx& root : z) {
      double scale = 0.0;
      double power = 1.0;
      for (double c : coeffs) {
        scale += std::abs(c) * power;
        power *= std::abs(root);
      }
      double value = std::abs(horner(monic, root)) * std::abs(coeffs.back());
      if (!(value <= 1e-10 * scale)) {
        std::ostringstream msg;
        msg << "Durand-Kerner did not converge in " << options.max_iterations
            << " iterations; residual " << value << " at root " << root;
        throw NumericalError(msg.str());
      }
    }
  }
  return z;
}

double discounted_sum(const CashFlowSchedule& schedule, double rate) {
  double total = 0.0;
  for (const CashFlow& e : schedule.events()) {
    total += e.amount * std::exp(-rate * e.time);
  }
  return total;
}

double growth_cycle_irr(const GrowthScenario& scenario) {
  scenario.require_investment_free("growth_cycle_irr");
  return time_average_rate(scenario.path(), scenario.rotation_length(), scenario.quadrature());
}

IrrResult general_irr(const CashFlowSchedule& schedule, const IrrOptions& options) {
  const auto events = schedule.events();
  std::vector<double> times;
  for (const CashFlow& e : events) {
    times.push_back(e.time);
  }
  IrrResult out;
  out.step = commensurable_step(times, options.grid_tolerance, options.max_degree);

  std::map<long, double> by_power;
  for (const CashFlow& e : events) {
    by_power[std::lround(e.time / out.step)] += e.amount;
  }
  std::erase_if(by_power, [](const auto& kv) { return kv.second == 0.0; });
  if (by_power.size() < 2) {
    throw NoRootError("cash flows net out to a single dated amount; no rate zeroes it");
  }
  const long low = by_power.begin()->first;
  const long high = by_power.rbegin()->first;
  std::vector<double> coeffs(static_cast<std::size_t>(high - low + 1), 0.0);
  for (const auto& [power, amount] : by_power) {
    coeffs[static_cast<std::size_t>(power - low)] = amount;
  }
  out.degree = static_cast<int>(coeffs.size()) - 1;
  out.polynomial_roots = durand_kerner(coeffs, options.solver);

  double total_abs = 0.0;
  for (const CashFlow& e : events) {
    total_abs += std::abs(e.amount);
  }

  for (const cplx& root : out.polynomial_roots) {
    const bool real_positive = root.real() > 0.0 && std::abs(root.imag()) <= 1e-6 * std::abs(root);
    if (!real_positive) {
      ++out.complex_root_count;
      continue;
    }
    double x = root.real();
    double best = std::abs(horner_real(coeffs, x, nullptr));
    for (int i = 0; i < 8 && best > 0.0; ++i) {
      double dp = 0.0;
      const double p = horner_real(coeffs, x, &dp);
      if (dp == 0.0) {
        break;
      }
      const double candidate = x - p / dp;
      const double value = candidate > 0.0 ? std::abs(horner_real(coeffs, candidate, nullptr)) : best;
      if (!(value < best)) {
        break;
      }
      x = candidate;
      best = value;
    }
    const double rate = -std::log(x) / out.step + 0.0;  // no negative zero
    const double residual = std::abs(discounted_sum(schedule, rate));
    double weighted = 0.0;
    for (const CashFlow& e : events) {
      weighted += std::abs(e.amount * std::exp(-rate * e.time));
    }
    if (!(residual < 1e-8 * std::max(total_abs, weighted))) {
      std::ostringstream msg;
      msg << "root o = " << rate << " leaves residual " << residual;
      throw NumericalError(msg.str());
    }
    out.all_real_roots.push_back(rate);
  }
  std::sort(out.all_real_roots.begin(), out.all_real_roots.end());
  for (double rate : out.all_real_roots) {
    out.residuals.push_back(std::abs(discounted_sum(schedule, rate)));
  }

  for (double rate : out.all_real_roots) {
    if (!out.principal_root || std::abs(rate) < std::abs(*out.principal_root) ||
        (std::abs(rate) == std::abs(*out.principal_root) && rate > *out.principal_root)) {
      out.principal_root = rate;
    }
  }
  return out;
}

CashFlowSchedule to_cash_flows(const GrowthScenario& scenario) {
  std::vector<CashFlow> flows{{0.0, -scenario.initial_capital()}};
  for (const InvestmentEvent& e : scenario.investments().events()) {
    flows.push_back({e.time, -e.amount});
  }
  flows.push_back({scenario.rotation_length(), capital_at(scenario, scenario.rotation_length())});
  return CashFlowSchedule(std::move(flows));
}

}  // namespace capret
