#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "capret/growth.hpp"

namespace capret {

struct CashFlow {
  double time;
  double amount;
  bool operator==(const CashFlow&) const = default;
};

/// Dated cash events. At least two, times nondecreasing and nonnegative, and
/// both signs present (otherwise NoRootError).
class CashFlowSchedule {
public:
  explicit CashFlowSchedule(std::vector<CashFlow> events);

  std::span<const CashFlow> events() const { return events_; }

private:
  std::vector<CashFlow> events_;
};

struct IrrResult {
  /// Real root of smallest |o|, ties toward positive. Empty when no root is real.
  std::optional<double> principal_root;
  /// Every real rate, ascending, with multiplicity.
  std::vector<double> all_real_roots;
  /// Roots x = e^{-o step} off the positive real axis (complex rates).
  int complex_root_count = 0;
  /// Common grid step of the event times.
  double step = 0.0;
  /// Polynomial degree in x; all_real_roots.size() + complex_root_count == degree.
  int degree = 0;
  /// |sum C_k e^{-o t_k}| for each entry of all_real_roots.
  std::vector<double> residuals;
  /// Raw roots in x.
  std::vector<std::complex<double>> polynomial_roots;
};

struct DurandKernerOptions {
  int max_iterations = 500;
  double tolerance = 1e-12;  ///< on root movement, relative to max(1, |z|)
  std::uint64_t seed = 0x5eed;
};

struct IrrOptions {
  double grid_tolerance = 1e-9;  ///< years
  int max_degree = 1000;
  DurandKernerOptions solver;
};

/// Greatest step such that every time is an integer multiple of it within
/// `tolerance`. Throws DiscretizationError when none exists.
double commensurable_step(std::span<const double> times, double tolerance = 1e-9, int max_multiple = 1000);

/// All complex roots of sum coeffs[i] x^i (coeffs ascending, leading nonzero).
/// Throws NumericalError if the iteration does not settle.
std::vector<std::complex<double>> durand_kerner(std::span<const double> coeffs,
                                                const DurandKernerOptions& options = {});

/// sum C_k e^{-rate t_k}
double discounted_sum(const CashFlowSchedule& schedule, double rate);

/// o = <r> over the rotation: the discount rate that zeroes K(tau) e^{-o tau} - K(0).
double growth_cycle_irr(const GrowthScenario& scenario);

IrrResult general_irr(const CashFlowSchedule& schedule, const IrrOptions& options = {});

/// Cash-basis view of a scenario: -K(0) at 0, minus each investment (a
/// divestment is an inflow) and +K(tau) at tau.
CashFlowSchedule to_cash_flows(const GrowthScenario& scenario);

}  // namespace capret
