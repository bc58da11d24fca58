#pragma once

#include <optional>

#include "capret/growth.hpp"
#include "capret/search.hpp"

namespace capret {

/// Leverage L = K/E - 1, market rate u, optional equity E.
struct LeverageSpec {
  double leverage;
  double market_rate;
  std::optional<double> equity;

  /// L >= -1; with equity given, |K/E - (L + 1)| < 1e-9.
  void validate(double capital) const;
  bool operator==(const LeverageSpec&) const = default;
};

/// <s> + L (<s> - u); returns u exactly at L = -1.
double rroe(double rroc, double leverage, double market_rate);

/// Omega = <r> + ln[1 + L (1 - e^{-tau (<r> - u)})] / tau, checked against the
/// terminal-repayment condition [(1+L) e^{<r> tau} - L e^{u tau}] e^{-Omega tau} = 1.
double leveraged_discount_rate(const GrowthScenario& scenario, double leverage, double market_rate);

/// Residual of the terminal-repayment condition at the given Omega.
double leveraged_discount_residual(const GrowthScenario& scenario, double leverage, double market_rate,
                                   double omega);

/// Rotation length maximizing rroe(rroc(scenario @ tau), L, u). Requires L > -1.
Optimum rroe_argmax(const GrowthScenario& scenario, double leverage, double market_rate, const TauGrid& grid);

}  // namespace capret
