#include "capret/valuation.hpp"

#include <cmath>
#include <sstream>

#include "capret/errors.hpp"

namespace capret {
namespace {

void check_discount(double d) {
  if (!(d > 0.0) || !std::isfinite(d)) {
    std::ostringstream msg;
    msg << "discount rate must be positive, got " << d;
    throw InvalidDiscountError(msg.str());
  }
}

void check_leverage(double leverage) {
  if (!(leverage >= -1.0) || !std::isfinite(leverage)) {
    throw InvalidLeverageError("leverage must be at least -1");
  }
}

double mean_rate(const GrowthScenario& scenario) {
  return time_average_rate(scenario.path(), scenario.rotation_length(), scenario.quadrature());
}

}  // namespace

void ValuationSpec::validate() const {
  check_discount(discount_rate);
  check_leverage(leverage);
  if (!std::isfinite(market_rate)) {
    throw ArgumentError("market rate must be finite");
  }
}

double npv(const GrowthScenario& scenario, double discount_rate) {
  check_discount(discount_rate);
  scenario.require_investment_free("npv");
  const double tau = scenario.rotation_length();
  const double r = mean_rate(scenario);
  return scenario.initial_capital() * std::expm1(tau * (r - discount_rate)) /
         -std::expm1(-discount_rate * tau);
}

double leveraged_npv(const GrowthScenario& scenario, double discount_rate, double market_rate,
                     double leverage) {
  check_discount(discount_rate);
  check_leverage(leverage);
  scenario.require_investment_free("leveraged_npv");
  const double tau = scenario.rotation_length();
  const double r = mean_rate(scenario);
  // ((1+L) e^{tau r} - L e^{tau u}) e^{-tau d} - 1 regrouped into expm1 terms
  const double numerator = (1.0 + leverage) * std::expm1(tau * (r - discount_rate)) -
                           leverage * std::expm1(tau * (market_rate - discount_rate));
  return scenario.initial_capital() * numerator / -std::expm1(-discount_rate * tau);
}

double leveraged_npv(const GrowthScenario& scenario, const ValuationSpec& spec) {
  spec.validate();
  return leveraged_npv(scenario, spec.discount_rate, spec.market_rate, spec.leverage);
}

bool LeverageRatio::agrees(double relative_tolerance) const {
  return std::abs(ratio - closed_form) <= relative_tolerance * std::max(std::abs(ratio), std::abs(closed_form));
}

LeverageRatio leverage_npv_ratio(const GrowthScenario& scenario, double discount_rate, double market_rate,
                                 double leverage) {
  check_discount(discount_rate);
  check_leverage(leverage);
  scenario.require_investment_free("leverage_npv_ratio");
  const double tau = scenario.rotation_length();
  const double r = mean_rate(scenario);
  const double gap = std::expm1(tau * (discount_rate - r));
  if (std::abs(gap) <= kIndeterminacyTolerance) {
    throw IndeterminateRatioError("unleveraged NPV vanishes (mean rate equals discount rate); the leverage "
                                  "ratio is unbounded");
  }
  LeverageRatio out{};
  out.ratio = leveraged_npv(scenario, discount_rate, market_rate, leverage) / npv(scenario, discount_rate);
  // (e^{tau r} - e^{tau u}) / (e^{tau r} - e^{tau d}) = expm1(tau (u - r)) / expm1(tau (d - r))
  out.closed_form = 1.0 + leverage * std::expm1(tau * (market_rate - r)) / gap;
  return out;
}

Optimum npv_argmax(const GrowthScenario& scenario, double discount_rate, const TauGrid& grid) {
  return maximize_on_grid([&](double tau) { return npv(scenario.with_rotation(tau), discount_rate); }, grid);
}

}  // namespace capret
