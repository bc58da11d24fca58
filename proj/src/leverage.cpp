#include "capret/leverage.hpp"

#include <cmath>
#include <sstream>

#include "capret/errors.hpp"

namespace capret {

void LeverageSpec::validate(double capital) const {
  if (!(leverage >= -1.0) || !std::isfinite(leverage)) {
    throw InvalidLeverageError("leverage must be at least -1");
  }
  if (!std::isfinite(market_rate)) {
    throw ArgumentError("market rate must be finite");
  }
  if (equity) {
    if (!(*equity > 0.0)) {
      throw ArgumentError("equity must be positive");
    }
    if (std::abs(capital / *equity - (leverage + 1.0)) >= 1e-9) {
      std::ostringstream msg;
      msg << "L + 1 = K/E violated: K/E = " << capital / *equity << ", L + 1 = " << leverage + 1.0;
      throw InvalidLeverageError(msg.str());
    }
  }
}

double rroe(double rroc, double leverage, double market_rate) {
  if (!(leverage >= -1.0)) {
    throw InvalidLeverageError("leverage must be at least -1");
  }
  // (1+L)<s> - L u is the same expression; this grouping is exact at L = -1
  return (1.0 + leverage) * rroc - leverage * market_rate;
}

double leveraged_discount_residual(const GrowthScenario& scenario, double leverage, double market_rate,
                                   double omega) {
  const double tau = scenario.rotation_length();
  const double r = time_average_rate(scenario.path(), tau, scenario.quadrature());
  return ((1.0 + leverage) * std::exp((r - omega) * tau) - leverage * std::exp((market_rate - omega) * tau)) -
         1.0;
}

double leveraged_discount_rate(const GrowthScenario& scenario, double leverage, double market_rate) {
  if (!(leverage >= -1.0)) {
    throw InvalidLeverageError("leverage must be at least -1");
  }
  scenario.require_investment_free("leveraged_discount_rate");
  const double tau = scenario.rotation_length();
  const double r = time_average_rate(scenario.path(), tau, scenario.quadrature());
  const double excess = leverage * -std::expm1(-tau * (r - market_rate));
  if (!(1.0 + excess > 0.0)) {
    std::ostringstream msg;
    msg << "leveraged terminal value is not positive at tau = " << tau << " (L = " << leverage
        << ", u = " << market_rate << ")";
    throw WipedOutEquityError(msg.str());
  }
  const double omega = r + std::log1p(excess) / tau;
  const double residual = leveraged_discount_residual(scenario, leverage, market_rate, omega);
  if (!(std::abs(residual) < 1e-9)) {
    std::ostringstream msg;
    msg << "leveraged discount rate residual " << residual << " exceeds 1e-9";
    throw NumericalError(msg.str());
  }
  return omega;
}

Optimum rroe_argmax(const GrowthScenario& scenario, double leverage, double market_rate, const TauGrid& grid) {
  if (!(leverage > -1.0)) {
    throw InvalidLeverageError("rroe is constant in tau at L = -1; its argmax is undefined");
  }
  return maximize_on_grid(
      [&](double tau) { return rroe(rroc(scenario.with_rotation(tau)), leverage, market_rate); }, grid);
}

}  // namespace capret
