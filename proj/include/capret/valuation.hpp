#pragma once

#include "capret/growth.hpp"
#include "capret/search.hpp"

namespace capret {

/// Discount rate d, market (borrowing) rate u and leverage L for valuation.
struct ValuationSpec {
  double discount_rate;
  double market_rate = 0.0;
  double leverage = 0.0;

  /// d > 0 and L >= -1.
  void validate() const;
  bool operator==(const ValuationSpec&) const = default;
};

/// Relative tolerance under which <r> is treated as equal to d.
inline constexpr double kIndeterminacyTolerance = 1e-10;

/// Perpetual-rotation NPV: K(0) (e^{tau(<r> - d)} - 1) / (1 - e^{-d tau}).
double npv(const GrowthScenario& scenario, double discount_rate);

/// K(0) [((1+L) e^{tau<r>} - L e^{tau u}) e^{-tau d} - 1] / (1 - e^{-d tau}); equals npv at L = 0.
double leveraged_npv(const GrowthScenario& scenario, double discount_rate, double market_rate,
                     double leverage);
double leveraged_npv(const GrowthScenario& scenario, const ValuationSpec& spec);

struct LeverageRatio {
  double ratio;        ///< leveraged_npv / npv
  double closed_form;  ///< 1 + L (e^{tau<r>} - e^{tau u}) / (e^{tau<r>} - e^{tau d})

  bool agrees(double relative_tolerance = 1e-9) const;
};

/// Throws IndeterminateRatioError when the unleveraged NPV vanishes (<r> = d).
LeverageRatio leverage_npv_ratio(const GrowthScenario& scenario, double discount_rate, double market_rate,
                                 double leverage);

/// Rotation length maximizing npv over the grid (golden-section refined).
Optimum npv_argmax(const GrowthScenario& scenario, double discount_rate, const TauGrid& grid);

}  // namespace capret
