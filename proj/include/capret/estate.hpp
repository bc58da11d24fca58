#pragma once

#include <variant>
#include <vector>

#include "capret/growth.hpp"

namespace capret {

/// Stationary probability density of site ages over [0, tau].
class AgeDensity {
public:
  struct Knot {
    double age;
    double density;
    bool operator==(const Knot&) const = default;
  };

  static AgeDensity uniform();
  /// Piecewise linear through the knots, zero outside them, rescaled to unit mass.
  static AgeDensity tabulated(std::vector<Knot> knots);

  bool is_uniform() const { return knots_.empty(); }
  /// Knots as given (empty for uniform); density() applies the renormalization.
  const std::vector<Knot>& knots() const { return knots_; }
  /// Factor applied to the given densities to reach unit mass (1 for uniform).
  double renormalization_factor() const { return factor_; }

  double density(double age, double rotation_length) const;
  /// Density at an age in [lo, hi], taking one-sided limits at the ends so a
  /// jump at a knot is seen from inside the interval.
  double density_within(double age, double rotation_length, double lo, double hi) const;
  std::vector<double> breakpoints() const;

  bool operator==(const AgeDensity&) const = default;

private:
  std::vector<Knot> knots_;
  double factor_ = 1.0;
};

/// Sites sharing one growth scenario, with ages distributed by `ages`.
class EstateSpec {
public:
  EstateSpec(GrowthScenario site, AgeDensity ages);

  const GrowthScenario& site() const { return site_; }
  const AgeDensity& ages() const { return ages_; }

private:
  GrowthScenario site_;
  AgeDensity ages_;
};

/// integral K(a) p(a) da
double estate_capitalization(const EstateSpec& estate);

/// integral K r p da / integral K p da: the capital-weighted return of the facility.
double estate_rroc(const EstateSpec& estate);

/// integral r(a) p(a) da: the unweighted area average of spot rates.
double area_average_rate(const EstateSpec& estate);

}  // namespace capret
