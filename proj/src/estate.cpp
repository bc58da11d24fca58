#include "capret/estate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "capret/errors.hpp"

namespace capret {

AgeDensity AgeDensity::uniform() { return AgeDensity{}; }

AgeDensity AgeDensity::tabulated(std::vector<Knot> knots) {
  if (knots.size() < 2) {
    throw ArgumentError("tabulated age density needs at least two knots");
  }
  double mass = 0.0;
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i].age) || !std::isfinite(knots[i].density)) {
      throw ArgumentError("age density knots must be finite");
    }
    if (knots[i].density < 0.0) {
      throw ArgumentError("age density must be nonnegative");
    }
    if (i > 0) {
      if (!(knots[i].age > knots[i - 1].age)) {
        throw ArgumentError("age density knots must be strictly increasing in age");
      }
      mass += 0.5 * (knots[i].density + knots[i - 1].density) * (knots[i].age - knots[i - 1].age);
    }
  }
  if (!(mass > 0.0)) {
    throw ArgumentError("age density has zero mass");
  }
  AgeDensity out;
  out.factor_ = 1.0 / mass;
  out.knots_ = std::move(knots);
  return out;
}

double AgeDensity::density(double age, double rotation_length) const {
  if (is_uniform()) {
    return age >= 0.0 && age <= rotation_length ? 1.0 / rotation_length : 0.0;
  }
  if (age < knots_.front().age || age > knots_.back().age) {
    return 0.0;
  }
  auto hi = std::upper_bound(knots_.begin(), knots_.end(), age,
                             [](double a, const Knot& k) { return a < k.age; });
  if (hi == knots_.end()) {
    return factor_ * knots_.back().density;
  }
  auto lo = hi - 1;
  const double w = (age - lo->age) / (hi->age - lo->age);
  return factor_ * (lo->density + w * (hi->density - lo->density));
}

double AgeDensity::density_within(double age, double rotation_length, double lo, double hi) const {
  if (is_uniform()) {
    return 1.0 / rotation_length;
  }
  // the knot segment holding the middle of [lo, hi] covers the whole interval
  const double mid = 0.5 * (lo + hi);
  if (mid < knots_.front().age || mid > knots_.back().age) {
    return 0.0;
  }
  auto hi_knot = std::upper_bound(knots_.begin(), knots_.end(), mid,
                                  [](double a, const Knot& k) { return a < k.age; });
  if (hi_knot == knots_.end()) {
    --hi_knot;
  }
  const auto lo_knot = hi_knot - 1;
  const double w = (age - lo_knot->age) / (hi_knot->age - lo_knot->age);
  return factor_ * (lo_knot->density + w * (hi_knot->density - lo_knot->density));
}

std::vector<double> AgeDensity::breakpoints() const {
  std::vector<double> out;
  for (const Knot& k : knots_) {
    out.push_back(k.age);
  }
  return out;
}

EstateSpec::EstateSpec(GrowthScenario site, AgeDensity ages) : site_(std::move(site)), ages_(std::move(ages)) {
  const double tau = site_.rotation_length();
  if (!ages_.is_uniform() && (ages_.knots().front().age < 0.0 || ages_.knots().back().age > tau)) {
    std::ostringstream msg;
    msg << "age density support [" << ages_.knots().front().age << ", " << ages_.knots().back().age
        << "] exceeds rotation [0, " << tau << "]";
    throw DomainError(msg.str());
  }
}

namespace {

template <class G>
double estate_integral(const EstateSpec& estate, G&& g) {
  const auto breaks = estate.ages().breakpoints();
  const Trajectory traj(estate.site(), breaks);
  const double tau = estate.site().rotation_length();
  const AgeDensity& ages = estate.ages();
  return traj.integrate_pieces([&](double a, double k, double r, double lo, double hi) {
    return g(k, r) * ages.density_within(a, tau, lo, hi);
  });
}

}  // namespace

double estate_capitalization(const EstateSpec& estate) {
  return estate_integral(estate, [](double k, double) { return k; });
}

double estate_rroc(const EstateSpec& estate) {
  const double capital = estate_capitalization(estate);
  if (!(capital > 0.0)) {
    throw DegenerateCapitalError("estate capitalization is not positive");
  }
  return estate_integral(estate, [](double k, double r) { return k * r; }) / capital;
}

double area_average_rate(const EstateSpec& estate) {
  return estate_integral(estate, [](double, double r) { return r; });
}

}  // namespace capret
