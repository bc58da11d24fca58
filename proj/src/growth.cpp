#include "capret/growth.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "capret/errors.hpp"

namespace capret {
namespace {

void check_capital(double k, double t) {
  if (!(k > 0.0)) {
    std::ostringstream msg;
    msg << "capital " << k << " is not positive at t = " << t;
    throw DegenerateCapitalError(msg.str());
  }
}

double integral_of_rate(const ReturnPath& path, double lo, double hi, const Quadrature& q) {
  const auto breaks = path.breakpoints(lo, hi);
  return integrate([&](double s) { return path.rate(s); }, lo, hi, breaks, q);
}

}  // namespace

InvestmentSchedule::InvestmentSchedule(std::vector<InvestmentEvent> events) : events_(std::move(events)) {
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if (!std::isfinite(events_[i].time) || !std::isfinite(events_[i].amount)) {
      throw ArgumentError("investment events must be finite");
    }
    if (i > 0 && !(events_[i].time > events_[i - 1].time)) {
      throw ArgumentError("investment event times must be strictly increasing");
    }
  }
}

GrowthScenario::GrowthScenario(double initial_capital, double rotation_length, ReturnPath path,
                               InvestmentSchedule investments, Quadrature quadrature)
    : initial_capital_(initial_capital),
      rotation_length_(rotation_length),
      path_(std::move(path)),
      investments_(std::move(investments)),
      quadrature_(quadrature) {
  if (!(initial_capital_ > 0.0) || !std::isfinite(initial_capital_)) {
    throw ArgumentError("initial capital must be positive");
  }
  if (!(rotation_length_ > 0.0) || !std::isfinite(rotation_length_)) {
    throw ArgumentError("rotation length must be positive");
  }
  if (quadrature_.intervals < 2) {
    throw ArgumentError("quadrature needs at least two intervals");
  }
  const Interval d = path_.domain();
  if (!d.contains(0.0) || !d.contains(rotation_length_)) {
    std::ostringstream msg;
    msg << "rotation [0, " << rotation_length_ << "] is outside the path domain [" << d.lo << ", " << d.hi
        << "]";
    throw DomainError(msg.str());
  }
  for (const InvestmentEvent& e : investments_.events()) {
    if (!(e.time > 0.0 && e.time < rotation_length_)) {
      std::ostringstream msg;
      msg << "investment at t = " << e.time << " is not strictly inside (0, " << rotation_length_ << ")";
      throw DomainError(msg.str());
    }
  }
}

GrowthScenario GrowthScenario::with_rotation(double rotation_length) const {
  return GrowthScenario(initial_capital_, rotation_length, path_, investments_, quadrature_);
}

void GrowthScenario::require_investment_free(const char* operation) const {
  if (!investments_.empty()) {
    throw UnsupportedScheduleError(std::string(operation) +
                                   " requires a scenario without intermediate investments");
  }
}

Trajectory::Trajectory(const GrowthScenario& scenario, std::span<const double> extra_breaks) {
  const double tau = scenario.rotation_length();
  const ReturnPath& path = scenario.path();
  const auto events = scenario.investments().events();

  std::vector<double> breaks = path.breakpoints(0.0, tau);
  for (const auto& e : events) {
    breaks.push_back(e.time);
  }
  breaks.insert(breaks.end(), extra_breaks.begin(), extra_breaks.end());

  double capital = scenario.initial_capital();
  auto next_event = events.begin();
  for (const Piece& piece : partition(0.0, tau, breaks, scenario.quadrature().intervals)) {
    while (next_event != events.end() && next_event->time <= piece.lo) {
      capital += next_event->amount;
      check_capital(capital, next_event->time);
      ++next_event;
    }
    const double h = (piece.hi - piece.lo) / piece.intervals;
    std::vector<Node> nodes;
    nodes.reserve(static_cast<std::size_t>(piece.intervals) + 1);
    double prev_rate = path.rate(piece.lo);
    double growth = 0.0;
    nodes.push_back({piece.lo, prev_rate, capital});
    for (int i = 1; i <= piece.intervals; ++i) {
      const double t = i == piece.intervals ? piece.hi : piece.lo + i * h;
      const double left = nodes.back().time;
      const double rate = path.rate(t);
      growth += (t - left) / 6.0 * (prev_rate + 4.0 * path.rate(0.5 * (left + t)) + rate);
      nodes.push_back({t, rate, capital * std::exp(growth)});
      prev_rate = rate;
    }
    capital = nodes.back().capital;
    pieces_.push_back(std::move(nodes));
  }
}

double capital_at(const GrowthScenario& scenario, double t) {
  if (!(t >= 0.0 && t <= scenario.rotation_length())) {
    std::ostringstream msg;
    msg << "t = " << t << " outside rotation [0, " << scenario.rotation_length() << "]";
    throw DomainError(msg.str());
  }
  const auto& q = scenario.quadrature();
  double capital = scenario.initial_capital();
  double from = 0.0;
  for (const InvestmentEvent& e : scenario.investments().events()) {
    if (e.time > t) {
      break;
    }
    capital *= std::exp(integral_of_rate(scenario.path(), from, e.time, q));
    capital += e.amount;
    check_capital(capital, e.time);
    from = e.time;
  }
  return capital * std::exp(integral_of_rate(scenario.path(), from, t, q));
}

ExpectedValues expected_values(const GrowthScenario& scenario) {
  const Trajectory traj(scenario);
  const double tau = scenario.rotation_length();
  const double profit = traj.integrate([](double, double k, double r) { return k * r; }) / tau;
  const double capital = traj.integrate([](double, double k, double) { return k; }) / tau;
  if (!(capital > 0.0)) {
    throw DegenerateCapitalError("expected capitalization is not positive");
  }
  return {profit, capital, profit / capital};
}

double expected_profit_rate(const GrowthScenario& scenario) { return expected_values(scenario).profit_rate; }

double expected_capitalization(const GrowthScenario& scenario) {
  return expected_values(scenario).capitalization;
}

double rroc(const GrowthScenario& scenario) { return expected_values(scenario).rroc; }

double closed_form_profit_rate(const GrowthScenario& scenario) {
  scenario.require_investment_free("closed-form profit rate");
  const double tau = scenario.rotation_length();
  const double mean = time_average_rate(scenario.path(), tau, scenario.quadrature());
  return scenario.initial_capital() * std::expm1(tau * mean) / tau;
}

}  // namespace capret
