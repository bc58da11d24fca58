#pragma once

#include <span>
#include <vector>

#include "capret/quadrature.hpp"
#include "capret/return_path.hpp"

namespace capret {

/// Impulse change of capital at `time`; positive invests, negative divests.
struct InvestmentEvent {
  double time;
  double amount;
  bool operator==(const InvestmentEvent&) const = default;
};

/// Event times strictly increasing. Whether they fall inside the rotation is
/// checked by GrowthScenario.
class InvestmentSchedule {
public:
  InvestmentSchedule() = default;
  explicit InvestmentSchedule(std::vector<InvestmentEvent> events);

  std::span<const InvestmentEvent> events() const { return events_; }
  bool empty() const { return events_.empty(); }

  bool operator==(const InvestmentSchedule&) const = default;

private:
  std::vector<InvestmentEvent> events_;
};

/// One growth cycle: K(0), rotation length tau, spot-rate path and investments.
class GrowthScenario {
public:
  GrowthScenario(double initial_capital, double rotation_length, ReturnPath path,
                 InvestmentSchedule investments = {}, Quadrature quadrature = {});

  double initial_capital() const { return initial_capital_; }
  double rotation_length() const { return rotation_length_; }
  const ReturnPath& path() const { return path_; }
  const InvestmentSchedule& investments() const { return investments_; }
  const Quadrature& quadrature() const { return quadrature_; }

  /// Same scenario with a different rotation length (revalidated).
  GrowthScenario with_rotation(double rotation_length) const;

  /// Throws UnsupportedScheduleError when intermediate events are present.
  void require_investment_free(const char* operation) const;

  bool operator==(const GrowthScenario&) const = default;

private:
  double initial_capital_;
  double rotation_length_;
  ReturnPath path_;
  InvestmentSchedule investments_;
  Quadrature quadrature_;
};

/// Capital trajectory sampled on Simpson grids, one grid per stretch between
/// investment events (and any extra breakpoints). Capital is right-continuous
/// at events: the sample at an event time on the later piece includes the jump.
class Trajectory {
public:
  struct Node {
    double time;
    double rate;
    double capital;
  };

  explicit Trajectory(const GrowthScenario& scenario, std::span<const double> extra_breaks = {});

  /// Integral over [0, tau] of g(time, capital, rate).
  template <class G>
  double integrate(G&& g) const {
    return integrate_pieces([&](double t, double k, double r, double, double) { return g(t, k, r); });
  }

  /// As integrate, but g also receives the bounds of the quadrature piece
  /// holding the node, for integrands that jump at a breakpoint.
  template <class G>
  double integrate_pieces(G&& g) const {
    double total = 0.0;
    for (const auto& piece : pieces_) {
      const std::size_t n = piece.size() - 1;
      const double lo = piece.front().time;
      const double hi = piece.back().time;
      const double h = (hi - lo) / static_cast<double>(n);
      auto at = [&](const Node& node) { return g(node.time, node.capital, node.rate, lo, hi); };
      double acc = at(piece.front()) + at(piece.back());
      for (std::size_t i = 1; i < n; ++i) {
        acc += (i % 2 == 1 ? 4.0 : 2.0) * at(piece[i]);
      }
      total += h / 3.0 * acc;
    }
    return total;
  }

  double terminal_capital() const { return pieces_.back().back().capital; }

private:
  std::vector<std::vector<Node>> pieces_;
};

struct ExpectedValues {
  double profit_rate;     ///< <dkappa/dt>, accrual basis
  double capitalization;  ///< <K>
  double rroc;            ///< profit_rate / capitalization
};

/// K(t), integrating dK/dt = K r between events and jumping at each event.
double capital_at(const GrowthScenario& scenario, double t);

ExpectedValues expected_values(const GrowthScenario& scenario);
double expected_profit_rate(const GrowthScenario& scenario);
double expected_capitalization(const GrowthScenario& scenario);
double rroc(const GrowthScenario& scenario);

/// K(0) (e^{tau <r>} - 1) / tau; valid only without intermediate events.
double closed_form_profit_rate(const GrowthScenario& scenario);

}  // namespace capret
