#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "capret/errors.hpp"
#include "capret/growth.hpp"
#include "capret/scenario_io.hpp"
#include "capret/search.hpp"

namespace capret {

enum class Metric { spot_rate, mean_rate, irr, rroc, npv, rroe, omega };

/// Parses a metric name as used on the command line ("irr", "rroc", ...).
Metric parse_metric(std::string_view name);
std::string_view metric_name(Metric m);

struct SweepRequest {
  TauGrid grid{1.0, 2.0, 2};
  std::vector<Metric> metrics;
  std::vector<double> discount_rates;  ///< one npv column each
  std::vector<double> market_rates;    ///< rroe / omega: one column per (L, u)
  std::vector<double> leverages;
  unsigned threads = 0;  ///< 0 picks the hardware concurrency
};

struct SweepResult {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  ///< ascending tau; column 0 is tau

  std::string to_csv() const;
};

/// A delegate failed at one grid point.
class SweepError : public Error {
public:
  SweepError(double tau, const std::string& what);
  double tau() const { return tau_; }

private:
  double tau_;
};

/// One row per grid point, each cell produced by the single-point library
/// call at that tau. Rows may be computed concurrently; order is by tau.
SweepResult sweep(const GrowthScenario& scenario, const SweepRequest& request);

/// JSON echo of the input document and the numeric settings of a sweep.
std::string sweep_provenance(const ScenarioDocument& document, const SweepRequest& request);

enum class Objective { rroc, irr, npv, rroe };

Objective parse_objective(std::string_view name);

struct OptimizeRequest {
  Objective objective = Objective::rroc;
  TauGrid grid{1.0, 2.0, 2};
  std::vector<double> discount_rates;
  std::vector<double> market_rates;
  std::vector<double> leverages;
};

struct OptimizeRow {
  std::string objective;
  std::optional<double> discount_rate;
  std::optional<double> market_rate;
  std::optional<double> leverage;
  Optimum optimum;
  double rroc = 0.0;  ///< competing criteria at optimum.tau
  double irr = 0.0;
  double mean_rate = 0.0;
};

/// One optimum per objective parameter combination (each d for npv, each
/// (L, u) for rroe).
std::vector<OptimizeRow> optimize(const GrowthScenario& scenario, const OptimizeRequest& request);

std::string optimize_csv(std::span<const OptimizeRow> rows);

/// irr of a scenario at its own rotation: the time-average rate without
/// intermediate events, otherwise the principal root of its cash flows (NaN if none).
double scenario_irr(const GrowthScenario& scenario);

}  // namespace capret
