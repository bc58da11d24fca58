#include "capret/analysis.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include <json.hpp>

#include "capret/irr.hpp"
#include "capret/leverage.hpp"
#include "capret/valuation.hpp"

namespace capret {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Column {
  std::string name;
  Metric metric;
  double d = 0.0;
  double u = 0.0;
  double leverage = 0.0;
};

std::vector<Column> columns_for(const SweepRequest& req) {
  std::vector<Column> cols;
  for (Metric m : req.metrics) {
    const std::string base(metric_name(m));
    switch (m) {
      case Metric::npv:
        if (req.discount_rates.empty()) {
          throw ArgumentError("metric npv needs at least one discount rate (--d)");
        }
        for (double d : req.discount_rates) {
          cols.push_back({base + "_d=" + format_number(d), m, d});
        }
        break;
      case Metric::rroe:
      case Metric::omega:
        if (req.market_rates.empty() || req.leverages.empty()) {
          throw ArgumentError("metric " + base + " needs market rates (--u) and leverages (--L)");
        }
        for (double lev : req.leverages) {
          for (double u : req.market_rates) {
            cols.push_back({base + "_L=" + format_number(lev) + "_u=" + format_number(u), m, 0.0, u, lev});
          }
        }
        break;
      default:
        cols.push_back({base, m});
    }
  }
  return cols;
}

double cell(const GrowthScenario& s, const Column& c) {
  switch (c.metric) {
    case Metric::spot_rate:
      return evaluate(s.path(), s.rotation_length());
    case Metric::mean_rate:
      return time_average_rate(s.path(), s.rotation_length(), s.quadrature());
    case Metric::irr:
      return scenario_irr(s);
    case Metric::rroc:
      return rroc(s);
    case Metric::npv:
      return npv(s, c.d);
    case Metric::rroe:
      return rroe(rroc(s), c.leverage, c.u);
    case Metric::omega:
      return leveraged_discount_rate(s, c.leverage, c.u);
  }
  return kNaN;
}

std::optional<double> nan_to_empty(double v) { return std::isnan(v) ? std::nullopt : std::optional(v); }

}  // namespace

Metric parse_metric(std::string_view name) {
  for (Metric m : {Metric::spot_rate, Metric::mean_rate, Metric::irr, Metric::rroc, Metric::npv, Metric::rroe,
                   Metric::omega}) {
    if (metric_name(m) == name) {
      return m;
    }
  }
  throw ArgumentError("unknown metric '" + std::string(name) +
                      "' (expected spot_rate, mean_rate, irr, rroc, npv, rroe, omega)");
}

std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::spot_rate:
      return "spot_rate";
    case Metric::mean_rate:
      return "mean_rate";
    case Metric::irr:
      return "irr";
    case Metric::rroc:
      return "rroc";
    case Metric::npv:
      return "npv";
    case Metric::rroe:
      return "rroe";
    case Metric::omega:
      return "omega";
  }
  return "?";
}

SweepError::SweepError(double tau, const std::string& what)
    : Error("at tau = " + format_number(tau) + ": " + what), tau_(tau) {}

double scenario_irr(const GrowthScenario& scenario) {
  if (scenario.investments().empty()) {
    return growth_cycle_irr(scenario);
  }
  const IrrResult r = general_irr(to_cash_flows(scenario));
  return r.principal_root.value_or(kNaN);
}

SweepResult sweep(const GrowthScenario& scenario, const SweepRequest& request) {
  const auto taus = request.grid.points();
  const auto cols = columns_for(request);

  SweepResult out;
  out.columns.push_back("tau");
  for (const Column& c : cols) {
    out.columns.push_back(c.name);
  }
  out.rows.assign(taus.size(), {});
  std::vector<std::exception_ptr> failures(taus.size());

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < taus.size(); i = next++) {
      try {
        const GrowthScenario at = scenario.with_rotation(taus[i]);
        std::vector<double> row{taus[i]};
        for (const Column& c : cols) {
          row.push_back(cell(at, c));
        }
        out.rows[i] = std::move(row);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  unsigned n = request.threads != 0 ? request.threads : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(taus.size()));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < n; ++t) {
    pool.emplace_back(work);
  }
  work();
  pool.clear();

  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (failures[i]) {
      try {
        std::rethrow_exception(failures[i]);
      } catch (const std::exception& e) {
        throw SweepError(taus[i], e.what());
      }
    }
  }
  return out;
}

std::string SweepResult::to_csv() const {
  std::vector<std::vector<Cell>> cells;
  cells.reserve(rows.size());
  for (const auto& row : rows) {
    cells.emplace_back(row.begin(), row.end());
  }
  return write_table(columns, cells);
}

std::string sweep_provenance(const ScenarioDocument& document, const SweepRequest& request) {
  nlohmann::ordered_json j;
  j["scenario"] = nlohmann::ordered_json::parse(serialize_scenario(document));
  j["grid"] = {{"tau_min", request.grid.min}, {"tau_max", request.grid.max}, {"tau_steps", request.grid.steps}};
  auto& metrics = j["metrics"] = nlohmann::ordered_json::array();
  for (Metric m : request.metrics) {
    metrics.push_back(std::string(metric_name(m)));
  }
  j["d"] = request.discount_rates;
  j["u"] = request.market_rates;
  j["L"] = request.leverages;
  j["quadrature_intervals"] = document.quadrature.intervals;
  return j.dump(2) + "\n";
}

Objective parse_objective(std::string_view name) {
  if (name == "rroc") return Objective::rroc;
  if (name == "irr") return Objective::irr;
  if (name == "npv") return Objective::npv;
  if (name == "rroe") return Objective::rroe;
  throw ArgumentError("unknown objective '" + std::string(name) + "' (expected rroc, irr, npv, rroe)");
}

std::vector<OptimizeRow> optimize(const GrowthScenario& scenario, const OptimizeRequest& request) {
  std::vector<OptimizeRow> rows;
  auto finish = [&](OptimizeRow row) {
    const GrowthScenario at = scenario.with_rotation(row.optimum.tau);
    row.rroc = rroc(at);
    row.irr = scenario_irr(at);
    row.mean_rate = time_average_rate(at.path(), at.rotation_length(), at.quadrature());
    rows.push_back(std::move(row));
  };
  switch (request.objective) {
    case Objective::rroc:
      finish({"rroc", {}, {}, {},
              maximize_on_grid([&](double tau) { return rroc(scenario.with_rotation(tau)); }, request.grid)});
      break;
    case Objective::irr:
      finish({"irr", {}, {}, {},
              maximize_on_grid([&](double tau) { return scenario_irr(scenario.with_rotation(tau)); },
                               request.grid)});
      break;
    case Objective::npv:
      if (request.discount_rates.empty()) {
        throw ArgumentError("objective npv needs at least one discount rate (--d)");
      }
      for (double d : request.discount_rates) {
        finish({"npv", d, {}, {}, npv_argmax(scenario, d, request.grid)});
      }
      break;
    case Objective::rroe:
      if (request.market_rates.empty() || request.leverages.empty()) {
        throw ArgumentError("objective rroe needs market rates (--u) and leverages (--L)");
      }
      for (double lev : request.leverages) {
        for (double u : request.market_rates) {
          finish({"rroe", {}, u, lev, rroe_argmax(scenario, lev, u, request.grid)});
        }
      }
      break;
  }
  return rows;
}

std::string optimize_csv(std::span<const OptimizeRow> rows) {
  const std::vector<std::string> columns{"objective", "d",     "u",    "L",   "tau_opt",  "value",
                                         "grid_tau",  "rroc", "irr", "mean_rate"};
  std::vector<std::vector<Cell>> cells;
  auto opt = [](const std::optional<double>& v) -> Cell { return v ? Cell(*v) : Cell(std::string()); };
  for (const OptimizeRow& r : rows) {
    cells.push_back({r.objective, opt(r.discount_rate), opt(r.market_rate), opt(r.leverage), r.optimum.tau,
                     r.optimum.value, r.optimum.grid_tau, r.rroc, opt(nan_to_empty(r.irr)), r.mean_rate});
  }
  return write_table(columns, cells);
}

}  // namespace capret
