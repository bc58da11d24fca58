// capret: sweeps, optima and single-point evaluations of capital-return
// metrics for periodic growth scenarios.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "capret/analysis.hpp"
#include "capret/estate.hpp"
#include "capret/irr.hpp"
#include "capret/leverage.hpp"
#include "capret/scenario_io.hpp"
#include "capret/valuation.hpp"

namespace {

using namespace capret;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ArgumentError("cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw ArgumentError("cannot write " + out_path);
  }
  out << text;
}

/// "0.03" is a rate; "1.5x" is 1.5 times the path's reference rate.
std::vector<double> resolve_rates(const std::vector<std::string>& specs, double reference) {
  std::vector<double> out;
  for (std::string s : specs) {
    bool multiple = !s.empty() && (s.back() == 'x' || s.back() == 'X');
    if (multiple) {
      s.pop_back();
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) {
      throw ArgumentError("cannot read rate '" + s + "'");
    }
    out.push_back(multiple ? v * reference : v);
  }
  return out;
}

std::vector<double> resolve_plain(const std::vector<std::string>& specs) { return resolve_rates(specs, 1.0); }

struct GridFlags {
  double tau_min = NAN;
  double tau_max = NAN;
  int tau_steps = 200;

  TauGrid resolve(const ScenarioDocument& doc) const {
    const double hi = std::isnan(tau_max) ? doc.rotation_length : tau_max;
    const double lo = std::isnan(tau_min) ? hi / tau_steps : tau_min;
    return TauGrid{lo, hi, tau_steps};
  }
};

void add_grid_flags(CLI::App* cmd, GridFlags& g) {
  cmd->add_option("--tau-min", g.tau_min, "Smallest rotation length (default tau-max / tau-steps)");
  cmd->add_option("--tau-max", g.tau_max, "Largest rotation length (default: the scenario's tau)");
  cmd->add_option("--tau-steps", g.tau_steps, "Number of grid points, at least 2")->capture_default_str();
}

struct RateFlags {
  std::vector<std::string> d;
  std::vector<std::string> u;
  std::vector<std::string> leverage;
};

void add_rate_flags(CLI::App* cmd, RateFlags& r) {
  cmd->add_option("--d", r.d, "Discount rates, comma separated; suffix x for multiples of the path's mean rate")
      ->delimiter(',');
  cmd->add_option("--u", r.u, "Market interest rates, comma separated; suffix x as for --d")->delimiter(',');
  cmd->add_option("--L", r.leverage, "Leverage ratios L = K/E - 1, comma separated")->delimiter(',');
}

int run_sweep(const std::string& scenario_file, const GridFlags& grid, const RateFlags& rates,
              const std::vector<std::string>& metrics, const std::string& out_path) {
  const ScenarioDocument doc = parse_scenario(read_file(scenario_file));
  const double ref = doc.path.reference_rate();
  SweepRequest req;
  req.grid = grid.resolve(doc);
  for (const auto& m : metrics) {
    req.metrics.push_back(parse_metric(m));
  }
  req.discount_rates = resolve_rates(rates.d, ref);
  req.market_rates = resolve_rates(rates.u, ref);
  req.leverages = resolve_plain(rates.leverage);
  const SweepResult result = sweep(doc.scenario(), req);
  emit(result.to_csv(), out_path);
  if (!out_path.empty()) {
    emit(sweep_provenance(doc, req), out_path + ".provenance.json");
  }
  return 0;
}

int run_optimize(const std::string& scenario_file, const GridFlags& grid, const RateFlags& rates,
                 const std::string& objective, const std::string& out_path) {
  const ScenarioDocument doc = parse_scenario(read_file(scenario_file));
  const double ref = doc.path.reference_rate();
  OptimizeRequest req;
  req.objective = parse_objective(objective);
  req.grid = grid.resolve(doc);
  req.discount_rates = resolve_rates(rates.d, ref);
  req.market_rates = resolve_rates(rates.u, ref);
  req.leverages = resolve_plain(rates.leverage);
  emit(optimize_csv(optimize(doc.scenario(), req)), out_path);
  return 0;
}

int run_irr(const std::string& cashflow_file, const std::string& out_path) {
  const CashFlowSchedule schedule = parse_cash_flows(read_file(cashflow_file));
  const IrrResult r = general_irr(schedule);
  std::vector<std::vector<Cell>> rows;
  rows.push_back({std::string("principal_root"), r.principal_root ? Cell(*r.principal_root) : Cell(std::string()),
                  r.principal_root ? Cell(std::abs(discounted_sum(schedule, *r.principal_root)))
                                   : Cell(std::string())});
  for (std::size_t i = 0; i < r.all_real_roots.size(); ++i) {
    rows.push_back({std::string("real_root"), r.all_real_roots[i], r.residuals[i]});
  }
  rows.push_back({std::string("complex_root_count"), static_cast<long long>(r.complex_root_count), std::string()});
  rows.push_back({std::string("degree"), static_cast<long long>(r.degree), std::string()});
  rows.push_back({std::string("grid_step"), r.step, std::string()});
  const std::vector<std::string> columns{"quantity", "value", "residual"};
  emit(write_table(columns, rows), out_path);
  return 0;
}

int run_eval(const std::string& scenario_file, const RateFlags& rates, const std::string& out_path) {
  const ScenarioDocument doc = parse_scenario(read_file(scenario_file));
  const GrowthScenario s = doc.scenario();
  const double ref = doc.path.reference_rate();

  std::vector<std::vector<Cell>> rows;
  auto put = [&](const std::string& key, double v) { rows.push_back({key, v}); };
  put("tau", s.rotation_length());
  put("mean_rate", time_average_rate(s.path(), s.rotation_length(), s.quadrature()));
  put("irr", scenario_irr(s));
  const ExpectedValues ev = expected_values(s);
  put("profit_rate", ev.profit_rate);
  put("capitalization", ev.capitalization);
  put("rroc", ev.rroc);
  put("terminal_capital", capital_at(s, s.rotation_length()));

  std::optional<ValuationSpec> val = doc.valuation;
  if (!rates.d.empty()) {
    val = ValuationSpec{resolve_rates(rates.d, ref).at(0), val ? val->market_rate : 0.0, val ? val->leverage : 0.0};
  }
  std::optional<LeverageSpec> lev = doc.leverage;
  if (!rates.u.empty() || !rates.leverage.empty()) {
    LeverageSpec spec = lev.value_or(LeverageSpec{0.0, 0.0, std::nullopt});
    if (!rates.u.empty()) spec.market_rate = resolve_rates(rates.u, ref).at(0);
    if (!rates.leverage.empty()) spec.leverage = resolve_plain(rates.leverage).at(0);
    spec.equity.reset();
    lev = spec;
  }
  if (val) {
    val->validate();
    put("npv", npv(s, val->discount_rate));
    put("leveraged_npv", leveraged_npv(s, *val));
    try {
      const LeverageRatio ratio = leverage_npv_ratio(s, val->discount_rate, val->market_rate, val->leverage);
      put("npv_leverage_ratio", ratio.ratio);
      put("npv_leverage_ratio_closed_form", ratio.closed_form);
    } catch (const IndeterminateRatioError&) {
      rows.push_back({std::string("npv_leverage_ratio"), std::string("indeterminate")});
    }
  }
  if (lev) {
    lev->validate(s.initial_capital());
    put("rroe", rroe(ev.rroc, lev->leverage, lev->market_rate));
    put("omega", leveraged_discount_rate(s, lev->leverage, lev->market_rate));
  }
  if (auto estate = doc.estate()) {
    put("estate_capitalization", estate_capitalization(*estate));
    put("estate_rroc", estate_rroc(*estate));
    put("area_average_rate", area_average_rate(*estate));
    put("age_renormalization", estate->ages().renormalization_factor());
  }
  const std::vector<std::string> columns{"quantity", "value"};
  emit(write_table(columns, rows), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capret - capital return, IRR, NPV and leverage for periodic growth processes"};
  app.require_subcommand(1);

  std::string scenario_file;
  std::string out_path;
  GridFlags grid;
  RateFlags rates;
  std::vector<std::string> metrics{"irr", "rroc"};
  std::string objective = "rroc";
  std::string cashflow_file;

  auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate metrics over a grid of rotation lengths (CSV)");
  sweep_cmd->add_option("--scenario", scenario_file, "Scenario document (.json)")->required();
  add_grid_flags(sweep_cmd, grid);
  add_rate_flags(sweep_cmd, rates);
  sweep_cmd
      ->add_option("--metrics", metrics,
                   "Comma separated: spot_rate, mean_rate, irr, rroc, npv, rroe, omega")
      ->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--out", out_path, "Write CSV here (plus <out>.provenance.json) instead of stdout");

  auto* opt_cmd = app.add_subcommand("optimize", "Rotation length maximizing an objective");
  opt_cmd->add_option("--scenario", scenario_file, "Scenario document (.json)")->required();
  add_grid_flags(opt_cmd, grid);
  add_rate_flags(opt_cmd, rates);
  opt_cmd->add_option("--objective", objective, "rroc, irr, npv (uses --d) or rroe (uses --L, --u)")
      ->capture_default_str();
  opt_cmd->add_option("--out", out_path, "Write CSV here instead of stdout");

  auto* irr_cmd = app.add_subcommand("irr", "All internal rates of return of a time,amount cash-flow CSV");
  irr_cmd->add_option("--cashflows", cashflow_file, "Cash-flow CSV")->required();
  irr_cmd->add_option("--out", out_path, "Write CSV here instead of stdout");

  auto* eval_cmd = app.add_subcommand("eval", "Every metric at the scenario's own rotation length");
  eval_cmd->add_option("--scenario", scenario_file, "Scenario document (.json)")->required();
  add_rate_flags(eval_cmd, rates);
  eval_cmd->add_option("--out", out_path, "Write CSV here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep_cmd) return run_sweep(scenario_file, grid, rates, metrics, out_path);
    if (*opt_cmd) return run_optimize(scenario_file, grid, rates, objective, out_path);
    if (*irr_cmd) return run_irr(cashflow_file, out_path);
    if (*eval_cmd) return run_eval(scenario_file, rates, out_path);
  } catch (const std::exception& e) {
    std::cerr << "capret: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
