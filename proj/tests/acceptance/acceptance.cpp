// Acceptance checks. Each prints one PASS/FAIL line; the exit status is the
// number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "capret/analysis.hpp"
#include "capret/estate.hpp"
#include "capret/irr.hpp"
#include "capret/leverage.hpp"
#include "capret/scenario_io.hpp"
#include "capret/valuation.hpp"

using namespace capret;

namespace {

constexpr double kCycle = 100.0;
constexpr double kMean = 0.05;
const ReturnPath kAnsatz = ReturnPath::ansatz(kMean, 0.5, kCycle);
const TauGrid kGrid{kCycle / 400.0, kCycle, 400};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

void constant_collapse(Outcome& o) {
  double worst = 0.0;
  for (double r : {0.01, 0.05, 0.2}) {
    for (double tau : {1.0, 10.0, 100.0}) {
      const GrowthScenario s(1.0, tau, ReturnPath::constant(r));
      worst = std::max({worst, std::abs(rroc(s) - r), std::abs(growth_cycle_irr(s) - r)});
    }
  }
  o.detail << "max |RROC - r|, |IRR - r| = " << worst;
  o.require(worst < 1e-9, "tolerance 1e-9");
}

void profit_path_independence(Outcome& o) {
  const GrowthScenario fwd(1.0, kCycle, kAnsatz);
  const GrowthScenario rev(1.0, kCycle, ReturnPath::reversed(kAnsatz, kCycle));
  const double dp = rel(expected_profit_rate(fwd), expected_profit_rate(rev));
  const double dk = rel(expected_capitalization(fwd), expected_capitalization(rev));
  double asymmetry = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double t = kCycle * i / 1000.0;
    asymmetry = std::max(asymmetry, std::abs(evaluate(kAnsatz, t) - evaluate(kAnsatz, kCycle - t)));
  }
  o.detail << "profit rel diff = " << dp << ", capitalization rel diff = " << dk
           << ", max |r(t) - r(G - t)| = " << asymmetry;
  o.require(dp < 1e-8, "profit within 1e-8");
  o.require(dk > 1e-3, "capitalization differs by > 1e-3");
}

void cycle_structure(Outcome& o) {
  const GrowthScenario full(1.0, kCycle, kAnsatz);
  const double mean = time_average_rate(kAnsatz, kCycle);
  const double irr = growth_cycle_irr(full);
  const double roc = rroc(full);
  const Optimum best_roc = maximize_on_grid([&](double t) { return rroc(full.with_rotation(t)); }, kGrid);
  const Optimum best_irr = maximize_on_grid([&](double t) { return growth_cycle_irr(full.with_rotation(t)); }, kGrid);
  o.detail << "IRR(G) = " << irr << ", RROC(G) = " << roc << ", max RROC = " << best_roc.value << " at "
           << best_roc.grid_tau << ", max IRR = " << best_irr.value << " at " << best_irr.grid_tau;
  o.require(std::abs(irr - mean) < 1e-6, "IRR(G) = <<r>>");
  o.require(roc < mean, "RROC(G) < <<r>>");
  o.require(best_roc.value > best_irr.value, "max RROC > max IRR");
  o.require(best_roc.grid_tau < best_irr.grid_tau, "argmax RROC < argmax IRR");
}

void closed_form_profit(Outcome& o) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double cycle = 20.0 + 180.0 * unit(rng);
    ReturnPath path = ReturnPath::constant(0.0);
    if (i % 2 == 0) {
      path = ReturnPath::ansatz(0.005 + 0.15 * unit(rng), unit(rng), cycle);
    } else {
      std::vector<ReturnPath::Knot> knots;
      double t = 0.0;
      for (int k = 0; k < 6; ++k) {
        knots.push_back({t, -0.02 + 0.14 * unit(rng)});
        t += cycle / 5.0;
      }
      path = ReturnPath::tabulated(knots);
    }
    const double tau = cycle * (0.05 + 0.95 * unit(rng));
    const GrowthScenario s(0.1 + 10.0 * unit(rng), tau, path);
    worst = std::max(worst, rel(expected_profit_rate(s), closed_form_profit_rate(s)));
  }
  o.detail << "max rel diff over 20 scenarios = " << worst;
  o.require(worst < 1e-8, "tolerance 1e-8");
}

void irr_consistency(Outcome& o) {
  double worst = 0.0;
  for (double tau : {10.0, 37.5, 100.0}) {
    const GrowthScenario s(1.0, tau, kAnsatz);
    const CashFlowSchedule flows({{0.0, -1.0}, {tau, capital_at(s, tau)}});
    const IrrResult r = general_irr(flows);
    if (!r.principal_root) {
      o.require(false, "no root for two-event schedule");
      return;
    }
    worst = std::max(worst, std::abs(*r.principal_root - growth_cycle_irr(s)));
  }
  // x = e^{-o}: -1.32 x^2 + 2.3 x - 1 = 0
  const double disc = std::sqrt(2.3 * 2.3 - 4.0 * 1.32);
  const double x1 = (2.3 + disc) / (2.0 * 1.32);
  const double x2 = (2.3 - disc) / (2.0 * 1.32);
  const double lo = -std::log(x1);
  const double hi = -std::log(x2);
  const IrrResult two = general_irr(CashFlowSchedule({{0.0, -1.0}, {1.0, 2.3}, {2.0, -1.32}}));
  o.detail << "two-event max diff = " << worst << ", roots = ";
  for (double root : two.all_real_roots) {
    o.detail << root << " ";
  }
  o.require(worst < 1e-6, "two-event schedule within 1e-6");
  o.require(two.all_real_roots.size() == 2, "two real roots");
  if (two.all_real_roots.size() == 2) {
    o.require(std::abs(two.all_real_roots[0] - lo) < 1e-9 && std::abs(two.all_real_roots[1] - hi) < 1e-9,
              "roots match the quadratic formula within 1e-9");
    o.require(std::abs(lo - std::log(1.1)) < 1e-9 && std::abs(hi - std::log(1.2)) < 1e-9, "roots are ln 1.1, ln 1.2");
  }
}

void leverage_ratio(Outcome& o) {
  const GrowthScenario s(1.0, 60.0, kAnsatz);
  double worst = 0.0;
  double spread = 0.0;
  for (double lev : {-0.5, 0.0, 1.0, 3.0}) {
    std::vector<double> ratios;
    for (double d : {0.02, 0.035}) {
      const double ratio = leveraged_npv(s, d, d, lev) / npv(s, d);
      worst = std::max(worst, std::abs(ratio - (1.0 + lev)));
      worst = std::max(worst, std::abs(leverage_npv_ratio(s, d, d, lev).ratio - (1.0 + lev)));
      ratios.push_back(ratio);
    }
    spread = std::max(spread, std::abs(ratios[0] - ratios[1]));
  }
  o.detail << "max |ratio - (1 + L)| = " << worst << ", max spread across d = " << spread;
  o.require(worst < 1e-9, "ratio = 1 + L within 1e-9");
  o.require(spread < 1e-9, "ratio independent of d within 1e-9");
}

void omega_asymptotics(Outcome& o) {
  const GrowthScenario s(1.0, 60.0, kAnsatz);
  const double mean = time_average_rate(kAnsatz, 60.0);
  const double at_zero = std::abs(leveraged_discount_rate(s, 0.0, 0.03) - mean);
  const double at_mean = std::abs(leveraged_discount_rate(s, 2.0, mean) - mean);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  int drawn = 0;
  int wiped = 0;
  while (drawn < 20) {
    const double tau = 1.0 + 99.0 * unit(rng);
    const double lev = -0.9 + 3.9 * unit(rng);
    const double u = 0.1 * unit(rng);
    const GrowthScenario at(1.0, tau, kAnsatz);
    try {
      const double omega = leveraged_discount_rate(at, lev, u);
      worst = std::max(worst, std::abs(leveraged_discount_residual(at, lev, u, omega)));
      ++drawn;
    } catch (const WipedOutEquityError&) {
      ++wiped;  // no discount rate exists there; draw again
    }
  }
  o.detail << "|Omega(L=0) - <r>| = " << at_zero << ", |Omega(u=<r>) - <r>| = " << at_mean
           << ", max residual = " << worst << " (" << wiped << " wiped-out draws skipped)";
  o.require(at_zero < 1e-12, "L = 0 within 1e-12");
  o.require(at_mean < 1e-12, "u = <r> within 1e-12");
  o.require(worst < 1e-9, "residual < 1e-9");
}

void rroe_invariance(Outcome& o) {
  const GrowthScenario s(1.0, kCycle, kAnsatz);
  const double reference = maximize_on_grid([&](double t) { return rroc(s.with_rotation(t)); }, kGrid).grid_tau;
  o.detail << "argmax RROC = " << reference << ", argmax RROE =";
  for (double f : {0.0, 0.5, 1.0, 2.0}) {
    const double at = rroe_argmax(s, 1.0, f * kMean, kGrid).grid_tau;
    o.detail << " " << at;
    o.require(at == reference, "u = " + std::to_string(f) + " <<r>>");
  }
}

void npv_sensitivity(Outcome& o) {
  const GrowthScenario s(1.0, kCycle, kAnsatz);
  std::vector<double> at;
  o.detail << "argmax NPV =";
  for (double f : {0.5, 1.0, 1.5}) {
    at.push_back(npv_argmax(s, f * kMean, kGrid).grid_tau);
    o.detail << " " << at.back();
  }
  double widest = 0.0;
  for (std::size_t i = 0; i < at.size(); ++i) {
    for (std::size_t j = i + 1; j < at.size(); ++j) {
      widest = std::max(widest, std::abs(at[i] - at[j]));
    }
  }
  o.require(widest > kGrid.spacing(), "differs by more than one grid step");
}

void estate_rates(Outcome& o) {
  const EstateSpec estate(GrowthScenario(1.0, kCycle, kAnsatz), AgeDensity::uniform());
  const double area = area_average_rate(estate);
  const double est = estate_rroc(estate);
  const double irr = growth_cycle_irr(estate.site());
  o.detail << "area average = " << area << ", estate RROC = " << est << ", IRR(G) = " << irr;
  o.require(std::abs(area - est) > 1e-3, "area average differs from estate RROC by > 1e-3");
  o.require(std::abs(area - irr) < 1e-6, "area average = IRR within 1e-6");
}

void io_determinism(Outcome& o) {
  const std::vector<std::string> docs{
      R"({"K0": 1, "tau": 10, "path": {"type": "constant", "rate": 0.05}})",
      R"({"K0": 1, "tau": 100, "path": {"type": "ansatz", "mean_rate": 0.05, "shape": 0.5, "full_cycle": 100}})",
      R"({"K0": 2.5, "tau": 80, "path": {"type": "reversed", "horizon": 80, "inner": {"type": "ansatz", "mean_rate": 0.03, "shape": 0.1, "full_cycle": 90}}})",
      R"({"K0": 1, "tau": 20, "path": {"type": "tabulated", "knots": [[0, 0.01], [7.3, 0.12], [20, -0.01]]}})",
      R"({"K0": 1, "tau": 30, "path": {"type": "constant", "rate": 0.04}, "investments": [{"time": 5, "amount": 0.3}, {"time": 12.5, "amount": -0.2}]})",
      R"({"K0": 1, "tau": 100, "path": {"type": "ansatz", "mean_rate": 0.05, "shape": 0.5, "full_cycle": 100}, "valuation": {"d": 0.025, "u": 0.02, "L": 1}})",
      R"({"K0": 2, "tau": 50, "path": {"type": "constant", "rate": 0.05}, "leverage": {"L": 1, "u": 0.03, "E": 1}})",
      R"({"K0": 1, "tau": 100, "path": {"type": "ansatz", "mean_rate": 0.05, "shape": 0.5, "full_cycle": 100}, "estate": {"ages": {"type": "uniform"}}})",
      R"({"K0": 1, "tau": 60, "path": {"type": "constant", "rate": 0.02}, "estate": {"ages": {"type": "tabulated", "knots": [[0, 2], [30, 1], [60, 0]]}}})",
      R"({"schema_version": 1, "K0": 0.7, "tau": 0.30000000000000004, "path": {"type": "constant", "rate": -0.01}, "numerics": {"quadrature_intervals": 512}})",
  };
  int round_trips = 0;
  for (const auto& text : docs) {
    const ScenarioDocument doc = parse_scenario(text);
    const std::string once = serialize_scenario(doc);
    const ScenarioDocument again = parse_scenario(once);
    if (again == doc && serialize_scenario(again) == once) {
      ++round_trips;
    }
  }
  SweepRequest req;
  req.grid = kGrid;
  req.metrics = {Metric::spot_rate, Metric::mean_rate, Metric::irr, Metric::rroc, Metric::npv, Metric::omega};
  req.discount_rates = {0.025};
  req.market_rates = {0.025};
  req.leverages = {1.0};
  const GrowthScenario s(1.0, kCycle, kAnsatz);
  const std::string first = sweep(s, req).to_csv();
  bool identical = true;
  for (unsigned threads : {0u, 1u, 3u}) {
    req.threads = threads;
    identical = identical && sweep(s, req).to_csv() == first;
  }
  o.detail << round_trips << "/10 documents round-trip, repeated sweeps identical = " << (identical ? "yes" : "no");
  o.require(round_trips == 10, "all documents round-trip");
  o.require(identical, "byte-identical CSV");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"constant-path collapse", constant_collapse},
      {"profit path independence", profit_path_independence},
      {"RROC/IRR structure over the cycle", cycle_structure},
      {"closed-form profit rate", closed_form_profit},
      {"IRR consistency", irr_consistency},
      {"leveraged NPV ratio", leverage_ratio},
      {"leveraged discount rate asymptotics", omega_asymptotics},
      {"RROE argmax invariance", rroe_invariance},
      {"NPV argmax sensitivity", npv_sensitivity},
      {"estate rates", estate_rates},
      {"IO determinism", io_determinism},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      check(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > 10.0) {
      o.pass = false;
      o.detail << " [over the 10 s budget]";
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %2d %s (%.2fs): %s\n", o.pass ? "PASS" : "FAIL", index, name, secs, o.detail.str().c_str());
  }
  std::printf("%d/%zu criteria passed\n", index - failures, criteria.size());
  return failures;
}
