#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "capret/analysis.hpp"
#include "capret/estate.hpp"
#include "capret/growth.hpp"
#include "capret/irr.hpp"
#include "capret/leverage.hpp"
#include "capret/return_path.hpp"
#include "capret/scenario_io.hpp"
#include "capret/valuation.hpp"

namespace py = pybind11;
using namespace capret;

namespace {

std::vector<ReturnPath::Knot> to_knots(const std::vector<std::pair<double, double>>& pts) {
  std::vector<ReturnPath::Knot> out;
  for (auto [t, r] : pts) out.push_back({t, r});
  return out;
}

std::vector<InvestmentEvent> to_events(const std::vector<std::pair<double, double>>& pts) {
  std::vector<InvestmentEvent> out;
  for (auto [t, a] : pts) out.push_back({t, a});
  return out;
}

CashFlowSchedule to_schedule(const std::vector<std::pair<double, double>>& pts) {
  std::vector<CashFlow> out;
  for (auto [t, a] : pts) out.push_back({t, a});
  return CashFlowSchedule(std::move(out));
}

TauGrid grid(double lo, double hi, int steps) { return TauGrid{lo, hi, steps}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Capital return, IRR, NPV and leverage for periodic growth processes";

  auto base = py::register_exception<Error>(m, "CapretError");
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ArgumentError>(m, "ArgumentError", base.ptr());
  py::register_exception<DegenerateCapitalError>(m, "DegenerateCapitalError", base.ptr());
  py::register_exception<UnsupportedScheduleError>(m, "UnsupportedScheduleError", base.ptr());
  py::register_exception<NoRootError>(m, "NoRootError", base.ptr());
  py::register_exception<DiscretizationError>(m, "DiscretizationError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<InvalidDiscountError>(m, "InvalidDiscountError", base.ptr());
  py::register_exception<IndeterminateRatioError>(m, "IndeterminateRatioError", base.ptr());
  py::register_exception<InvalidLeverageError>(m, "InvalidLeverageError", base.ptr());
  py::register_exception<WipedOutEquityError>(m, "WipedOutEquityError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<SweepError>(m, "SweepError", base.ptr());

  py::class_<ReturnPath>(m, "ReturnPath")
      .def_static("constant", &ReturnPath::constant, py::arg("rate"))
      .def_static("ansatz", &ReturnPath::ansatz, py::arg("mean_rate"), py::arg("shape"), py::arg("full_cycle"))
      .def_static(
          "tabulated", [](const std::vector<std::pair<double, double>>& knots) {
            return ReturnPath::tabulated(to_knots(knots));
          },
          py::arg("knots"))
      .def_static("reversed", &ReturnPath::reversed, py::arg("inner"), py::arg("horizon"))
      .def("rate", &ReturnPath::rate, py::arg("t"))
      .def("domain", [](const ReturnPath& p) { return std::pair(p.domain().lo, p.domain().hi); })
      .def("reference_rate", &ReturnPath::reference_rate)
      .def(py::self == py::self);

  m.def("evaluate", &evaluate, py::arg("path"), py::arg("t"));
  m.def(
      "cumulative_return",
      [](const ReturnPath& p, double t, int intervals) { return cumulative_return(p, t, Quadrature{intervals}); },
      py::arg("path"), py::arg("t"), py::arg("intervals") = 4096);
  m.def(
      "time_average_rate",
      [](const ReturnPath& p, double tau, int intervals) { return time_average_rate(p, tau, Quadrature{intervals}); },
      py::arg("path"), py::arg("tau"), py::arg("intervals") = 4096);

  py::class_<GrowthScenario>(m, "GrowthScenario")
      .def(py::init([](double k0, double tau, ReturnPath path, const std::vector<std::pair<double, double>>& inv,
                       int intervals) {
             return GrowthScenario(k0, tau, std::move(path), InvestmentSchedule(to_events(inv)),
                                   Quadrature{intervals});
           }),
           py::arg("initial_capital"), py::arg("rotation_length"), py::arg("path"),
           py::arg("investments") = std::vector<std::pair<double, double>>{}, py::arg("intervals") = 4096)
      .def_property_readonly("initial_capital", &GrowthScenario::initial_capital)
      .def_property_readonly("rotation_length", &GrowthScenario::rotation_length)
      .def_property_readonly("path", &GrowthScenario::path)
      .def("with_rotation", &GrowthScenario::with_rotation, py::arg("rotation_length"));

  py::class_<ExpectedValues>(m, "ExpectedValues")
      .def_readonly("profit_rate", &ExpectedValues::profit_rate)
      .def_readonly("capitalization", &ExpectedValues::capitalization)
      .def_readonly("rroc", &ExpectedValues::rroc);

  m.def("capital_at", &capital_at, py::arg("scenario"), py::arg("t"));
  m.def("expected_values", &expected_values, py::arg("scenario"));
  m.def("expected_profit_rate", &expected_profit_rate, py::arg("scenario"));
  m.def("expected_capitalization", &expected_capitalization, py::arg("scenario"));
  m.def("rroc", &rroc, py::arg("scenario"));

  py::class_<IrrResult>(m, "IrrResult")
      .def_readonly("principal_root", &IrrResult::principal_root)
      .def_readonly("all_real_roots", &IrrResult::all_real_roots)
      .def_readonly("complex_root_count", &IrrResult::complex_root_count)
      .def_readonly("step", &IrrResult::step)
      .def_readonly("degree", &IrrResult::degree)
      .def_readonly("residuals", &IrrResult::residuals);

  m.def("growth_cycle_irr", &growth_cycle_irr, py::arg("scenario"));
  m.def(
      "general_irr", [](const std::vector<std::pair<double, double>>& flows) { return general_irr(to_schedule(flows)); },
      py::arg("cash_flows"), "Cash flows as (time, amount) pairs.");

  m.def("npv", &npv, py::arg("scenario"), py::arg("discount_rate"));
  m.def("leveraged_npv", py::overload_cast<const GrowthScenario&, double, double, double>(&leveraged_npv),
        py::arg("scenario"), py::arg("discount_rate"), py::arg("market_rate"), py::arg("leverage"));
  m.def(
      "leverage_npv_ratio",
      [](const GrowthScenario& s, double d, double u, double lev) {
        const LeverageRatio r = leverage_npv_ratio(s, d, u, lev);
        return std::pair(r.ratio, r.closed_form);
      },
      py::arg("scenario"), py::arg("discount_rate"), py::arg("market_rate"), py::arg("leverage"));

  py::class_<Optimum>(m, "Optimum")
      .def_readonly("tau", &Optimum::tau)
      .def_readonly("value", &Optimum::value)
      .def_readonly("grid_index", &Optimum::grid_index)
      .def_readonly("grid_tau", &Optimum::grid_tau);

  m.def(
      "npv_argmax", [](const GrowthScenario& s, double d, double lo, double hi, int steps) {
        return npv_argmax(s, d, grid(lo, hi, steps));
      },
      py::arg("scenario"), py::arg("discount_rate"), py::arg("tau_min"), py::arg("tau_max"), py::arg("tau_steps"));
  m.def("rroe", &rroe, py::arg("rroc"), py::arg("leverage"), py::arg("market_rate"));
  m.def("leveraged_discount_rate", &leveraged_discount_rate, py::arg("scenario"), py::arg("leverage"),
        py::arg("market_rate"));
  m.def(
      "rroe_argmax", [](const GrowthScenario& s, double lev, double u, double lo, double hi, int steps) {
        return rroe_argmax(s, lev, u, grid(lo, hi, steps));
      },
      py::arg("scenario"), py::arg("leverage"), py::arg("market_rate"), py::arg("tau_min"), py::arg("tau_max"),
      py::arg("tau_steps"));

  py::class_<AgeDensity>(m, "AgeDensity")
      .def_static("uniform", &AgeDensity::uniform)
      .def_static(
          "tabulated", [](const std::vector<std::pair<double, double>>& pts) {
            std::vector<AgeDensity::Knot> knots;
            for (auto [a, p] : pts) knots.push_back({a, p});
            return AgeDensity::tabulated(std::move(knots));
          },
          py::arg("knots"))
      .def_property_readonly("renormalization_factor", &AgeDensity::renormalization_factor);

  py::class_<EstateSpec>(m, "EstateSpec")
      .def(py::init<GrowthScenario, AgeDensity>(), py::arg("site"), py::arg("ages"));
  m.def("estate_capitalization", &estate_capitalization, py::arg("estate"));
  m.def("estate_rroc", &estate_rroc, py::arg("estate"));
  m.def("area_average_rate", &area_average_rate, py::arg("estate"));

  py::class_<ScenarioDocument>(m, "ScenarioDocument")
      .def("scenario", &ScenarioDocument::scenario)
      .def("estate", &ScenarioDocument::estate)
      .def_readonly("initial_capital", &ScenarioDocument::initial_capital)
      .def_readonly("rotation_length", &ScenarioDocument::rotation_length)
      .def(py::self == py::self);
  m.def("parse_scenario", [](const std::string& text) { return parse_scenario(text); }, py::arg("text"));
  m.def("serialize_scenario", &serialize_scenario, py::arg("document"));

  m.def(
      "sweep",
      [](const GrowthScenario& s, double lo, double hi, int steps, const std::vector<std::string>& metrics,
         std::vector<double> d, std::vector<double> u, std::vector<double> lev) {
        SweepRequest req;
        req.grid = grid(lo, hi, steps);
        for (const auto& name : metrics) req.metrics.push_back(parse_metric(name));
        req.discount_rates = std::move(d);
        req.market_rates = std::move(u);
        req.leverages = std::move(lev);
        const SweepResult r = sweep(s, req);
        return std::pair(r.columns, r.rows);
      },
      py::arg("scenario"), py::arg("tau_min"), py::arg("tau_max"), py::arg("tau_steps"),
      py::arg("metrics") = std::vector<std::string>{"irr", "rroc"}, py::arg("d") = std::vector<double>{},
      py::arg("u") = std::vector<double>{}, py::arg("L") = std::vector<double>{},
      "Returns (columns, rows) with one row per rotation length.");
}
