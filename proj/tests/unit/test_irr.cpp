#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "capret/errors.hpp"
#include "capret/irr.hpp"
#include "oracles.hpp"

using namespace capret;

namespace {

/// Brute-force scan of the discounted sum for sign changes on a fine rate grid, refined by bisection.
std::vector<double> scan_roots(const std::vector<CashFlow>& flows, double lo, double hi, int n) {
  auto f = [&](double o) {
    double acc = 0.0;
    for (const auto& e : flows) acc += e.amount * std::exp(-o * e.time);
    return acc;
  };
  std::vector<double> roots;
  const double h = (hi - lo) / n;
  for (int i = 0; i < n; ++i) {
    const double a = lo + i * h;
    const double b = a + h;
    if ((f(a) < 0) != (f(b) < 0)) {
      roots.push_back(oracle::bisect(f, a, b));
    }
  }
  return roots;
}

}  // namespace

TEST_CASE("growth_cycle_irr equals the time-average spot rate") {
  CHECK(growth_cycle_irr(GrowthScenario(1.0, 10.0, ReturnPath::constant(0.05))) ==
        doctest::Approx(0.05).epsilon(1e-14));
  const auto ansatz = ReturnPath::ansatz(0.05, 0.5, 100.0);
  CHECK(std::abs(growth_cycle_irr(GrowthScenario(1.0, 100.0, ansatz)) - 0.05) < 1e-9);

  // early in the cycle the capital-weighted return runs ahead of the IRR
  for (double tau : {50.0, 62.25}) {
    const auto s = GrowthScenario(1.0, tau, ansatz);
    CHECK(growth_cycle_irr(s) < rroc(s));
  }
  const auto with_event = GrowthScenario(1.0, 10.0, ReturnPath::constant(0.05), InvestmentSchedule({{5.0, 1.0}}));
  CHECK_THROWS_AS(growth_cycle_irr(with_event), UnsupportedScheduleError);
}

TEST_CASE("commensurable_step") {
  CHECK(commensurable_step(std::vector<double>{0.0, 0.5, 1.5}) == doctest::Approx(0.5));
  CHECK(commensurable_step(std::vector<double>{0.0, 0.1, 0.3, 0.7}) == doctest::Approx(0.1));
  CHECK(commensurable_step(std::vector<double>{0.0, 37.5}) == doctest::Approx(37.5));
  CHECK_THROWS_AS(commensurable_step(std::vector<double>{0.0, 1.0, std::sqrt(2.0)}), DiscretizationError);
  CHECK_THROWS_AS(commensurable_step(std::vector<double>{0.0, 0.0}), DiscretizationError);
}

TEST_CASE("durand_kerner finds real and complex roots") {
  // (x^2 + 1)(x - 2)
  const std::vector<double> coeffs{-2.0, 1.0, -2.0, 1.0};
  auto roots = durand_kerner(coeffs);
  REQUIRE(roots.size() == 3);
  std::sort(roots.begin(), roots.end(), [](auto a, auto b) { return a.imag() < b.imag(); });
  CHECK(std::abs(roots[0] - std::complex<double>(0.0, -1.0)) < 1e-10);
  CHECK(std::abs(roots[1] - std::complex<double>(2.0, 0.0)) < 1e-10);
  CHECK(std::abs(roots[2] - std::complex<double>(0.0, 1.0)) < 1e-10);
  CHECK_THROWS_AS(durand_kerner(std::vector<double>{1.0, 0.0}), ArgumentError);

  // deterministic seeding
  CHECK(durand_kerner(coeffs) == durand_kerner(coeffs));
}

TEST_CASE("general_irr: single real rate") {
  const CashFlowSchedule s({{0.0, -1.0}, {2.0, 1.21}});
  const IrrResult r = general_irr(s);
  REQUIRE(r.principal_root);
  CHECK(*r.principal_root == doctest::Approx(std::log(1.1)).epsilon(1e-12));
  CHECK(*r.principal_root == doctest::Approx(0.09531017980432493).epsilon(1e-12));
  CHECK(r.step == 2.0);  // one flow after the outlay: a linear polynomial
  CHECK(r.degree == 1);
  CHECK(r.all_real_roots.size() == 1);
  CHECK(r.complex_root_count == 0);
}

TEST_CASE("general_irr: two real rates") {
  const std::vector<CashFlow> flows{{0.0, -1.0}, {1.0, 2.3}, {2.0, -1.32}};
  const auto scanned = scan_roots(flows, -0.5, 1.0, 15000);
  REQUIRE(scanned.size() == 2);
  CHECK(scanned[0] == doctest::Approx(0.09531017980432493).epsilon(1e-10));
  CHECK(scanned[1] == doctest::Approx(0.1823215567939546).epsilon(1e-10));

  const IrrResult r = general_irr(CashFlowSchedule(flows));
  REQUIRE(r.all_real_roots.size() == 2);
  CHECK(std::abs(r.all_real_roots[0] - std::log(1.1)) < 1e-9);
  CHECK(std::abs(r.all_real_roots[1] - std::log(1.2)) < 1e-9);
  REQUIRE(r.principal_root);
  CHECK(*r.principal_root == r.all_real_roots[0]);
  CHECK(r.complex_root_count == 0);
}

TEST_CASE("general_irr: break-even, double roots, no real root, offset start") {
  auto even = general_irr(CashFlowSchedule({{0.0, -1.0}, {1.0, 1.0}}));
  REQUIRE(even.principal_root);
  CHECK(*even.principal_root == 0.0);
  CHECK_FALSE(std::signbit(*even.principal_root));

  auto twice = general_irr(CashFlowSchedule({{0.0, -1.0}, {1.0, 2.0}, {2.0, -1.0}}));
  REQUIRE(twice.all_real_roots.size() == 2);
  CHECK(std::abs(twice.all_real_roots[0]) < 1e-7);
  CHECK(std::abs(twice.all_real_roots[1]) < 1e-7);

  auto none = general_irr(CashFlowSchedule({{0.0, -1.0}, {1.0, 3.0}, {2.0, -3.0}}));
  CHECK_FALSE(none.principal_root);
  CHECK(none.complex_root_count == 2);

  auto late = general_irr(CashFlowSchedule({{1.0, -1.0}, {3.0, 1.21}}));
  REQUIRE(late.principal_root);
  CHECK(*late.principal_root == doctest::Approx(std::log(1.1)).epsilon(1e-12));

  // duplicate times merge
  auto merged = general_irr(CashFlowSchedule({{0.0, -0.4}, {0.0, -0.6}, {2.0, 1.21}}));
  CHECK(*merged.principal_root == doctest::Approx(std::log(1.1)).epsilon(1e-12));
}

TEST_CASE("general_irr error paths") {
  CHECK_THROWS_AS(CashFlowSchedule({{0.0, 1.0}, {1.0, 2.0}}), NoRootError);
  CHECK_THROWS_AS(CashFlowSchedule({{0.0, -1.0}, {1.0, -2.0}}), NoRootError);
  CHECK_THROWS_AS(CashFlowSchedule({{0.0, -1.0}}), ArgumentError);
  CHECK_THROWS_AS(CashFlowSchedule({{1.0, -1.0}, {0.5, 2.0}}), ArgumentError);
  CHECK_THROWS_AS(CashFlowSchedule({{-1.0, -1.0}, {0.5, 2.0}}), ArgumentError);
  CHECK_THROWS_AS(general_irr(CashFlowSchedule({{0.0, -1.0}, {1.0, 0.5}, {std::sqrt(2.0), 0.7}})),
                  DiscretizationError);
  CHECK_THROWS_AS(general_irr(CashFlowSchedule({{0.0, -1.0}, {1.0, 1.0}, {1.0, -1.0}, {0.0, 1.0}})),
                  ArgumentError);
  CHECK_THROWS_AS(general_irr(CashFlowSchedule({{0.0, -1.0}, {0.0, 1.0}, {1.0, 1.0}, {1.0, -1.0}})), NoRootError);
}

TEST_CASE("property: residuals, root count and scale invariance on random schedules") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> amount(-1.0, 1.0);
  std::uniform_int_distribution<int> count(2, 12);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<CashFlow> flows{{0.0, -1.0}};
    const int n = count(rng);
    for (int k = 1; k <= n; ++k) {
      flows.push_back({0.5 * k, amount(rng)});
    }
    flows.back().amount = std::abs(flows.back().amount) + 0.1;
    const CashFlowSchedule s(flows);
    const IrrResult r = general_irr(s);
    CHECK(static_cast<int>(r.all_real_roots.size()) + r.complex_root_count == r.degree);
    double total = 0.0;
    for (const auto& e : flows) total += std::abs(e.amount);
    for (double rho : r.all_real_roots) {
      CHECK(std::abs(discounted_sum(s, rho)) < 1e-8 * total);
    }
    // Descartes: -1 first, positive last => at least one positive x root
    CHECK(r.principal_root.has_value());

    std::vector<CashFlow> scaled = flows;
    for (auto& e : scaled) e.amount *= 37.5;
    const IrrResult rs = general_irr(CashFlowSchedule(scaled));
    REQUIRE(rs.all_real_roots.size() == r.all_real_roots.size());
    for (std::size_t i = 0; i < r.all_real_roots.size(); ++i) {
      CHECK(rs.all_real_roots[i] == doctest::Approx(r.all_real_roots[i]).epsilon(1e-8));
    }
  }
}

TEST_CASE("property: cash-basis IRR of an investment-free cycle equals growth_cycle_irr") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double cycle = 10.0 + 190.0 * unit(rng);
    const auto s = GrowthScenario(0.5 + unit(rng), (0.05 + 0.95 * unit(rng)) * cycle,
                                  ReturnPath::ansatz(0.2 * unit(rng) - 0.02, 2.0 * unit(rng) - 0.5, cycle));
    const IrrResult r = general_irr(to_cash_flows(s));
    REQUIRE(r.principal_root);
    CHECK(std::abs(*r.principal_root - growth_cycle_irr(s)) < 1e-6);
  }
}

TEST_CASE("to_cash_flows treats investments as outflows") {
  const auto s = GrowthScenario(1.0, 10.0, ReturnPath::constant(0.05), InvestmentSchedule({{5.0, 0.5}}));
  const auto flows = to_cash_flows(s).events();
  REQUIRE(flows.size() == 3);
  CHECK(flows[1].amount == -0.5);
  CHECK(flows[2].amount == doctest::Approx(2.290733979043999));
  // every unit invested grows at 5 %
  const IrrResult r = general_irr(to_cash_flows(s));
  CHECK(*r.principal_root == doctest::Approx(0.05).epsilon(1e-9));
}
