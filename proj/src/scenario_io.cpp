#include "capret/scenario_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

namespace capret {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string join_violations(const std::vector<Violation>& violations) {
  std::ostringstream out;
  out << "scenario document is invalid:";
  for (const Violation& v : violations) {
    out << "\n  " << v.path << ": " << v.message;
  }
  return out.str();
}

/// Collects violations while walking a parsed document.
class Reader {
public:
  std::vector<Violation> violations;

  void fail(const std::string& path, const std::string& message) { violations.push_back({path, message}); }

  bool object(const json& j, const std::string& path) {
    if (!j.is_object()) {
      fail(path, "expected an object");
      return false;
    }
    return true;
  }

  void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items()) {
      if (!keys.contains(key)) {
        fail(path + "/" + key, "unknown key");
      }
    }
  }

  std::optional<double> number(const json& j, const std::string& path, const char* key, bool required) {
    const std::string where = path + "/" + key;
    if (!j.contains(key)) {
      if (required) {
        fail(where, "missing required number");
      }
      return std::nullopt;
    }
    const json& v = j.at(key);
    if (!v.is_number()) {
      fail(where, "expected a number");
      return std::nullopt;
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
      fail(where, "must be finite");
      return std::nullopt;
    }
    return x;
  }

  std::optional<double> positive(const json& j, const std::string& path, const char* key, bool required) {
    auto x = number(j, path, key, required);
    if (x && !(*x > 0.0)) {
      fail(path + "/" + key, "must be positive");
      return std::nullopt;
    }
    return x;
  }

  std::vector<std::pair<double, double>> pairs(const json& j, const std::string& path) {
    std::vector<std::pair<double, double>> out;
    if (!j.is_array()) {
      fail(path, "expected an array of [x, y] pairs");
      return out;
    }
    for (std::size_t i = 0; i < j.size(); ++i) {
      const json& p = j[i];
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        fail(path + "/" + std::to_string(i), "expected a pair of numbers");
        continue;
      }
      out.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    return out;
  }

  template <class F>
  auto attempt(const std::string& path, F&& build) -> std::optional<decltype(build())> {
    try {
      return build();
    } catch (const Error& e) {
      fail(path, e.what());
      return std::nullopt;
    }
  }

  std::optional<ReturnPath> path_spec(const json& j, const std::string& path) {
    if (!object(j, path)) {
      return std::nullopt;
    }
    if (!j.contains("type") || !j["type"].is_string()) {
      fail(path + "/type", "expected one of constant, ansatz, tabulated, reversed");
      return std::nullopt;
    }
    const std::string type = j["type"].get<std::string>();
    if (type == "constant") {
      only_keys(j, path, {"type", "rate"});
      auto rate = number(j, path, "rate", true);
      if (rate) {
        return attempt(path, [&] { return ReturnPath::constant(*rate); });
      }
    } else if (type == "ansatz") {
      only_keys(j, path, {"type", "mean_rate", "shape", "full_cycle"});
      auto mean = number(j, path, "mean_rate", true);
      auto shape = number(j, path, "shape", true);
      auto cycle = positive(j, path, "full_cycle", true);
      if (mean && shape && cycle) {
        return attempt(path, [&] { return ReturnPath::ansatz(*mean, *shape, *cycle); });
      }
    } else if (type == "tabulated") {
      only_keys(j, path, {"type", "knots"});
      if (!j.contains("knots")) {
        fail(path + "/knots", "missing required knot list");
        return std::nullopt;
      }
      const std::size_t before = violations.size();
      std::vector<ReturnPath::Knot> knots;
      for (auto [t, r] : pairs(j["knots"], path + "/knots")) {
        knots.push_back({t, r});
      }
      if (violations.size() == before) {
        return attempt(path + "/knots", [&] { return ReturnPath::tabulated(knots); });
      }
    } else if (type == "reversed") {
      only_keys(j, path, {"type", "inner", "horizon"});
      auto horizon = positive(j, path, "horizon", true);
      std::optional<ReturnPath> inner;
      if (!j.contains("inner")) {
        fail(path + "/inner", "missing required inner path");
      } else {
        inner = path_spec(j["inner"], path + "/inner");
      }
      if (horizon && inner) {
        return attempt(path, [&] { return ReturnPath::reversed(*inner, *horizon); });
      }
    } else {
      fail(path + "/type", "unknown path type '" + type + "'");
    }
    return std::nullopt;
  }
};

ordered_json path_to_json(const ReturnPath& path) {
  ordered_json j;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ReturnPath::Constant>) {
          j["type"] = "constant";
          j["rate"] = v.rate;
        } else if constexpr (std::is_same_v<T, ReturnPath::Ansatz>) {
          j["type"] = "ansatz";
          j["mean_rate"] = v.mean_rate;
          j["shape"] = v.shape;
          j["full_cycle"] = v.full_cycle;
        } else if constexpr (std::is_same_v<T, ReturnPath::Tabulated>) {
          j["type"] = "tabulated";
          j["knots"] = ordered_json::array();
          for (const auto& k : v.knots) {
            j["knots"].push_back({k.time, k.rate});
          }
        } else {
          j["type"] = "reversed";
          j["horizon"] = v.horizon;
          j["inner"] = path_to_json(*v.inner);
        }
      },
      path.variant());
  return j;
}

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

ParseError::ParseError(const std::string& what, int line, int column)
    : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
      line_(line),
      column_(column) {}

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

GrowthScenario ScenarioDocument::scenario() const {
  return GrowthScenario(initial_capital, rotation_length, path, InvestmentSchedule(investments), quadrature);
}

std::optional<EstateSpec> ScenarioDocument::estate() const {
  if (!estate_ages) {
    return std::nullopt;
  }
  return EstateSpec(scenario(), *estate_ages);
}

ScenarioDocument parse_scenario(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports the byte just past the offending character
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    auto [line, column] = line_column(text, byte);
    throw ParseError("malformed JSON: " + std::string(e.what()), line, column);
  }

  Reader rd;
  ScenarioDocument doc;
  if (!rd.object(root, "")) {
    throw ValidationError(rd.violations);
  }
  rd.only_keys(root, "",
               {"schema_version", "K0", "tau", "path", "investments", "valuation", "leverage", "estate", "numerics"});

  if (root.contains("schema_version")) {
    const json& v = root["schema_version"];
    if (!v.is_number_integer() || v.get<long long>() != kSchemaVersion) {
      rd.fail("/schema_version", "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
    }
  }
  auto k0 = rd.positive(root, "", "K0", true);
  auto tau = rd.positive(root, "", "tau", true);
  std::optional<ReturnPath> path;
  if (!root.contains("path")) {
    rd.fail("/path", "missing required path");
  } else {
    path = rd.path_spec(root["path"], "/path");
  }

  if (root.contains("investments")) {
    const json& inv = root["investments"];
    if (!inv.is_array()) {
      rd.fail("/investments", "expected an array");
    } else {
      for (std::size_t i = 0; i < inv.size(); ++i) {
        const std::string where = "/investments/" + std::to_string(i);
        if (!rd.object(inv[i], where)) {
          continue;
        }
        rd.only_keys(inv[i], where, {"time", "amount"});
        auto t = rd.number(inv[i], where, "time", true);
        auto a = rd.number(inv[i], where, "amount", true);
        if (t && a) {
          doc.investments.push_back({*t, *a});
        }
      }
    }
  }

  if (root.contains("numerics")) {
    const json& num = root["numerics"];
    if (rd.object(num, "/numerics")) {
      rd.only_keys(num, "/numerics", {"quadrature_intervals"});
      if (num.contains("quadrature_intervals")) {
        const json& q = num["quadrature_intervals"];
        if (!q.is_number_integer() || q.get<long long>() < 2 || q.get<long long>() > 100'000'000) {
          rd.fail("/numerics/quadrature_intervals", "expected an integer in [2, 1e8]");
        } else {
          doc.quadrature.intervals = q.get<int>();
        }
      }
    }
  }

  if (root.contains("valuation")) {
    const json& v = root["valuation"];
    if (rd.object(v, "/valuation")) {
      rd.only_keys(v, "/valuation", {"d", "u", "L"});
      auto d = rd.positive(v, "/valuation", "d", true);
      auto u = rd.number(v, "/valuation", "u", false);
      auto lev = rd.number(v, "/valuation", "L", false);
      if (lev && *lev < -1.0) {
        rd.fail("/valuation/L", "leverage must be at least -1");
      } else if (d) {
        doc.valuation = ValuationSpec{*d, u.value_or(0.0), lev.value_or(0.0)};
      }
    }
  }

  if (root.contains("leverage")) {
    const json& v = root["leverage"];
    if (rd.object(v, "/leverage")) {
      rd.only_keys(v, "/leverage", {"L", "u", "E"});
      auto lev = rd.number(v, "/leverage", "L", true);
      auto u = rd.number(v, "/leverage", "u", true);
      auto equity = rd.positive(v, "/leverage", "E", false);
      if (lev && *lev < -1.0) {
        rd.fail("/leverage/L", "leverage must be at least -1");
      } else if (lev && u) {
        LeverageSpec spec{*lev, *u, equity};
        if (equity && k0 && std::abs(*k0 / *equity - (*lev + 1.0)) >= 1e-9) {
          std::ostringstream msg;
          msg << "leverage identity L + 1 = K/E violated: K0/E = " << *k0 / *equity << " but L + 1 = " << *lev + 1.0;
          rd.fail("/leverage/E", msg.str());
        } else {
          doc.leverage = spec;
        }
      }
    }
  }

  if (root.contains("estate")) {
    const json& v = root["estate"];
    if (rd.object(v, "/estate")) {
      rd.only_keys(v, "/estate", {"ages"});
      if (!v.contains("ages")) {
        rd.fail("/estate/ages", "missing required age density");
      } else if (rd.object(v["ages"], "/estate/ages")) {
        const json& ages = v["ages"];
        const std::string type = ages.contains("type") && ages["type"].is_string() ? ages["type"].get<std::string>() : "";
        if (type == "uniform") {
          rd.only_keys(ages, "/estate/ages", {"type"});
          doc.estate_ages = AgeDensity::uniform();
        } else if (type == "tabulated") {
          rd.only_keys(ages, "/estate/ages", {"type", "knots"});
          if (!ages.contains("knots")) {
            rd.fail("/estate/ages/knots", "missing required knot list");
          } else {
            const std::size_t before = rd.violations.size();
            std::vector<AgeDensity::Knot> knots;
            for (auto [a, p] : rd.pairs(ages["knots"], "/estate/ages/knots")) {
              knots.push_back({a, p});
            }
            if (rd.violations.size() == before) {
              doc.estate_ages = rd.attempt("/estate/ages/knots", [&] { return AgeDensity::tabulated(knots); });
            }
          }
        } else {
          rd.fail("/estate/ages/type", "expected uniform or tabulated");
        }
      }
    }
  }

  if (k0 && tau && path) {
    doc.initial_capital = *k0;
    doc.rotation_length = *tau;
    doc.path = *path;
    const std::size_t before = rd.violations.size();
    std::optional<InvestmentSchedule> schedule =
        rd.attempt("/investments", [&] { return InvestmentSchedule(doc.investments); });
    if (rd.violations.size() == before && schedule) {
      auto scenario = rd.attempt("/tau", [&] { return doc.scenario(); });
      if (scenario && doc.estate_ages) {
        rd.attempt("/estate/ages", [&] { return EstateSpec(*scenario, *doc.estate_ages); });
      }
    }
  }

  if (!rd.violations.empty()) {
    throw ValidationError(rd.violations);
  }
  return doc;
}

std::string serialize_scenario(const ScenarioDocument& doc) {
  ordered_json j;
  j["schema_version"] = doc.schema_version;
  j["K0"] = doc.initial_capital;
  j["tau"] = doc.rotation_length;
  j["path"] = path_to_json(doc.path);
  j["investments"] = ordered_json::array();
  for (const auto& e : doc.investments) {
    j["investments"].push_back({{"time", e.time}, {"amount", e.amount}});
  }
  if (doc.valuation) {
    j["valuation"] = {{"d", doc.valuation->discount_rate}, {"u", doc.valuation->market_rate},
                      {"L", doc.valuation->leverage}};
  }
  if (doc.leverage) {
    ordered_json lev = {{"L", doc.leverage->leverage}, {"u", doc.leverage->market_rate}};
    if (doc.leverage->equity) {
      lev["E"] = *doc.leverage->equity;
    }
    j["leverage"] = lev;
  }
  if (doc.estate_ages) {
    ordered_json ages;
    if (doc.estate_ages->is_uniform()) {
      ages["type"] = "uniform";
    } else {
      ages["type"] = "tabulated";
      ages["knots"] = ordered_json::array();
      for (const auto& k : doc.estate_ages->knots()) {
        ages["knots"].push_back({k.age, k.density});
      }
    }
    j["estate"] = {{"ages", ages}};
  }
  j["numerics"] = {{"quadrature_intervals", doc.quadrature.intervals}};
  return j.dump(2) + "\n";
}

CashFlowSchedule parse_cash_flows(std::string_view text) {
  std::vector<CashFlow> flows;
  int line_no = 0;
  bool first_content = true;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') {
      if (end == text.size()) {
        break;
      }
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      throw ParseError("expected two comma-separated fields (time,amount)", line_no, 1);
    }
    auto field = [](std::string_view s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string_view::npos ? std::string_view{} : s.substr(b, e - b + 1);
    };
    const std::string_view a = field(line.substr(0, comma));
    const std::string_view b = field(line.substr(comma + 1));
    double t = 0.0;
    double amount = 0.0;
    auto ra = std::from_chars(a.data(), a.data() + a.size(), t);
    auto rb = std::from_chars(b.data(), b.data() + b.size(), amount);
    const bool ok_a = ra.ec == std::errc{} && ra.ptr == a.data() + a.size() && !a.empty();
    const bool ok_b = rb.ec == std::errc{} && rb.ptr == b.data() + b.size() && !b.empty();
    if (!ok_a || !ok_b) {
      if (first_content) {
        first_content = false;  // header row
        continue;
      }
      const int column = ok_a ? static_cast<int>(comma) + 2 : 1;
      throw ParseError("expected numeric time and amount", line_no, column);
    }
    first_content = false;
    flows.push_back({t, amount});
    if (end == text.size()) {
      break;
    }
  }
  return CashFlowSchedule(std::move(flows));
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

std::string write_table(std::span<const std::string> columns, std::span<const std::vector<Cell>> rows) {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
      return s;
    }
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') {
        out += '"';
      }
      out += c;
    }
    return out + "\"";
  };
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out += (i ? "," : "") + quote(columns[i]);
  }
  out += "\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != columns.size()) {
      throw ArgumentError("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                          " cells, expected " + std::to_string(columns.size()));
    }
    for (std::size_t i = 0; i < rows[r].size(); ++i) {
      if (i) {
        out += ",";
      }
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              out += format_number(v);
            } else if constexpr (std::is_same_v<T, long long>) {
              out += std::to_string(v);
            } else {
              out += quote(v);
            }
          },
          rows[r][i]);
    }
    out += "\n";
  }
  return out;
}

}  // namespace capret
