#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "capret/errors.hpp"
#include "capret/estate.hpp"
#include "capret/growth.hpp"
#include "capret/irr.hpp"
#include "capret/leverage.hpp"
#include "capret/valuation.hpp"

namespace capret {

inline constexpr int kSchemaVersion = 1;

/// Malformed JSON or CSV text; line and column are 1-based.
class ParseError : public Error {
public:
  ParseError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

struct Violation {
  std::string path;  ///< JSON pointer of the offending key, e.g. "/tau"
  std::string message;
};

/// Every invariant a document violates, not just the first.
class ValidationError : public Error {
public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

private:
  std::vector<Violation> violations_;
};

/// Validated contents of a `.json` scenario file, with defaults filled in.
struct ScenarioDocument {
  int schema_version = kSchemaVersion;
  double initial_capital = 1.0;
  double rotation_length = 1.0;
  ReturnPath path = ReturnPath::constant(0.0);
  std::vector<InvestmentEvent> investments;
  Quadrature quadrature;
  std::optional<ValuationSpec> valuation;
  std::optional<LeverageSpec> leverage;
  std::optional<AgeDensity> estate_ages;

  GrowthScenario scenario() const;
  /// Present when the document carries an `estate` block.
  std::optional<EstateSpec> estate() const;

  bool operator==(const ScenarioDocument&) const = default;
};

ScenarioDocument parse_scenario(std::string_view text);
/// Canonical JSON with every default written out; parse_scenario inverts it exactly.
std::string serialize_scenario(const ScenarioDocument& document);

/// Reads `time,amount` rows; blank lines, `#` comments and a non-numeric header row are skipped.
CashFlowSchedule parse_cash_flows(std::string_view text);

using Cell = std::variant<double, long long, std::string>;

/// CSV with a header row; doubles printed with 9 significant digits. Throws
/// ArgumentError on ragged rows.
std::string write_table(std::span<const std::string> columns, std::span<const std::vector<Cell>> rows);

std::string format_number(double value);

}  // namespace capret
