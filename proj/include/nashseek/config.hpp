#ifndef NASHSEEK_CONFIG_HPP
#define NASHSEEK_CONFIG_HPP

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nashseek/gains.hpp"
#include "nashseek/game.hpp"
#include "nashseek/sim.hpp"

namespace nashseek {

namespace config {

/// Minimal TOML-style document model: key/value pairs with [table] headers,
/// strings, numbers, booleans and (nested) arrays. See the README for the
/// exact grammar.
class Value {
 public:
  using Array = std::vector<Value>;
  using Table = std::map<std::string, Value>;
  using Payload = std::variant<std::string, double, bool, Array, Table>;

  Value() : payload_(Table{}) {}
  explicit Value(Payload p) : payload_(std::move(p)) {}

  bool is_string() const { return std::holds_alternative<std::string>(payload_); }
  bool is_number() const { return std::holds_alternative<double>(payload_); }
  bool is_bool() const { return std::holds_alternative<bool>(payload_); }
  bool is_array() const { return std::holds_alternative<Array>(payload_); }
  bool is_table() const { return std::holds_alternative<Table>(payload_); }

  const std::string& as_string() const;
  double as_number() const;
  int as_int() const;  // number that must be integral
  bool as_bool() const;
  const Array& as_array() const;
  const Table& as_table() const;
  Table& mutable_table();

  const Value* find(const std::string& key) const;  // tables only

  int line = 0;  // 1-based source line, for error messages
 private:
  Payload payload_;
};

/// Parses document text; throws ConfigError with a line number on failure.
Value parse(const std::string& text);

}  // namespace config

struct GainsSpec {
  bool automatic = true;
  double margin = 1.1;
  std::optional<double> k1, k2, k3, k4;
};

struct OutputSpec {
  std::optional<std::string> csv;
  std::optional<std::string> positions_svg;
  std::optional<std::string> velocities_svg;
  std::optional<std::string> report;
  bool any() const {
    return csv || positions_svg || velocities_svg || report;
  }
};

/// A fully validated scenario: which game, which strategy, how to tune the
/// gains, where to start and what to write.
struct ScenarioConfig {
  std::string name = "scenario";
  std::optional<std::string> builtin_game;  // e.g. "connectivity5"
  std::optional<std::vector<int>> game_action_dims;
  std::optional<std::vector<PlayerCost>> game_costs;
  StrategyKind strategy = StrategyKind::filter;
  std::optional<std::vector<std::pair<int, int>>> edges;  // 0-based
  GainsSpec gains;
  std::optional<Eigen::VectorXd> x0;
  std::optional<double> dt;  // defaulted from the step-size guard when unset
  double t_end = 20.0;
  std::optional<int> record_stride;
  double tol = 1e-3;
  OutputSpec outputs;
};

/// Parses and validates scenario text. Unknown keys, missing graph for
/// distributed strategies, malformed game definitions and inconsistent
/// dimensions all raise ValidationError (parse failures raise ConfigError).
ScenarioConfig parse_config(const std::string& text,
                            const std::string& name_hint = "scenario");
ScenarioConfig parse_config_file(const std::string& path);

/// Instantiates the configured game (builtin name or inline definition).
QuadraticGame make_game(const ScenarioConfig& cfg);

}  // namespace nashseek

#endif  // NASHSEEK_CONFIG_HPP
