#include "nashseek/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nashseek/errors.hpp"

namespace nashseek {

namespace config {

const std::string& Value::as_string() const {
  if (!is_string()) throw ValidationError("expected a string value");
  return std::get<std::string>(payload_);
}

double Value::as_number() const {
  if (!is_number()) throw ValidationError("expected a numeric value");
  return std::get<double>(payload_);
}

int Value::as_int() const {
  const double d = as_number();
  if (d != std::floor(d) || std::abs(d) > 1e9)
    throw ValidationError("expected an integer value");
  return static_cast<int>(d);
}

bool Value::as_bool() const {
  if (!is_bool()) throw ValidationError("expected a boolean value");
  return std::get<bool>(payload_);
}

const Value::Array& Value::as_array() const {
  if (!is_array()) throw ValidationError("expected an array value");
  return std::get<Array>(payload_);
}

const Value::Table& Value::as_table() const {
  if (!is_table()) throw ValidationError("expected a table value");
  return std::get<Table>(payload_);
}

Value::Table& Value::mutable_table() {
  if (!is_table()) throw ValidationError("expected a table value");
  return std::get<Table>(payload_);
}

const Value* Value::find(const std::string& key) const {
  const auto& t = as_table();
  const auto it = t.find(key);
  return it == t.end() ? nullptr : &it->second;
}

namespace {

// Character-level cursor over the document with line tracking.
struct Cursor {
  const std::string& text;
  std::size_t pos = 0;
  int line = 1;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  char take() {
    const char c = text[pos++];
    if (c == '\n') ++line;
    return c;
  }
  void skip_inline_ws() {
    while (!done() && (peek() == ' ' || peek() == '\t')) take();
  }
  // Whitespace, newlines and comments.
  void skip_ws_and_comments() {
    while (!done()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        take();
      } else if (c == '#') {
        while (!done() && peek() != '\n') take();
      } else {
        break;
      }
    }
  }
};

bool is_bare_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

std::string parse_bare_key(Cursor& cur) {
  std::string key;
  while (!cur.done() && is_bare_key_char(cur.peek())) key += cur.take();
  if (key.empty()) throw ConfigError("expected a key", cur.line);
  return key;
}

std::string parse_quoted(Cursor& cur) {
  cur.take();  // opening quote
  std::string out;
  while (true) {
    if (cur.done()) throw ConfigError("unterminated string", cur.line);
    const char c = cur.take();
    if (c == '"') return out;
    if (c == '\n') throw ConfigError("newline inside string", cur.line - 1);
    if (c == '\\') {
      if (cur.done()) throw ConfigError("dangling escape", cur.line);
      const char esc = cur.take();
      switch (esc) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default:
          throw ConfigError(std::string("unknown escape \\") + esc, cur.line);
      }
    } else {
      out += c;
    }
  }
}

Value parse_value(Cursor& cur);

Value parse_array(Cursor& cur) {
  const int start_line = cur.line;
  cur.take();  // '['
  Value::Array items;
  while (true) {
    cur.skip_ws_and_comments();
    if (cur.done()) throw ConfigError("unterminated array", start_line);
    if (cur.peek() == ']') {
      cur.take();
      break;
    }
    items.push_back(parse_value(cur));
    cur.skip_ws_and_comments();
    if (cur.done()) throw ConfigError("unterminated array", start_line);
    if (cur.peek() == ',') {
      cur.take();
    } else if (cur.peek() != ']') {
      throw ConfigError("expected ',' or ']' in array", cur.line);
    }
  }
  Value v{Value::Payload{std::move(items)}};
  v.line = start_line;
  return v;
}

Value parse_scalar(Cursor& cur) {
  const int line = cur.line;
  std::string tok;
  while (!cur.done()) {
    const char c = cur.peek();
    if (c == ',' || c == ']' || c == '\n' || c == '#' || c == ' ' ||
        c == '\t' || c == '\r')
      break;
    tok += cur.take();
  }
  if (tok.empty()) throw ConfigError("expected a value", line);
  Value v;
  if (tok == "true") {
    v = Value{Value::Payload{true}};
  } else if (tok == "false") {
    v = Value{Value::Payload{false}};
  } else {
    char* end = nullptr;
    const double d = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size())
      throw ConfigError("cannot parse value '" + tok + "'", line);
    if (!std::isfinite(d))
      throw ConfigError("non-finite number '" + tok + "'", line);
    v = Value{Value::Payload{d}};
  }
  v.line = line;
  return v;
}

Value parse_value(Cursor& cur) {
  cur.skip_ws_and_comments();
  if (cur.done()) throw ConfigError("expected a value", cur.line);
  const char c = cur.peek();
  if (c == '"') {
    const int line = cur.line;
    Value v{Value::Payload{parse_quoted(cur)}};
    v.line = line;
    return v;
  }
  if (c == '[') return parse_array(cur);
  return parse_scalar(cur);
}

// Walks or creates nested tables along a dotted path.
Value::Table* descend(Value& root, const std::vector<std::string>& path,
                      int line) {
  Value::Table* table = &root.mutable_table();
  for (const auto& part : path) {
    auto [it, inserted] = table->try_emplace(part, Value{});
    if (!inserted && !it->second.is_table())
      throw ConfigError("key '" + part + "' is already a non-table value",
                        line);
    if (inserted) it->second.line = line;
    table = &it->second.mutable_table();
  }
  return table;
}

std::vector<std::string> parse_key_path(Cursor& cur) {
  std::vector<std::string> path{parse_bare_key(cur)};
  while (!cur.done() && cur.peek() == '.') {
    cur.take();
    path.push_back(parse_bare_key(cur));
  }
  return path;
}

}  // namespace

Value parse(const std::string& text) {
  Value root;
  root.line = 1;
  Cursor cur{text};
  std::vector<std::string> current;  // active table path

  while (true) {
    cur.skip_ws_and_comments();
    if (cur.done()) break;
    const int line = cur.line;

    if (cur.peek() == '[') {
      cur.take();
      cur.skip_inline_ws();
      if (!cur.done() && cur.peek() == '[')
        throw ConfigError("arrays of tables are not supported", line);
      current = parse_key_path(cur);
      cur.skip_inline_ws();
      if (cur.done() || cur.take() != ']')
        throw ConfigError("expected ']' after table name", line);
      descend(root, current, line);
      continue;
    }

    auto path = parse_key_path(cur);
    cur.skip_inline_ws();
    if (cur.done() || cur.take() != '=')
      throw ConfigError("expected '=' after key '" + path.back() + "'", line);
    Value value = parse_value(cur);
    cur.skip_inline_ws();
    if (!cur.done() && cur.peek() != '\n' && cur.peek() != '#' &&
        cur.peek() != '\r')
      throw ConfigError("trailing characters after value", cur.line);

    std::vector<std::string> full = current;
    full.insert(full.end(), path.begin(), path.end() - 1);
    Value::Table* table = descend(root, full, line);
    if (!table->try_emplace(path.back(), std::move(value)).second)
      throw ConfigError("duplicate key '" + path.back() + "'", line);
  }
  return root;
}

}  // namespace config

namespace {

using config::Value;

Eigen::VectorXd number_array(const Value& v, const std::string& what) {
  const auto& arr = v.as_array();
  Eigen::VectorXd out(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number())
      throw ValidationError(what + " must be an array of numbers");
    out(i) = arr[i].as_number();
  }
  return out;
}

Eigen::MatrixXd number_matrix(const Value& v, const std::string& what) {
  const auto& rows = v.as_array();
  if (rows.empty()) throw ValidationError(what + " must not be empty");
  Eigen::MatrixXd out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Eigen::VectorXd row = number_array(rows[r], what + " row");
    if (r == 0) out.resize(rows.size(), row.size());
    if (row.size() != out.cols())
      throw ValidationError(what + " rows have inconsistent lengths");
    out.row(r) = row;
  }
  return out;
}

void reject_unknown_keys(const Value& table,
                         std::initializer_list<const char*> known,
                         const std::string& where) {
  for (const auto& [key, value] : table.as_table()) {
    bool ok = false;
    for (const char* k : known)
      if (key == k) ok = true;
    if (!ok)
      throw ValidationError("unknown key '" + key + "' in " + where);
  }
}

void parse_game_table(const Value& game, ScenarioConfig& cfg) {
  const Value* np = game.find("n_players");
  const Value* dims = game.find("action_dims");
  if (!np || !dims)
    throw ValidationError("[game] needs n_players and action_dims");
  const int n = np->as_int();
  if (n < 1) throw ValidationError("n_players must be >= 1");
  for (const auto& [key, value] : game.as_table()) {
    if (key == "n_players" || key == "action_dims") continue;
    bool is_player = key.rfind("player", 0) == 0;
    if (is_player) {
      const std::string idx = key.substr(6);
      is_player = !idx.empty() && idx.size() <= 6 &&
                  idx.find_first_not_of("0123456789") == std::string::npos &&
                  std::stoi(idx) >= 1 && std::stoi(idx) <= n;
    }
    if (!is_player)
      throw ValidationError("unknown key '" + key + "' in [game]");
  }
  std::vector<int> action_dims;
  for (const auto& d : dims->as_array()) action_dims.push_back(d.as_int());
  if (static_cast<int>(action_dims.size()) != n)
    throw ValidationError("action_dims must list one entry per player");
  for (int d : action_dims)
    if (d < 1) throw ValidationError("action_dims entries must be >= 1");
  cfg.game_action_dims = action_dims;
  cfg.game_costs = std::vector<PlayerCost>();
  cfg.game_costs->reserve(n);
}

void parse_player_tables(const Value& game, int n, int dim,
                         std::vector<PlayerCost>& costs) {
  for (int i = 1; i <= n; ++i) {
    const std::string key = "player" + std::to_string(i);
    const Value* p = game.find(key);
    if (!p) throw ValidationError("missing [game." + key + "] table");
    reject_unknown_keys(*p, {"quad", "lin", "const"}, "[" + key + "]");
    const Value* quad = p->find("quad");
    const Value* lin = p->find("lin");
    if (!quad || !lin)
      throw ValidationError("[" + key + "] needs quad and lin");
    PlayerCost cost;
    cost.quad = number_matrix(*quad, key + ".quad");
    cost.lin = number_array(*lin, key + ".lin");
    if (cost.quad.rows() != dim || cost.quad.cols() != dim)
      throw ValidationError(key + ".quad must be DxD with D = " +
                            std::to_string(dim));
    if (cost.lin.size() != dim)
      throw ValidationError(key + ".lin must have length D = " +
                            std::to_string(dim));
    if (const Value* c = p->find("const")) cost.constant = c->as_number();
    costs.push_back(std::move(cost));
  }
}

void parse_gains_table(const Value& v, GainsSpec& gains) {
  reject_unknown_keys(v, {"mode", "margin", "k1", "k2", "k3", "k4"},
                      "[gains]");
  if (const Value* mode = v.find("mode")) {
    const std::string& m = mode->as_string();
    if (m == "auto") {
      gains.automatic = true;
    } else if (m == "manual") {
      gains.automatic = false;
    } else {
      throw ValidationError("gains.mode must be 'auto' or 'manual'");
    }
  }
  if (const Value* margin = v.find("margin")) {
    gains.margin = margin->as_number();
    if (gains.margin <= 1.0)
      throw ValidationError("gains.margin must exceed 1");
  }
  const auto read_k = [&](const char* name, std::optional<double>& slot) {
    if (const Value* k = v.find(name)) {
      slot = k->as_number();
      if (*slot <= 0.0)
        throw ValidationError(std::string("gains.") + name +
                              " must be positive");
    }
  };
  read_k("k1", gains.k1);
  read_k("k2", gains.k2);
  read_k("k3", gains.k3);
  read_k("k4", gains.k4);
  if (!gains.automatic && !gains.k1)
    throw ValidationError("manual gains need at least k1");
}

void parse_sim_table(const Value& v, ScenarioConfig& cfg) {
  reject_unknown_keys(v, {"dt", "t_end", "record_stride", "tol"}, "[sim]");
  if (const Value* dt = v.find("dt")) {
    cfg.dt = dt->as_number();
    if (*cfg.dt <= 0.0) throw ValidationError("sim.dt must be positive");
  }
  if (const Value* t_end = v.find("t_end")) {
    cfg.t_end = t_end->as_number();
    if (cfg.t_end <= 0.0) throw ValidationError("sim.t_end must be positive");
  }
  if (const Value* stride = v.find("record_stride")) {
    cfg.record_stride = stride->as_int();
    if (*cfg.record_stride < 1)
      throw ValidationError("sim.record_stride must be >= 1");
  }
  if (const Value* tol = v.find("tol")) {
    cfg.tol = tol->as_number();
    if (cfg.tol <= 0.0) throw ValidationError("sim.tol must be positive");
  }
}

void parse_outputs_table(const Value& v, OutputSpec& out) {
  reject_unknown_keys(
      v, {"csv", "positions_svg", "velocities_svg", "report"}, "[outputs]");
  const auto read = [&](const char* name, std::optional<std::string>& slot) {
    if (const Value* p = v.find(name)) {
      slot = p->as_string();
      if (slot->empty())
        throw ValidationError(std::string("outputs.") + name +
                              " must not be empty");
    }
  };
  read("csv", out.csv);
  read("positions_svg", out.positions_svg);
  read("velocities_svg", out.velocities_svg);
  read("report", out.report);
}

int game_dimension(const ScenarioConfig& cfg) {
  if (cfg.builtin_game) return 10;  // connectivity5
  int total = 0;
  for (int d : *cfg.game_action_dims) total += d;
  return total;
}

int game_players(const ScenarioConfig& cfg) {
  if (cfg.builtin_game) return 5;
  return static_cast<int>(cfg.game_action_dims->size());
}

}  // namespace

ScenarioConfig parse_config(const std::string& text,
                            const std::string& name_hint) {
  const Value root = config::parse(text);
  ScenarioConfig cfg;
  cfg.name = name_hint;

  const Value::Table& table = root.as_table();
  for (const auto& [key, value] : table) {
    if (key == "name" || key == "game" || key == "strategy" ||
        key == "edges" || key == "x0" || key == "gains" || key == "sim" ||
        key == "outputs")
      continue;
    throw ValidationError("unknown key '" + key + "'");
  }

  if (const Value* name = root.find("name")) cfg.name = name->as_string();

  const Value* game = root.find("game");
  if (!game) throw ValidationError("config needs a 'game' entry");
  if (game->is_string()) {
    const std::string& g = game->as_string();
    if (g != "connectivity5")
      throw ValidationError("unknown builtin game '" + g + "'");
    cfg.builtin_game = g;
  } else if (game->is_table()) {
    parse_game_table(*game, cfg);
    parse_player_tables(*game, game_players(cfg), game_dimension(cfg),
                        *cfg.game_costs);
  } else {
    throw ValidationError("'game' must be a builtin name or a [game] table");
  }

  if (const Value* strat = root.find("strategy")) {
    const auto kind = strategy_kind_from_string(strat->as_string());
    if (!kind)
      throw ValidationError("strategy must be one of observer, filter, "
                            "dist-observer, dist-filter");
    cfg.strategy = *kind;
  }

  if (const Value* edges = root.find("edges")) {
    std::vector<std::pair<int, int>> parsed;
    const int n = game_players(cfg);
    for (const auto& e : edges->as_array()) {
      const auto& pair = e.as_array();
      if (pair.size() != 2)
        throw ValidationError("each edge must be a pair of player indices");
      const int a = pair[0].as_int();
      const int b = pair[1].as_int();
      if (a < 1 || b < 1 || a > n || b > n)
        throw ValidationError("edge endpoints are 1-based player indices");
      parsed.emplace_back(a - 1, b - 1);
    }
    cfg.edges = std::move(parsed);
  }

  if (const Value* x0 = root.find("x0")) {
    cfg.x0 = number_array(*x0, "x0");
    if (cfg.x0->size() != game_dimension(cfg))
      throw ValidationError("x0 must have length D = " +
                            std::to_string(game_dimension(cfg)));
  }

  if (const Value* gains = root.find("gains"))
    parse_gains_table(*gains, cfg.gains);
  if (const Value* sim = root.find("sim")) parse_sim_table(*sim, cfg);
  if (const Value* outputs = root.find("outputs"))
    parse_outputs_table(*outputs, cfg.outputs);

  const bool distributed = cfg.strategy == StrategyKind::dist_observer ||
                           cfg.strategy == StrategyKind::dist_filter;
  if (distributed && !cfg.edges)
    throw ValidationError("strategy " + to_string(cfg.strategy) +
                          " needs an 'edges' list");

  if (!cfg.gains.automatic) {
    const auto need = [&](const std::optional<double>& k, const char* name) {
      if (!k)
        throw ValidationError(std::string("manual gains for ") +
                              to_string(cfg.strategy) + " need " + name);
    };
    need(cfg.gains.k1, "k1");
    need(cfg.gains.k2, "k2");
    if (cfg.strategy != StrategyKind::filter) need(cfg.gains.k3, "k3");
    if (cfg.strategy == StrategyKind::dist_observer)
      need(cfg.gains.k4, "k4");
  }
  return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string stem = path;
  if (const auto slash = stem.find_last_of("/\\"); slash != std::string::npos)
    stem = stem.substr(slash + 1);
  if (const auto dot = stem.find_last_of('.'); dot != std::string::npos)
    stem = stem.substr(0, dot);
  return parse_config(buf.str(), stem);
}

QuadraticGame make_game(const ScenarioConfig& cfg) {
  if (cfg.builtin_game) return QuadraticGame::connectivity_five();
  if (!cfg.game_action_dims || !cfg.game_costs)
    throw ValidationError("config carries no game definition");
  return QuadraticGame(*cfg.game_action_dims, *cfg.game_costs);
}

}  // namespace nashseek
