#include "mb/registry.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "mb/bipartite.h"
#include "mb/catalogue.h"
#include "mb/combinators.h"
#include "mb/oracle.h"
#include "mb/tree.h"

namespace mb {

namespace {

std::string Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Splits on commas outside parentheses.
std::vector<std::string> SplitTop(std::string_view s, const std::string& field) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')' && --depth < 0) throw ConfigError(field, "unbalanced ')'");
    if (s[i] == ',' && depth == 0) {
      out.push_back(Trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) throw ConfigError(field, "unbalanced '('");
  out.push_back(Trim(s.substr(start)));
  return out;
}

bool IsNameChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
}

std::uint64_t ParseCount(std::string_view text, const std::string& field) {
  std::string t = Trim(text);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(field, "expected a non-negative integer, got \"" + t + "\"");
  }
  return v;
}

bool ParseBool(std::string_view text, const std::string& field) {
  std::string t = Trim(text);
  if (t == "1" || t == "true" || t == "yes") return true;
  if (t == "0" || t == "false" || t == "no") return false;
  throw ConfigError(field, "expected true or false, got \"" + t + "\"");
}

// Reads an integer parameter, rejecting unknown keys along the way.
class Params {
 public:
  Params(const StrategySpec& spec, const std::string& field,
         std::vector<std::string> allowed)
      : spec_(spec), field_(field) {
    for (const auto& [k, v] : spec.params) {
      if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
        throw ConfigError(field, spec.name + " has no parameter '" + k + "'");
      }
    }
  }
  std::optional<std::uint64_t> Count(const std::string& key) const {
    auto it = spec_.params.find(key);
    if (it == spec_.params.end()) return std::nullopt;
    return ParseCount(it->second, field_ + " " + spec_.name + "." + key);
  }
  std::optional<std::string> Text(const std::string& key) const {
    auto it = spec_.params.find(key);
    if (it == spec_.params.end()) return std::nullopt;
    return it->second;
  }

 private:
  const StrategySpec& spec_;
  const std::string& field_;
};

void ExpectShape(const StrategySpec& spec, const std::string& field,
                 std::size_t nested, std::size_t positional) {
  if (spec.nested.size() > nested || spec.positional.size() > positional) {
    throw ConfigError(field, "too many arguments to " + spec.name);
  }
}

}  // namespace

std::string StrategySpec::ToString() const {
  std::vector<std::string> args;
  for (const StrategySpec& n : nested) args.push_back(n.ToString());
  for (const std::string& p : positional) args.push_back(p);
  for (const auto& [k, v] : params) args.push_back(k + "=" + v);
  if (args.empty()) return name;
  std::string out = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    out += (i ? "," : "") + args[i];
  }
  return out + ")";
}

StrategySpec ParseStrategySpec(std::string_view text, const std::string& field) {
  std::string t = Trim(text);
  StrategySpec spec;
  std::size_t i = 0;
  while (i < t.size() && IsNameChar(t[i])) ++i;
  spec.name = t.substr(0, i);
  if (spec.name.empty()) {
    throw ConfigError(field, "expected a strategy name in \"" + t + "\"");
  }
  if (i == t.size()) return spec;
  if (t[i] != '(' || t.back() != ')') {
    throw ConfigError(field, "malformed strategy spec \"" + t + "\"");
  }
  std::string inner = t.substr(i + 1, t.size() - i - 2);
  if (Trim(inner).empty()) return spec;
  for (const std::string& arg : SplitTop(inner, field)) {
    if (arg.empty()) throw ConfigError(field, "empty argument in \"" + t + "\"");
    std::size_t eq = arg.find('=');
    std::size_t paren = arg.find('(');
    if (eq != std::string::npos && (paren == std::string::npos || eq < paren)) {
      std::string key = Trim(arg.substr(0, eq));
      if (key.empty() || !std::all_of(key.begin(), key.end(), IsNameChar)) {
        throw ConfigError(field, "bad parameter name in \"" + arg + "\"");
      }
      if (!spec.params.emplace(key, Trim(arg.substr(eq + 1))).second) {
        throw ConfigError(field, "repeated parameter '" + key + "'");
      }
    } else if (std::isdigit(static_cast<unsigned char>(arg[0]))) {
      spec.positional.push_back(arg);
    } else {
      spec.nested.push_back(ParseStrategySpec(arg, field));
    }
  }
  return spec;
}

std::vector<std::string> StrategyNames() {
  return {"fallback",  "random",   "greedy-blocker", "goal-seeker",
          "null",      "minimax",  "tree",           "bipartite",
          "catalogue", "steal",    "restrict",       "human"};
}

std::unique_ptr<Strategy> MakeStrategy(const StrategySpec& spec,
                                       const GameConfig& config,
                                       const std::string& field) {
  const std::string& n = spec.name;
  if (n == "fallback") {
    ExpectShape(spec, field, 0, 0);
    Params(spec, field, {});
    return std::make_unique<FallbackStrategy>();
  }
  if (n == "random") {
    ExpectShape(spec, field, 0, 1);
    Params p(spec, field, {"seed"});
    std::optional<std::uint64_t> seed = p.Count("seed");
    if (!spec.positional.empty()) {
      if (seed) throw ConfigError(field, "random takes one seed");
      seed = ParseCount(spec.positional[0], field + " random.seed");
    }
    return std::make_unique<RandomAdversary>(seed);
  }
  if (n == "greedy-blocker" || n == "goal-seeker" || n == "minimax") {
    ExpectShape(spec, field, 0, 0);
    Params(spec, field, {});
    if (n == "greedy-blocker") return std::make_unique<GreedyBlocker>(config.goal);
    if (n == "goal-seeker") return std::make_unique<GoalSeeker>(config.goal);
    return std::make_unique<MinimaxStrategy>(config.goal);
  }
  if (n == "null") {
    ExpectShape(spec, field, 0, 0);
    Params p(spec, field, {"offset"});
    return std::make_unique<NullAdversary>(
        p.Count("offset").value_or(NullAdversary::kDefaultOffset));
  }
  if (n == "tree") {
    ExpectShape(spec, field, 0, 0);
    Params p(spec, field, {"k", "limit", "audit"});
    TreeOptions o;
    o.k = static_cast<int>(p.Count("k").value_or(config.options.bias));
    o.limit_multiplicity = static_cast<int>(p.Count("limit").value_or(0));
    if (auto a = p.Text("audit")) o.audit = ParseBool(*a, field + " tree.audit");
    if (o.k < 1) throw ConfigError(field, "tree needs k >= 1");
    return std::make_unique<TreeMakerStrategy>(o);
  }
  if (n == "bipartite") {
    ExpectShape(spec, field, 0, 0);
    Params p(spec, field, {"p"});
    std::uint64_t len = p.Count("p").value_or(8);
    if (len == 0) throw ConfigError(field, "bipartite needs p >= 1");
    return std::make_unique<BipartiteMakerStrategy>(len);
  }
  if (n == "catalogue") {
    ExpectShape(spec, field, 0, 0);
    Params p(spec, field, {"k", "m", "file"});
    try {
      if (auto file = p.Text("file")) {
        std::ifstream in(*file);
        if (!in) throw ConfigError(field, "cannot open catalogue " + *file);
        auto j = nlohmann::ordered_json::parse(in, nullptr, false);
        if (j.is_discarded()) throw ConfigError(field, *file + " is not JSON");
        return std::make_unique<BreakerCatalogueStrategy>(
            Catalogue::FromJson(j), "catalogue(file=" + *file + ")");
      }
      std::uint64_t k = p.Count("k").value_or(2);
      std::uint64_t m = p.Count("m").value_or(6);
      return std::make_unique<BreakerCatalogueStrategy>(
          Catalogue::AllSubsets(k, m),
          "catalogue(k=" + std::to_string(k) + ",m=" + std::to_string(m) + ")");
    } catch (const CatalogueError& e) {
      throw ConfigError(field, e.what());
    }
  }
  if (n == "steal") {
    if (spec.nested.size() != 1 || !spec.params.empty() ||
        !spec.positional.empty()) {
      throw ConfigError(field, "steal takes exactly one strategy");
    }
    return std::make_unique<StealStrategy>(
        MakeStrategy(spec.nested[0], config, field));
  }
  if (n == "restrict") {
    ExpectShape(spec, field, 2, 0);
    if (spec.nested.empty()) {
      throw ConfigError(field, "restrict takes a strategy and an embedding");
    }
    std::string name = spec.nested.size() > 1
                           ? spec.nested[1].name
                           : (config.board.IsBipartite() ? "canonical" : "identity");
    if (spec.nested.size() > 1 && (!spec.nested[1].nested.empty() ||
                                   !spec.nested[1].params.empty())) {
      throw ConfigError(field, "embedding must be identity or canonical");
    }
    try {
      Embedding e = Embedding::Parse(name, config.board);
      GameConfig inner = config;
      inner.board = e.target();
      return std::make_unique<RestrictStrategy>(
          MakeStrategy(spec.nested[0], inner, field), std::move(e));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw ConfigError(field, e.what());
    }
  }
  if (n == "human") {
    throw ConfigError(field, "human has no engine; use it with the session service");
  }
  std::string known;
  for (const std::string& s : StrategyNames()) known += (known.empty() ? "" : ", ") + s;
  throw ConfigError(field, "unknown strategy '" + n + "' (known: " + known + ")");
}

std::unique_ptr<Strategy> MakeStrategy(std::string_view spec,
                                       const GameConfig& config,
                                       const std::string& field) {
  return MakeStrategy(ParseStrategySpec(spec, field), config, field);
}

Board ParseBoard(std::string_view text, std::string_view horizon) {
  std::string t = Trim(text);
  if (t.size() < 2 || (t[0] != 'K' && t[0] != 'k')) {
    throw ConfigError("board", "expected K<n>, K<m>,<n>, Kw or Kw,w, got \"" +
                                   t + "\"");
  }
  std::string rest = t.substr(1);
  auto lazy_horizon = [&] {
    std::optional<Ordinal> h = Ordinal::TryParse(horizon);
    if (!h) {
      throw ConfigError("horizon", "invalid ordinal literal \"" +
                                       std::string(horizon) + "\"");
    }
    return *h;
  };
  try {
    std::size_t comma = rest.find(',');
    if (comma == std::string::npos) {
      if (rest == "w") return Board::CompleteLazy(lazy_horizon());
      return Board::CompleteFinite(ParseCount(rest, "board"));
    }
    std::string a = rest.substr(0, comma);
    std::string b = rest.substr(comma + 1);
    if (a == "w" && b == "w") {
      Ordinal h = lazy_horizon();
      return Board::BipartiteLazy(h, h);
    }
    return Board::BipartiteFinite(ParseCount(a, "board"), ParseCount(b, "board"));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError("board", e.what());
  }
}

std::map<std::string, std::string> ParseConfigText(std::string_view text,
                                                   const std::string& origin) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (Trim(line).empty()) continue;
    std::size_t eq = line.find('=');
    std::string where = origin + ":" + std::to_string(number);
    if (eq == std::string::npos) throw ConfigError(where, "expected key = value");
    std::string key = Trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(where, "missing key");
    out[key] = Trim(line.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> ParseConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseConfigText(ss.str(), path);
}

void ApplyConfig(const std::map<std::string, std::string>& values,
                 GameConfig& config) {
  static const std::vector<std::string> kKeys = {
      "board", "horizon", "goal", "bias", "breaker-first", "seed",
      "budget", "schedule", "mode", "maker", "breaker"};
  for (const auto& [key, value] : values) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw ConfigError(key, "unknown configuration key");
    }
  }
  auto get = [&](const std::string& key) -> std::optional<std::string> {
    auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    return it->second;
  };
  std::string horizon = get("horizon").value_or("w");
  if (auto b = get("board")) {
    config.board = ParseBoard(*b, horizon);
  } else if (get("horizon")) {
    // Horizon alone re-bounds the current lazy board.
    config.board = ParseBoard(config.board.ShortName(), horizon);
  }
  if (auto g = get("goal")) {
    try {
      config.goal = Goal::Parse(*g);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("goal", e.what());
    }
  }
  if (auto b = get("bias")) {
    std::uint64_t k = ParseCount(*b, "bias");
    if (k < 1) throw ConfigError("bias", "must be at least 1");
    config.options.bias = static_cast<int>(k);
  }
  if (auto b = get("breaker-first")) {
    config.options.breaker_first = ParseBool(*b, "breaker-first");
  }
  if (auto s = get("seed")) config.seed = ParseCount(*s, "seed");
  if (auto b = get("budget")) config.budget = ParseCount(*b, "budget");
  if (auto s = get("schedule")) {
    try {
      config.options.schedule = TurnSchedule::Parse(*s);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("schedule", e.what());
    }
  }
  if (auto m = get("mode")) {
    if (*m == "strict") {
      config.mode = RefereeMode::kStrict;
    } else if (*m == "tournament") {
      config.mode = RefereeMode::kTournament;
    } else {
      throw ConfigError("mode", "expected strict or tournament, got \"" + *m + "\"");
    }
  }
  if (auto m = get("maker")) {
    ParseStrategySpec(*m, "maker");
    config.maker = *m;
  }
  if (auto b = get("breaker")) {
    ParseStrategySpec(*b, "breaker");
    config.breaker = *b;
  }
}

}  // namespace mb
