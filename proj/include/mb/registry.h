// Strategy specs ("tree(k=2)", "restrict(catalogue(k=2,m=6),canonical)") and
// the flat key = value configuration shared by the CLI and the service.
#ifndef MB_REGISTRY_H_
#define MB_REGISTRY_H_

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mb/referee.h"
#include "mb/strategy.h"

namespace mb {

// A bad configuration value; field() names the key or flag at fault.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// name, name(arg, ...), where each arg is key=value or a nested spec.
struct StrategySpec {
  std::string name;
  std::vector<StrategySpec> nested;
  std::map<std::string, std::string> params;
  std::vector<std::string> positional;  // bare values such as random(5)

  std::string ToString() const;
};

// Throws ConfigError(field, ...) on syntax errors.
StrategySpec ParseStrategySpec(std::string_view text,
                               const std::string& field = "strategy");

// Builds the strategy a spec names for a game described by `config` (the
// goal and board feed greedy-blocker, goal-seeker, minimax and restrict).
// "human" has no engine and is rejected here.
std::unique_ptr<Strategy> MakeStrategy(const StrategySpec& spec,
                                       const GameConfig& config,
                                       const std::string& field = "strategy");
std::unique_ptr<Strategy> MakeStrategy(std::string_view spec,
                                       const GameConfig& config,
                                       const std::string& field = "strategy");

// Names accepted by MakeStrategy, for help text.
std::vector<std::string> StrategyNames();

// "K5", "K3,4", "Kw", "Kw,w"; lazy boards take `horizon` (an ordinal
// literal) for every infinite side.
Board ParseBoard(std::string_view text, std::string_view horizon = "w");

// key = value lines; '#' starts a comment; blank lines are skipped. Throws
// ConfigError naming "<path>:<line>".
std::map<std::string, std::string> ParseConfigText(std::string_view text,
                                                   const std::string& origin);
std::map<std::string, std::string> ParseConfigFile(const std::string& path);

// Applies recognised keys (board, horizon, goal, bias, breaker-first, seed,
// budget, schedule, mode, maker, breaker) to `config`; unknown keys throw.
void ApplyConfig(const std::map<std::string, std::string>& values,
                 GameConfig& config);

}  // namespace mb

#endif  // MB_REGISTRY_H_
