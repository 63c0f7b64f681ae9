#include "mb/harness.h"

#include <algorithm>
#include <future>
#include <sstream>

#include "mb/registry.h"

namespace mb {

GameRecord RunConfigured(GameConfig config, const RefereeHooks& hooks) {
  std::unique_ptr<Strategy> maker = MakeStrategy(config.maker, config, "maker");
  std::unique_ptr<Strategy> breaker =
      MakeStrategy(config.breaker, config, "breaker");
  config.maker = maker->Name();
  config.breaker = breaker->Name();
  return RunGame(config, *maker, *breaker, hooks);
}

Summary Summarize(const Transcript& t) {
  Summary s;
  s.result = ResultName(t.result);
  if (t.forfeit) s.forfeit = *t.forfeit == Player::kMaker ? "M" : "B";
  s.moves = t.moves.size();
  for (const Move& m : t.moves) {
    ++(m.player == Player::kMaker ? s.maker_moves : s.breaker_moves);
  }
  if (t.witness) {
    s.witness_size = t.witness->first.size() + t.witness->second.size();
    s.witness = WitnessToJson(t.config.goal, *t.witness).dump();
  }
  const Json& f = t.footer;
  if (f.contains("longestChain")) {
    s.longest_chain = f["longestChain"].get<std::uint64_t>();
  }
  if (f.contains("treePhases")) s.phases = f["treePhases"].get<std::uint64_t>();
  if (f.contains("phases") && f["phases"].is_array()) {
    s.phases = f["phases"].size();
    if (!f["phases"].empty()) {
      const Json& pool = f["phases"].back()["pool"];
      if (pool["bound"].is_number()) {
        std::uint64_t bound = pool["bound"].get<std::uint64_t>();
        std::uint64_t inside = 0;
        for (const Json& u : pool["excluded"]) {
          if (u.get<std::uint64_t>() < bound) ++inside;
        }
        s.pool_size = std::to_string(bound - inside);
      } else {
        s.pool_size = "w";
      }
    }
  }
  if (f.contains("fires") && f["fires"].is_array()) {
    std::uint64_t blocks = 0;
    for (const Json& fire : f["fires"]) blocks += fire["delta"].is_null() ? 0 : 1;
    s.blocks = blocks;
  }
  return s;
}

std::string SummaryText(const Transcript& t) {
  Summary s = Summarize(t);
  std::ostringstream out;
  out << "board: " << t.config.board.ShortName() << "\n";
  out << "goal: " << t.config.goal.ToString() << "\n";
  out << "maker: " << t.config.maker << "\n";
  out << "breaker: " << t.config.breaker << "\n";
  out << "result: " << s.result;
  if (s.forfeit) out << " (forfeit by " << *s.forfeit << ")";
  out << "\n";
  if (!s.witness.empty()) out << "witness: " << s.witness << "\n";
  out << "moves: " << s.moves << " (maker " << s.maker_moves << ", breaker "
      << s.breaker_moves << ")\n";
  if (s.longest_chain) out << "longest chain: " << *s.longest_chain << "\n";
  if (s.phases) out << "phases: " << *s.phases << "\n";
  if (s.pool_size) out << "pool size: " << *s.pool_size << "\n";
  if (s.blocks) out << "catalogue blocks: " << *s.blocks << "\n";
  return out.str();
}

namespace {

std::string Line(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

void CheckResult(const Transcript& t, const GameState& state,
                 VerifyReport& report) {
  std::size_t final_line = t.moves.size() + 2;
  if (t.witness &&
      !VerifyWitness(state, Player::kMaker, t.config.goal, *t.witness)) {
    report.violations.push_back(
        Line(final_line, "witness is not a Maker-owned " + t.config.goal.ToString()));
  }
  if (t.forfeit) return;
  std::size_t maker_moves = state.ClaimCount(Player::kMaker);
  switch (t.result) {
    case GameResult::kMaker:
      if (!t.witness) {
        report.violations.push_back(Line(final_line, "maker result without a witness"));
      }
      break;
    case GameResult::kBreaker:
      if (!state.Exhausted()) {
        report.violations.push_back(
            Line(final_line, "breaker result but the board is not exhausted"));
      }
      break;
    case GameResult::kBudget:
      if (maker_moves < t.config.budget || !state.AtTurnBoundary()) {
        report.violations.push_back(
            Line(final_line, "budget result before the budget was spent"));
      }
      break;
  }
}

std::unique_ptr<Strategy> TryRebuild(const std::string& name,
                                     const GameConfig& config) {
  try {
    return MakeStrategy(name, config);
  } catch (const ConfigError&) {
    return nullptr;
  }
}

}  // namespace

VerifyReport VerifyTranscript(const Transcript& t) {
  VerifyReport report;
  GameState state(t.config.board, t.config.options);
  try {
    state = Replay(t);
  } catch (const TranscriptError& e) {
    report.violations.push_back(e.what());
    return report;
  }
  report.moves_checked = t.moves.size();
  CheckResult(t, state, report);

  std::unique_ptr<Strategy> maker = TryRebuild(t.config.maker, t.config);
  std::unique_ptr<Strategy> breaker = TryRebuild(t.config.breaker, t.config);
  report.maker_resimulated = maker != nullptr;
  report.breaker_resimulated = breaker != nullptr;
  if (!maker && !breaker) return report;

  GameState sim(t.config.board, t.config.options);
  Rng maker_rng = MakerRng(t.config.seed);
  Rng breaker_rng = BreakerRng(t.config.seed);
  for (std::size_t i = 0; i < t.moves.size(); ++i) {
    const Move& m = t.moves[i];
    std::size_t line = i + 2;
    Strategy* s = m.player == Player::kMaker ? maker.get() : breaker.get();
    Rng& rng = m.player == Player::kMaker ? maker_rng : breaker_rng;
    if (s) {
      try {
        Edge e = s->NextMove(sim, m.player, rng);
        if (e != m.edge) {
          report.violations.push_back(
              Line(line, s->Name() + " plays " + e.ToString() +
                             " here, the transcript has " + m.edge.ToString()));
          return report;
        }
      } catch (const std::exception& e) {
        report.violations.push_back(
            Line(line, s->Name() + " failed to move: " + e.what()));
        return report;
      }
    }
    sim.Claim(m.player, m.edge);
    // Strategy invariants once per round and at the end; some are linear in
    // the claim count.
    bool last = i + 1 == t.moves.size();
    if (m.player != Player::kMaker && !last) continue;
    for (Strategy* check : {maker.get(), breaker.get()}) {
      if (!check) continue;
      for (const std::string& p : check->CheckInvariants(sim)) {
        report.violations.push_back(Line(line, check->Name() + ": " + p));
      }
    }
    if (!report.violations.empty()) return report;
  }
  if (maker && breaker) {
    Json footer = Json::object();
    maker->Footer(footer);
    breaker->Footer(footer);
    if (footer != t.footer) {
      report.violations.push_back(Line(t.moves.size() + 2,
                                       "footer differs from the re-simulation"));
    }
  }
  return report;
}

namespace {

void FillPhaseLength(StrategySpec& spec, std::uint64_t p) {
  if (spec.name == "bipartite" && !spec.params.count("p")) {
    spec.params["p"] = std::to_string(p);
  }
  for (StrategySpec& n : spec.nested) FillPhaseLength(n, p);
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::vector<SweepRow> RunSweep(const SweepGrid& grid) {
  std::vector<SweepRow> rows;
  for (const std::string& maker : grid.makers) {
    for (const std::string& breaker : grid.breakers) {
      for (std::uint64_t seed : grid.seeds) {
        for (std::uint64_t budget : grid.budgets) {
          for (std::uint64_t p : grid.phase_lengths) {
            for (std::uint64_t k : grid.biases) {
              SweepRow row;
              row.index = rows.size();
              row.p = p;
              row.config = grid.base;
              row.config.seed = seed;
              row.config.budget = budget;
              if (k < 1) throw ConfigError("k", "bias must be at least 1");
              row.config.options.bias = static_cast<int>(k);
              StrategySpec m = ParseStrategySpec(maker, "maker");
              StrategySpec b = ParseStrategySpec(breaker, "breaker");
              FillPhaseLength(m, p);
              FillPhaseLength(b, p);
              row.config.maker = m.ToString();
              row.config.breaker = b.ToString();
              // Fail on bad specs before any game runs.
              MakeStrategy(m, row.config, "maker");
              MakeStrategy(b, row.config, "breaker");
              rows.push_back(std::move(row));
            }
          }
        }
      }
    }
  }
  auto run = [&](std::size_t i) {
    rows[i].transcript = RunConfigured(rows[i].config).transcript;
    rows[i].config = rows[i].transcript.config;
  };
  unsigned jobs = std::max(1u, grid.jobs);
  for (std::size_t start = 0; start < rows.size(); start += jobs) {
    std::vector<std::future<void>> batch;
    for (std::size_t i = start; i < std::min(rows.size(), start + jobs); ++i) {
      batch.push_back(std::async(jobs > 1 ? std::launch::async
                                          : std::launch::deferred,
                                 run, i));
    }
    for (auto& f : batch) f.get();
  }
  return rows;
}

std::string SweepCsvRow(const SweepRow& row) {
  Summary s = Summarize(row.transcript);
  auto opt = [](const auto& v) -> std::string {
    if (!v) return "";
    if constexpr (std::is_same_v<std::decay_t<decltype(*v)>, std::string>) {
      return *v;
    } else {
      return std::to_string(*v);
    }
  };
  const GameConfig& c = row.config;
  std::vector<std::string> fields = {
      std::to_string(row.index), c.maker, c.breaker, c.board.ShortName(),
      c.goal.ToString(), std::to_string(c.seed), std::to_string(c.budget),
      std::to_string(row.p), std::to_string(c.options.bias), s.result,
      std::to_string(s.witness_size), opt(s.longest_chain), opt(s.phases),
      opt(s.pool_size)};
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    out += (i ? "," : "") + CsvField(fields[i]);
  }
  return out;
}

std::string SweepCsv(const std::vector<SweepRow>& rows) {
  std::string out = std::string(kSweepHeader) + "\n";
  for (const SweepRow& r : rows) out += SweepCsvRow(r) + "\n";
  return out;
}

std::vector<std::uint64_t> ParseNumberList(const std::string& text,
                                           const std::string& field) {
  std::vector<std::uint64_t> out;
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  }
  if (t.empty()) return out;
  auto number = [&](const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit)) {
      throw ConfigError(field, "expected a number, got \"" + s + "\"");
    }
    return std::stoull(s);
  };
  std::stringstream ss(t);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(number(part));
      continue;
    }
    std::uint64_t lo = number(part.substr(0, dots));
    std::uint64_t hi = number(part.substr(dots + 2));
    if (hi < lo) throw ConfigError(field, "empty range " + part);
    for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

}  // namespace mb
