#include "mb/session.h"

#include <filesystem>

#include "mb/registry.h"
#include "mb/transcript.h"
#include "mb/tree.h"

namespace mb {

Json ServiceError::ToJson() const {
  Json j = {{"error", code_}, {"message", what()}};
  if (!field_.empty()) j["field"] = field_;
  return j;
}

struct SessionManager::Session {
  std::mutex mu;
  std::string id;
  GameConfig config;
  Player human = Player::kBreaker;
  std::unique_ptr<Strategy> engine;
  Rng engine_rng{0, 1};
  std::optional<GameState> state;
  std::optional<GameResult> result;
  std::optional<Witness> witness;
  std::optional<Player> forfeit;
  std::optional<std::uint64_t> budget;
  std::optional<std::ofstream> log;

  Player engine_role() const { return Opponent(human); }
  TreeMakerStrategy* tree() const {
    return dynamic_cast<TreeMakerStrategy*>(engine.get());
  }

  Transcript Record() const {
    Transcript t;
    t.config = config;
    t.moves = state->History();
    t.result = result.value_or(GameResult::kBudget);
    t.witness = witness;
    t.forfeit = forfeit;
    engine->Footer(t.footer);
    return t;
  }

  void LogLine(const Json& j) {
    if (log) *log << j.dump() << "\n" << std::flush;
  }

  // Applies a claim already known to be legal and settles the result.
  void Apply(Player p, const Edge& e) {
    state->Claim(p, e);
    LogLine(MoveToJson(state->History().back()));
    if (p == Player::kMaker) {
      if (auto w = GoalAfterMakerMove(*state, config.goal, e)) {
        witness = std::move(w);
        result = GameResult::kMaker;
      }
    }
    if (!result && state->Exhausted()) result = GameResult::kBreaker;
    if (!result && budget && state->ClaimCount(Player::kMaker) >= *budget &&
        state->AtTurnBoundary()) {
      result = GameResult::kBudget;
    }
    if (result) LogLine(FinalJson(Record()));
  }

  // Lets the engine move until it is the human's turn or the game ends.
  Json EngineTurn() {
    Json moves = Json::array();
    while (!result && state->ToMove() == engine_role()) {
      try {
        Edge e = engine->NextMove(*state, engine_role(), engine_rng);
        state->CheckClaim(engine_role(), e);
        Apply(engine_role(), e);
        moves.push_back(MoveToJson(state->History().back()));
      } catch (const std::exception&) {
        // An engine that cannot move loses, as in tournament play.
        forfeit = engine_role();
        result = engine_role() == Player::kMaker ? GameResult::kBreaker
                                                 : GameResult::kMaker;
        LogLine(FinalJson(Record()));
      }
    }
    return moves;
  }

  std::string Status() const { return result ? ResultName(*result) : "active"; }

  Json StateJson() const {
    Json j = Json::object();
    j["id"] = id;
    j["board"] = BoardToJson(config.board);
    j["goal"] = config.goal.ToString();
    j["bias"] = config.options.bias;
    j["breakerFirst"] = config.options.breaker_first;
    j["seed"] = config.seed;
    j["humanRole"] = human == Player::kMaker ? "M" : "B";
    j["engine"] = engine->Name();
    j["status"] = Status();
    j["toMove"] = result ? Json(nullptr)
                         : Json(state->ToMove() == Player::kMaker ? "M" : "B");
    j["step"] = state->History().size();
    if (witness) j["witness"] = WitnessToJson(config.goal, *witness);
    if (forfeit) j["forfeit"] = *forfeit == Player::kMaker ? "M" : "B";
    Json claims = Json::object();
    for (Player p : {Player::kMaker, Player::kBreaker}) {
      Json edges = Json::array();
      for (const Edge& e : state->Claims(p)) edges.push_back(EdgeToJson(e));
      claims[p == Player::kMaker ? "M" : "B"] = edges;
    }
    j["claims"] = claims;
    Json history = Json::array();
    for (const Move& m : state->History()) history.push_back(MoveToJson(m));
    j["history"] = history;
    Json footer = Json::object();
    engine->Footer(footer);
    if (footer.contains("phases")) j["phases"] = footer["phases"];
    if (TreeMakerStrategy* t = tree()) j["tree"] = t->SnapshotJson();
    return j;
  }
};

namespace {

std::string RequireString(const Json& body, const char* field) {
  if (!body.contains(field)) {
    throw ServiceError(400, "InvalidConfig", std::string("missing ") + field,
                       field);
  }
  if (!body[field].is_string()) {
    throw ServiceError(400, "InvalidConfig",
                       std::string(field) + " must be a string", field);
  }
  return body[field].get<std::string>();
}

std::uint64_t OptionalCount(const Json& body, const char* field,
                            std::uint64_t fallback) {
  if (!body.contains(field)) return fallback;
  if (!body[field].is_number_integer() || body[field].get<std::int64_t>() < 0) {
    throw ServiceError(400, "InvalidConfig",
                       std::string(field) + " must be a non-negative integer",
                       field);
  }
  return body[field].get<std::uint64_t>();
}

Player ParseRole(const std::string& text) {
  if (text == "Maker" || text == "maker" || text == "M") return Player::kMaker;
  if (text == "Breaker" || text == "breaker" || text == "B") {
    return Player::kBreaker;
  }
  throw ServiceError(400, "InvalidConfig",
                     "humanRole must be Maker or Breaker, got \"" + text + "\"",
                     "humanRole");
}

}  // namespace

SessionManager::SessionManager(std::optional<std::string> transcript_dir)
    : transcript_dir_(std::move(transcript_dir)) {
  if (transcript_dir_) std::filesystem::create_directories(*transcript_dir_);
}

SessionManager::~SessionManager() = default;

std::size_t SessionManager::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return sessions_.size();
}

std::shared_ptr<SessionManager::Session> SessionManager::Find(
    const std::string& id) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) {
    throw ServiceError(404, "UnknownSession", "no session " + id);
  }
  return it->second;
}

Json SessionManager::Create(const Json& body) {
  if (!body.is_object()) {
    throw ServiceError(400, "InvalidConfig", "body must be a JSON object");
  }
  auto s = std::make_shared<Session>();
  GameConfig& config = s->config;
  std::string horizon = "w";
  if (body.contains("horizon")) horizon = RequireString(body, "horizon");
  if (!body.contains("board")) {
    throw ServiceError(400, "InvalidConfig", "missing board", "board");
  }
  try {
    config.board = body["board"].is_string()
                       ? ParseBoard(body["board"].get<std::string>(), horizon)
                       : BoardFromJson(body["board"]);
  } catch (const ConfigError& e) {
    throw ServiceError(400, "InvalidConfig", e.what(), e.field());
  } catch (const std::exception& e) {
    throw ServiceError(400, "InvalidConfig", e.what(), "board");
  }
  std::string goal = RequireString(body, "goal");
  try {
    config.goal = Goal::Parse(goal);
  } catch (const std::exception& e) {
    throw ServiceError(400, "InvalidConfig", e.what(), "goal");
  }
  s->human = ParseRole(RequireString(body, "humanRole"));
  std::uint64_t bias = OptionalCount(body, "bias", 1);
  if (bias < 1) {
    throw ServiceError(400, "InvalidConfig", "bias must be at least 1", "bias");
  }
  config.options.bias = static_cast<int>(bias);
  if (body.contains("breakerFirst")) {
    if (!body["breakerFirst"].is_boolean()) {
      throw ServiceError(400, "InvalidConfig", "breakerFirst must be a boolean",
                         "breakerFirst");
    }
    config.options.breaker_first = body["breakerFirst"].get<bool>();
  }
  config.seed = OptionalCount(body, "seed", 0);
  if (body.contains("budget")) {
    s->budget = OptionalCount(body, "budget", 0);
    config.budget = *s->budget;
  }
  std::string engine = RequireString(body, "engine");
  try {
    s->engine = MakeStrategy(engine, config, "engine");
  } catch (const ConfigError& e) {
    throw ServiceError(400, "InvalidConfig", e.what(), e.field());
  } catch (const std::exception& e) {
    throw ServiceError(400, "InvalidConfig", e.what(), "engine");
  }
  if (s->human == Player::kMaker) {
    config.maker = "human";
    config.breaker = s->engine->Name();
    s->engine_rng = BreakerRng(config.seed);
  } else {
    config.maker = s->engine->Name();
    config.breaker = "human";
    s->engine_rng = MakerRng(config.seed);
  }
  s->state.emplace(config.board, config.options);

  {
    std::lock_guard<std::mutex> lock(mu_);
    s->id = std::to_string(next_id_++);
    sessions_[s->id] = s;
  }
  std::lock_guard<std::mutex> lock(s->mu);
  if (transcript_dir_) {
    s->log.emplace(*transcript_dir_ + "/session-" + s->id + ".jsonl");
    s->LogLine(HeaderJson(s->Record()));
  }
  Json moves = s->EngineTurn();
  return Json{{"id", s->id}, {"engineMoves", moves}, {"state", s->StateJson()}};
}

Json SessionManager::Get(const std::string& id) {
  std::shared_ptr<Session> s = Find(id);
  std::lock_guard<std::mutex> lock(s->mu);
  return s->StateJson();
}

Json SessionManager::SubmitMove(const std::string& id, const Json& body) {
  std::shared_ptr<Session> s = Find(id);
  std::lock_guard<std::mutex> lock(s->mu);
  if (!body.is_object() || !body.contains("edge")) {
    throw ServiceError(400, "BadMove", "body must carry an edge", "edge");
  }
  Edge edge = Edge::Plain(0, 1);
  try {
    edge = EdgeFromJson(body["edge"]);
  } catch (const std::exception& e) {
    throw ServiceError(400, "BadMove", e.what(), "edge");
  }
  if (s->result) {
    throw ServiceError(409, "IllegalMove", "the game is over");
  }
  if (s->state->ToMove() != s->human) {
    throw ServiceError(409, "IllegalMove", "it is not your turn");
  }
  try {
    s->state->CheckClaim(s->human, edge);
  } catch (const std::exception& e) {
    throw ServiceError(409, "IllegalMove", e.what());
  }
  std::size_t tree_before = s->tree() ? s->tree()->tree().size() : 0;
  s->Apply(s->human, edge);
  Json reply = Json::object();
  reply["accepted"] = MoveToJson(s->state->History().back());
  reply["engineMoves"] = s->EngineTurn();
  reply["status"] = s->Status();
  if (s->witness) reply["witness"] = WitnessToJson(s->config.goal, *s->witness);
  if (s->forfeit) reply["forfeit"] = *s->forfeit == Player::kMaker ? "M" : "B";
  if (TreeMakerStrategy* t = s->tree()) {
    t->Observe(*s->state);
    Json nodes = t->tree().ToJson()["nodes"];
    Json added = Json::array();
    for (std::size_t i = tree_before; i < nodes.size(); ++i) {
      added.push_back(nodes[i]);
    }
    reply["treeDelta"] = Json{{"added", added}};
    reply["hints"] = t->HintsJson();
  }
  return reply;
}

Json SessionManager::Tree(const std::string& id) {
  std::shared_ptr<Session> s = Find(id);
  std::lock_guard<std::mutex> lock(s->mu);
  if (s->config.board.IsBipartite()) {
    throw ServiceError(409, "NotApplicable",
                       "bipartite games have no tree; see phases in the state");
  }
  TreeMakerStrategy* t = s->tree();
  if (!t) {
    throw ServiceError(409, "NotApplicable", "the engine keeps no tree");
  }
  t->Observe(*s->state);
  return t->SnapshotJson();
}

Json SessionManager::Hints(const std::string& id) {
  std::shared_ptr<Session> s = Find(id);
  std::lock_guard<std::mutex> lock(s->mu);
  TreeMakerStrategy* t = s->tree();
  if (s->config.board.IsBipartite() || !t) {
    throw ServiceError(409, "NotApplicable", "hints need a tree engine");
  }
  t->Observe(*s->state);
  return t->HintsJson();
}

}  // namespace mb
