#include "mb/transcript.h"

#include <fstream>
#include <sstream>

namespace mb {
namespace {

Ordinal OrdinalField(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw std::invalid_argument(std::string("missing ordinal field '") + key +
                                "'");
  }
  return Ordinal::Parse(j[key].get<std::string>());
}

std::uint64_t UintField(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_unsigned()) {
    throw std::invalid_argument(std::string("missing integer field '") + key +
                                "'");
  }
  return j[key].get<std::uint64_t>();
}

std::vector<Vertex> VerticesFromJson(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a vertex list");
  std::vector<Vertex> out;
  for (const Json& v : j) out.push_back(VertexFromJson(v));
  return out;
}

Json VerticesToJson(const std::vector<Vertex>& vs) {
  Json out = Json::array();
  for (const Vertex& v : vs) out.push_back(VertexToJson(v));
  return out;
}

}  // namespace

Json VertexToJson(const Vertex& v) {
  Json j = Json::object();
  if (v.side == Side::kLeft) j["side"] = "L";
  if (v.side == Side::kRight) j["side"] = "R";
  j["label"] = v.label.ToString();
  return j;
}

Vertex VertexFromJson(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("vertex must be an object");
  Side side = Side::kPlain;
  if (j.contains("side")) {
    std::string s = j["side"].is_string() ? j["side"].get<std::string>() : "";
    if (s == "L") {
      side = Side::kLeft;
    } else if (s == "R") {
      side = Side::kRight;
    } else {
      throw std::invalid_argument("vertex side must be \"L\" or \"R\"");
    }
  }
  return Vertex{side, OrdinalField(j, "label")};
}

Json EdgeToJson(const Edge& e) {
  return Json::array({VertexToJson(e.first()), VertexToJson(e.second())});
}

Edge EdgeFromJson(const Json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("edge must be a two-element array");
  }
  Vertex a = VertexFromJson(j[0]);
  Vertex b = VertexFromJson(j[1]);
  if (a == b) throw std::invalid_argument("edge endpoints must differ");
  return Edge(a, b);
}

Json BoardToJson(const Board& b) {
  Json j = Json::object();
  switch (b.kind()) {
    case BoardKind::kCompleteFinite:
      j["kind"] = "complete";
      j["n"] = b.Bound(Side::kPlain).FiniteValue();
      break;
    case BoardKind::kCompleteLazy:
      j["kind"] = "complete";
      j["horizon"] = b.Bound(Side::kPlain).ToString();
      break;
    case BoardKind::kBipartiteFinite:
      j["kind"] = "bipartite";
      j["m"] = b.Bound(Side::kLeft).FiniteValue();
      j["n"] = b.Bound(Side::kRight).FiniteValue();
      break;
    case BoardKind::kBipartiteLazy:
      j["kind"] = "bipartite";
      j["left"] = b.Bound(Side::kLeft).ToString();
      j["right"] = b.Bound(Side::kRight).ToString();
      break;
  }
  return j;
}

Board BoardFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw std::invalid_argument("board must be an object with a kind");
  }
  std::string kind = j["kind"].get<std::string>();
  if (kind == "complete") {
    if (j.contains("n")) return Board::CompleteFinite(UintField(j, "n"));
    return Board::CompleteLazy(OrdinalField(j, "horizon"));
  }
  if (kind == "bipartite") {
    if (j.contains("m")) {
      return Board::BipartiteFinite(UintField(j, "m"), UintField(j, "n"));
    }
    return Board::BipartiteLazy(OrdinalField(j, "left"),
                                OrdinalField(j, "right"));
  }
  throw std::invalid_argument("unknown board kind '" + kind + "'");
}

Json WitnessToJson(const Goal& goal, const Witness& w) {
  if (goal.kind == GoalKind::kBiclique) {
    return Json::array({VerticesToJson(w.first), VerticesToJson(w.second)});
  }
  return VerticesToJson(w.first);
}

Witness WitnessFromJson(const Goal& goal, const Json& j) {
  Witness w;
  if (goal.kind == GoalKind::kBiclique) {
    if (!j.is_array() || j.size() != 2) {
      throw std::invalid_argument("biclique witness must be [left, right]");
    }
    w.first = VerticesFromJson(j[0]);
    w.second = VerticesFromJson(j[1]);
  } else {
    w.first = VerticesFromJson(j);
  }
  return w;
}

Json MoveToJson(const Move& m) {
  Json j = Json::object();
  j["turn"] = m.turn.ToString();
  j["step"] = m.step;
  j["player"] = std::string(1, PlayerCode(m.player));
  j["edge"] = EdgeToJson(m.edge);
  return j;
}

Json HeaderJson(const Transcript& t) {
  const GameConfig& c = t.config;
  Json j = Json::object();
  j["version"] = 1;
  j["board"] = BoardToJson(c.board);
  j["goal"] = c.goal.ToString();
  j["bias"] = c.options.bias;
  j["breakerFirst"] = c.options.breaker_first;
  j["seed"] = c.seed;
  j["strategies"] = Json{{"maker", c.maker}, {"breaker", c.breaker}};
  j["budget"] = c.budget;
  j["schedule"] = c.options.schedule.ToString();
  j["mode"] = c.mode == RefereeMode::kStrict ? "strict" : "tournament";
  j["rng"] = std::string(Rng::kAlgorithm);
  return j;
}

Json FinalJson(const Transcript& t) {
  Json j = Json::object();
  j["result"] = ResultName(t.result);
  if (t.witness) j["witness"] = WitnessToJson(t.config.goal, *t.witness);
  if (t.forfeit) j["forfeit"] = std::string(1, PlayerCode(*t.forfeit));
  for (const auto& [key, value] : t.footer.items()) j[key] = value;
  return j;
}

std::string SerializeTranscript(const Transcript& t) {
  std::string out = HeaderJson(t).dump() + "\n";
  for (const Move& m : t.moves) out += MoveToJson(m).dump() + "\n";
  out += FinalJson(t).dump() + "\n";
  return out;
}

Transcript ParseTranscript(std::istream& in) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.size() < 2) {
    throw TranscriptError(lines.size() + 1, "transcript needs a header and a "
                                            "final line");
  }

  auto parse_line = [&](std::size_t index) {
    try {
      Json j = Json::parse(lines[index]);
      if (!j.is_object()) throw std::invalid_argument("expected an object");
      return j;
    } catch (const std::exception& e) {
      throw TranscriptError(index + 1, e.what());
    }
  };

  Transcript t;
  Json header = parse_line(0);
  try {
    if (!header.contains("version") || header["version"] != 1) {
      throw std::invalid_argument("unsupported version");
    }
    GameConfig& c = t.config;
    c.board = BoardFromJson(header.at("board"));
    c.goal = Goal::Parse(header.at("goal").get<std::string>());
    c.options.bias = header.at("bias").get<int>();
    if (c.options.bias < 1) throw std::invalid_argument("bias must be >= 1");
    c.options.breaker_first = header.at("breakerFirst").get<bool>();
    c.seed = header.at("seed").get<std::uint64_t>();
    c.maker = header.at("strategies").at("maker").get<std::string>();
    c.breaker = header.at("strategies").at("breaker").get<std::string>();
    if (header.contains("budget")) {
      c.budget = header["budget"].get<std::uint64_t>();
    }
    if (header.contains("schedule")) {
      c.options.schedule =
          TurnSchedule::Parse(header["schedule"].get<std::string>());
    }
    if (header.contains("mode")) {
      std::string mode = header["mode"].get<std::string>();
      if (mode == "strict") {
        c.mode = RefereeMode::kStrict;
      } else if (mode == "tournament") {
        c.mode = RefereeMode::kTournament;
      } else {
        throw std::invalid_argument("unknown mode '" + mode + "'");
      }
    }
    if (header.contains("rng") && header["rng"] != std::string(Rng::kAlgorithm)) {
      throw std::invalid_argument("generator mismatch: " +
                                  header["rng"].get<std::string>());
    }
  } catch (const TranscriptError&) {
    throw;
  } catch (const std::exception& e) {
    throw TranscriptError(1, e.what());
  }

  for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
    Json j = parse_line(i);
    try {
      std::string player = j.at("player").get<std::string>();
      if (player != "M" && player != "B") {
        throw std::invalid_argument("player must be \"M\" or \"B\"");
      }
      t.moves.push_back(Move{Ordinal::Parse(j.at("turn").get<std::string>()),
                             j.at("step").get<std::uint64_t>(),
                             player == "M" ? Player::kMaker : Player::kBreaker,
                             EdgeFromJson(j.at("edge"))});
    } catch (const std::exception& e) {
      throw TranscriptError(i + 1, e.what());
    }
  }

  std::size_t last = lines.size() - 1;
  Json final_line = parse_line(last);
  try {
    std::string result = final_line.at("result").get<std::string>();
    if (result == "maker") {
      t.result = GameResult::kMaker;
    } else if (result == "breaker") {
      t.result = GameResult::kBreaker;
    } else if (result == "budget") {
      t.result = GameResult::kBudget;
    } else {
      throw std::invalid_argument("unknown result '" + result + "'");
    }
    for (const auto& [key, value] : final_line.items()) {
      if (key == "result") continue;
      if (key == "witness") {
        t.witness = WitnessFromJson(t.config.goal, value);
      } else if (key == "forfeit") {
        std::string p = value.get<std::string>();
        if (p != "M" && p != "B") throw std::invalid_argument("bad forfeit");
        t.forfeit = p == "M" ? Player::kMaker : Player::kBreaker;
      } else {
        t.footer[key] = value;
      }
    }
  } catch (const std::exception& e) {
    throw TranscriptError(last + 1, e.what());
  }
  return t;
}

Transcript ParseTranscriptFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TranscriptError(0, "cannot open " + path);
  return ParseTranscript(in);
}

GameState Replay(const Transcript& t) {
  GameState state(t.config.board, t.config.options);
  for (std::size_t i = 0; i < t.moves.size(); ++i) {
    const Move& m = t.moves[i];
    std::size_t line = i + 2;
    if (m.step != state.History().size()) {
      throw TranscriptError(line, "step " + std::to_string(m.step) +
                                      " out of sequence");
    }
    if (m.turn != state.CurrentTurnIndex()) {
      throw TranscriptError(line, "turn " + m.turn.ToString() +
                                      " does not match the schedule (" +
                                      state.CurrentTurnIndex().ToString() +
                                      ")");
    }
    try {
      state.Claim(m.player, m.edge);
    } catch (const IllegalMove& e) {
      throw TranscriptError(line, e.what());
    }
  }
  return state;
}

}  // namespace mb
