// Acceptance run: one PASS/FAIL line per criterion, each with its runtime
// against the allowed limit. Exit status is non-zero if any line fails.
//
//   acceptance [--only <name>] [--write-golden] [--slowest <n>]

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bipartite_oracle.h"
#include "catalogue_oracle.h"
#include "mb/bipartite.h"
#include "mb/catalogue.h"
#include "mb/combinators.h"
#include "mb/harness.h"
#include "mb/oracle.h"
#include "mb/registry.h"
#include "mb/transcript.h"
#include "mb/tree.h"
#include "ordinal_oracle.h"
#include "test_support.h"

namespace mb {
namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  std::vector<std::string> failures;

  void Fail(const std::string& what) {
    ok = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

bool g_write_golden = false;
std::size_t g_slowest = 0;  // report this many slowest corpus games

// ---------------------------------------------------------------------------
// Independent helpers. None of these call the library's goal search, replay
// or invariant code.

bool MakerOwns(const std::map<Edge, Player>& owner, const Vertex& a,
               const Vertex& b) {
  auto it = owner.find(Edge(a, b));
  return it != owner.end() && it->second == Player::kMaker;
}

bool WitnessHolds(const std::map<Edge, Player>& owner, const Goal& goal,
                  const Witness& w) {
  if (goal.kind == GoalKind::kClique) {
    if (w.first.size() != goal.size) return false;
    for (std::size_t i = 0; i < w.first.size(); ++i) {
      for (std::size_t j = i + 1; j < w.first.size(); ++j) {
        if (!MakerOwns(owner, w.first[i], w.first[j])) return false;
      }
    }
    return true;
  }
  if (goal.kind == GoalKind::kBiclique) {
    if (w.first.size() != goal.left || w.second.size() != goal.right) return false;
    for (const Vertex& a : w.first) {
      for (const Vertex& b : w.second) {
        if (a == b || !MakerOwns(owner, a, b)) return false;
      }
    }
    return true;
  }
  return true;
}

bool OnBoard(const Board& board, const Vertex& v) {
  bool bip = board.kind() == BoardKind::kBipartiteFinite ||
             board.kind() == BoardKind::kBipartiteLazy;
  if (bip != (v.side != Side::kPlain)) return false;
  const Ordinal& bound = board.Bound(v.side);
  return v.label < bound;
}

// Disjointness, board membership, and the bias discipline recomputed from
// the step number: r = step mod (k+1); Maker moves at r = 0, or at r = k when
// Breaker opens. Fills `owner` with the final claims.
void CheckDiscipline(const Transcript& t, std::map<Edge, Player>& owner,
                     Outcome& out, const std::string& tag) {
  const int k = t.config.options.bias;
  for (std::size_t i = 0; i < t.moves.size(); ++i) {
    const Move& m = t.moves[i];
    std::uint64_t r = i % (k + 1);
    Player expected = (t.config.options.breaker_first ? r == static_cast<std::uint64_t>(k)
                                                      : r == 0)
                          ? Player::kMaker
                          : Player::kBreaker;
    if (m.step != i) out.Fail(tag + ": step numbering at " + std::to_string(i));
    if (m.player != expected) out.Fail(tag + ": wrong mover at step " + std::to_string(i));
    if (!OnBoard(t.config.board, m.edge.first()) ||
        !OnBoard(t.config.board, m.edge.second())) {
      out.Fail(tag + ": edge off the board at step " + std::to_string(i));
    }
    if (!owner.emplace(m.edge, m.player).second) {
      out.Fail(tag + ": edge claimed twice at step " + std::to_string(i));
    }
  }
}

void CheckResult(const Transcript& t, const std::map<Edge, Player>& owner,
                 Outcome& out, const std::string& tag) {
  std::size_t maker_moves = 0;
  for (const Move& m : t.moves) maker_moves += m.player == Player::kMaker;
  switch (t.result) {
    case GameResult::kMaker:
      if (!t.witness || !WitnessHolds(owner, t.config.goal, *t.witness)) {
        out.Fail(tag + ": maker result without a valid witness");
      }
      break;
    case GameResult::kBreaker: {
      auto edges = t.config.board.EdgeCount();
      if (!edges || owner.size() != *edges) {
        out.Fail(tag + ": breaker result on a board with free edges");
      }
      break;
    }
    case GameResult::kBudget:
      if (maker_moves < t.config.budget) out.Fail(tag + ": budget result too early");
      break;
  }
}

GameConfig MakeConfig(const std::string& board, const std::string& goal,
                      const std::string& maker, const std::string& breaker,
                      std::uint64_t seed, std::uint64_t budget, int bias = 1,
                      bool breaker_first = false) {
  GameConfig c;
  ApplyConfig({{"board", board},
               {"goal", goal},
               {"maker", maker},
               {"breaker", breaker},
               {"seed", std::to_string(seed)},
               {"budget", std::to_string(budget)},
               {"bias", std::to_string(bias)},
               {"breaker-first", breaker_first ? "true" : "false"}},
              c);
  return c;
}

// ---------------------------------------------------------------------------

Outcome OrdinalSuite() {
  Outcome out;
  std::mt19937_64 rng(1729);
  const OrdinalLimits& L = testing::kWideLimits;
  std::size_t values = 0;
  std::size_t capacity = 0;
  std::size_t oracle_checks = 0;
  for (int i = 0; i < 4000; ++i) {
    Ordinal a = testing::RandomOrdinal(rng, 3);
    Ordinal b = testing::RandomOrdinal(rng, 3);
    Ordinal c = testing::RandomOrdinal(rng, 3);
    values += 3;
    std::string tag = a.ToString() + " | " + b.ToString() + " | " + c.ToString();
    try {
      if (Add(Add(a, b, L), c, L) != Add(a, Add(b, c, L), L)) out.Fail("+ assoc " + tag);
      if (Mul(Mul(a, b, L), c, L) != Mul(a, Mul(b, c, L), L)) out.Fail("* assoc " + tag);
      if (Mul(a, Add(b, c, L), L) != Add(Mul(a, b, L), Mul(a, c, L), L)) {
        out.Fail("left distributivity " + tag);
      }
      // Monotonicity: strict on the right of +, and of * for a > 0; weak on
      // the left.
      if (b < c) {
        if (!(Add(a, b, L) < Add(a, c, L))) out.Fail("a+b < a+c " + tag);
        if (!a.IsZero() && !(Mul(a, b, L) < Mul(a, c, L))) out.Fail("ab < ac " + tag);
        if (!(Add(b, a, L) <= Add(c, a, L))) out.Fail("b+a <= c+a " + tag);
        if (!(Mul(b, a, L) <= Mul(c, a, L))) out.Fail("ba <= ca " + tag);
      }
      if (!(a <= Add(a, b, L)) || !(b <= Add(a, b, L))) out.Fail("a, b <= a+b " + tag);
    } catch (const std::exception&) {
      ++capacity;
    }
    // Compare: antisymmetric, total, transitive, and consistent with ==.
    auto ab = a <=> b;
    auto ba = b <=> a;
    if ((ab < 0) != (ba > 0) || (ab == 0) != (a == b)) out.Fail("compare symmetry " + tag);
    if (a < b && b < c && !(a < c)) out.Fail("compare transitivity " + tag);
    if ((a == b) != (a.ToString() == b.ToString())) out.Fail("== vs literal " + tag);
    // Classify.
    Classification k = Classify(a);
    if ((k.kind == OrdinalKind::kZero) != a.IsZero()) out.Fail("classify zero " + tag);
    if (k.kind == OrdinalKind::kSuccessor) {
      if (!k.predecessor || Add(*k.predecessor, Ordinal::Finite(1), L) != a) {
        out.Fail("classify predecessor " + tag);
      }
    }
    if (k.kind == OrdinalKind::kLimit && (a.FinitePart() != 0 || a.IsZero())) {
      out.Fail("classify limit " + tag);
    }
    if ((k.kind == OrdinalKind::kSuccessor) != (a.FinitePart() != 0)) {
      out.Fail("classify successor " + tag);
    }
    Classification s = Classify(Add(a, Ordinal::Finite(1), L));
    if (s.kind != OrdinalKind::kSuccessor || *s.predecessor != a) {
      out.Fail("classify a+1 " + tag);
    }
    // Round trip.
    for (const Ordinal* o : {&a, &b, &c}) {
      auto back = Ordinal::TryParse(o->ToString(), L);
      if (!back || *back != *o || back->ToString() != o->ToString()) {
        out.Fail("round trip " + o->ToString());
      }
    }
  }
  // Below w^w the block oracle gives the exact sums and products.
  for (int i = 0; i < 1000; ++i) {
    Ordinal a = testing::RandomSmallOrdinal(rng);
    Ordinal b = testing::RandomSmallOrdinal(rng);
    values += 2;
    auto xa = testing::ToBlocks(a);
    auto xb = testing::ToBlocks(b);
    if (Add(a, b, L).ToString() != testing::BlocksToLiteral(testing::BlockSum(xa, xb))) {
      out.Fail("sum vs block oracle " + a.ToString() + " + " + b.ToString());
    }
    if (Mul(a, b, L).ToString() !=
        testing::BlocksToLiteral(testing::BlockProduct(xa, xb))) {
      out.Fail("product vs block oracle " + a.ToString() + " * " + b.ToString());
    }
    if (Ordinal::Parse(testing::BlocksToLiteral(xa), L) != a) {
      out.Fail("oracle literal parse " + a.ToString());
    }
    oracle_checks += 3;
  }
  if (values < 10000) out.Fail("fewer than 10^4 values");
  if (capacity > 40) out.Fail("too many triples hit the capacity bound");
  out.detail = std::to_string(values) + " values, " + std::to_string(oracle_checks) +
               " oracle checks, " + std::to_string(capacity) +
               " triples over capacity";
  return out;
}

// ---------------------------------------------------------------------------
// The 1000-game corpus shared by the referee and transcript criteria.

struct CorpusGame {
  GameConfig config;
  std::string text;
};

std::vector<GameConfig> CorpusConfigs() {
  struct BoardSet {
    std::string board;
    std::string goal;
    std::vector<std::string> makers;
    std::vector<std::string> breakers;
  };
  std::vector<BoardSet> sets = {
      {"K12", "clique:4",
       {"goal-seeker", "random", "tree", "steal(greedy-blocker)"},
       {"random", "greedy-blocker", "null", "fallback", "catalogue(k=2,m=6)"}},
      {"K8,8", "biclique:2x3",
       {"goal-seeker", "random", "bipartite(p=3)", "steal(greedy-blocker)"},
       {"random", "greedy-blocker", "null", "fallback",
        "restrict(catalogue(k=2,m=6))"}},
      {"Kw", "clique:4",
       {"goal-seeker", "random", "tree", "steal(greedy-blocker)"},
       {"random", "greedy-blocker", "null", "fallback", "catalogue(k=2,m=6)"}},
      {"Kw,w", "biclique:2x2",
       {"goal-seeker", "random", "bipartite(p=3)", "steal(greedy-blocker)"},
       {"random", "greedy-blocker", "null", "fallback",
        "restrict(catalogue(k=2,m=6))"}},
  };
  std::vector<GameConfig> out;
  std::uint64_t seed = 0;
  while (out.size() < 1000) {
    for (const BoardSet& s : sets) {
      for (const std::string& m : s.makers) {
        for (const std::string& b : s.breakers) {
          if (out.size() == 1000) break;
          int bias = 1 + static_cast<int>(seed % 3);
          bool first = (seed / 3) % 2 == 1;
          out.push_back(MakeConfig(s.board, s.goal, m, b, seed, 2000, bias, first));
          ++seed;
        }
      }
    }
  }
  return out;
}

std::vector<CorpusGame> g_corpus;

Outcome RefereeSuite() {
  Outcome out;
  std::map<std::string, std::size_t> results;
  std::vector<std::pair<double, std::string>> timings;
  for (const GameConfig& c : CorpusConfigs()) {
    std::string tag = c.board.ShortName() + " " + c.maker + " vs " + c.breaker +
                      " seed " + std::to_string(c.seed);
    auto start = std::chrono::steady_clock::now();
    GameRecord r = RunConfigured(c);
    timings.emplace_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(),
        tag + " bias " + std::to_string(c.options.bias) + " -> " +
            ResultName(r.transcript.result));
    std::string text = SerializeTranscript(r.transcript);
    // Same seed, fresh strategies: the identical transcript.
    if (SerializeTranscript(RunConfigured(c).transcript) != text) {
      out.Fail(tag + ": replay differs");
    }
    std::map<Edge, Player> owner;
    CheckDiscipline(r.transcript, owner, out, tag);
    CheckResult(r.transcript, owner, out, tag);
    if (r.transcript.forfeit) out.Fail(tag + ": forfeit");
    ++results[ResultName(r.transcript.result)];
    g_corpus.push_back({r.transcript.config, std::move(text)});
  }
  std::sort(timings.rbegin(), timings.rend());
  for (std::size_t i = 0; i < std::min(g_slowest, timings.size()); ++i) {
    std::cout << "     " << timings[i].first << "s " << timings[i].second << "\n";
  }
  out.detail = std::to_string(g_corpus.size()) + " games (maker " +
               std::to_string(results["maker"]) + ", breaker " +
               std::to_string(results["breaker"]) + ", budget " +
               std::to_string(results["budget"]) + "), each played twice";
  return out;
}

Outcome TranscriptSuite() {
  Outcome out;
  if (g_corpus.empty()) {
    for (const GameConfig& c : CorpusConfigs()) {
      g_corpus.push_back({c, SerializeTranscript(RunConfigured(c).transcript)});
    }
  }
  std::size_t moves = 0;
  std::vector<std::pair<double, std::string>> timings;
  for (const CorpusGame& g : g_corpus) {
    auto start = std::chrono::steady_clock::now();
    std::istringstream in(g.text);
    Transcript t = ParseTranscript(in);
    std::string tag = t.config.board.ShortName() + " " + t.config.maker + " vs " +
                      t.config.breaker + " seed " + std::to_string(t.config.seed);
    if (SerializeTranscript(t) != g.text) out.Fail(tag + ": serialization differs");
    VerifyReport v = VerifyTranscript(t);
    if (!v.ok()) out.Fail(tag + ": " + v.violations.front());
    if (!v.maker_resimulated || !v.breaker_resimulated) {
      out.Fail(tag + ": not re-simulated");
    }
    // The summary from the file equals the summary of a fresh run.
    if (SummaryText(t) != SummaryText(RunConfigured(g.config).transcript)) {
      out.Fail(tag + ": summary differs");
    }
    moves += t.moves.size();
    timings.emplace_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(),
        tag);
  }
  std::sort(timings.rbegin(), timings.rend());
  for (std::size_t i = 0; i < std::min(g_slowest, timings.size()); ++i) {
    std::cout << "     " << timings[i].first << "s " << timings[i].second << "\n";
  }
  out.detail = std::to_string(g_corpus.size()) + " transcripts, " +
               std::to_string(moves) + " moves re-simulated";
  return out;
}

// ---------------------------------------------------------------------------

Outcome TreeSuite() {
  Outcome out;
  std::size_t games = 0;
  std::size_t longest = 0;
  std::size_t chains = 0;
  std::size_t stuck = 0;
  for (int k = 1; k <= 3; ++k) {
    for (const char* breaker : {"random", "greedy-blocker"}) {
      for (std::uint64_t seed = 0; games < 1000 && seed < 167; ++seed) {
        bool first = seed % 2 == 1;
        GameConfig c = MakeConfig("Kw", "clique:40", "tree(audit=1)", breaker,
                                  seed, 30, k, first);
        std::string tag = std::string("k=") + std::to_string(k) + " " + breaker +
                          " seed " + std::to_string(seed);
        RefereeHooks hooks;
        hooks.check_invariants = true;  // includes the claim-time audit
        std::optional<GameRecord> r;
        try {
          r.emplace(RunConfigured(c, hooks));
        } catch (const InvariantViolation& e) {
          out.Fail(tag + ": " + e.what());
          if (std::string(e.what()).find("stuck") != std::string::npos) ++stuck;
          ++games;
          continue;
        }
        ++games;
        std::map<Edge, Player> owner;
        for (const Move& m : r->transcript.moves) owner[m.edge] = m.player;
        // The tree as recorded: parents, depths, arity, and one node per
        // completed phase.
        const Json& tree = r->transcript.footer.at("tree");
        std::map<std::string, std::string> parent;
        std::map<std::string, std::size_t> depth;
        std::map<std::string, std::size_t> children;
        std::vector<std::string> order;
        for (const Json& n : tree.at("nodes")) {
          std::string label = n.at("label");
          order.push_back(label);
          if (n.at("parent").is_null()) {
            if (label != "0" || n.at("depth") != 0) out.Fail(tag + ": root");
            depth[label] = 0;
            continue;
          }
          std::string p = n.at("parent");
          if (!depth.count(p)) out.Fail(tag + ": parent after child");
          parent[label] = p;
          depth[label] = depth[p] + 1;
          if (n.at("depth").get<std::size_t>() != depth[label]) out.Fail(tag + ": depth");
          if (++children[p] > static_cast<std::size_t>(k + 1)) {
            out.Fail(tag + ": arity above k+1 at " + p);
          }
        }
        std::size_t phases = r->transcript.footer.at("treePhases");
        if (order.size() != phases + 1) out.Fail(tag + ": nodes != phases + 1");
        // Every root-to-leaf chain is a Maker clique.
        for (const std::string& leaf : order) {
          if (children.count(leaf)) continue;
          std::vector<Vertex> chain;
          for (std::string v = leaf;; v = parent[v]) {
            chain.push_back(Vertex::Plain(std::stoull(v)));
            if (!parent.count(v)) break;
          }
          for (std::size_t i = 0; i < chain.size(); ++i) {
            for (std::size_t j = i + 1; j < chain.size(); ++j) {
              if (!MakerOwns(owner, chain[i], chain[j])) {
                out.Fail(tag + ": chain to " + leaf + " is not a Maker clique");
              }
            }
          }
          ++chains;
          longest = std::max(longest, chain.size());
        }
      }
    }
  }
  if (games != 1000) out.Fail("ran " + std::to_string(games) + " games");
  out.detail = std::to_string(games) + " games, " + std::to_string(chains) +
               " maximal chains checked, longest " + std::to_string(longest) +
               ", " + std::to_string(stuck) + " stuck insertions";
  return out;
}

// ---------------------------------------------------------------------------
// Tiny games: an independent bitmask minimax.

struct TinyGame {
  std::vector<Edge> edges;
  std::vector<std::uint32_t> winning;
};

std::vector<Vertex> BoardVertices(const Board& b, Side side) {
  std::vector<Vertex> out;
  for (std::uint64_t i = 0; i < *b.SideSize(side); ++i) {
    out.push_back(Vertex{side, Ordinal::Finite(i)});
  }
  return out;
}

void Subsets(std::size_t n, std::size_t k, std::size_t from,
             std::vector<std::size_t>& cur,
             const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (cur.size() == k) {
    f(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    Subsets(n, k, i + 1, cur, f);
    cur.pop_back();
  }
}

TinyGame BuildTiny(const Board& board, const Goal& goal) {
  TinyGame g;
  bool bip = board.kind() == BoardKind::kBipartiteFinite;
  std::vector<Vertex> left = BoardVertices(board, bip ? Side::kLeft : Side::kPlain);
  std::vector<Vertex> right = bip ? BoardVertices(board, Side::kRight) : left;
  if (bip) {
    for (const Vertex& a : left) {
      for (const Vertex& b : right) g.edges.push_back(Edge(a, b));
    }
  } else {
    for (std::size_t i = 0; i < left.size(); ++i) {
      for (std::size_t j = i + 1; j < left.size(); ++j) {
        g.edges.push_back(Edge(left[i], left[j]));
      }
    }
  }
  auto bit = [&](const Vertex& a, const Vertex& b) -> std::uint32_t {
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      if (g.edges[i] == Edge(a, b)) return 1u << i;
    }
    return 0;  // not an edge
  };
  std::set<std::uint32_t> sets;
  std::vector<std::size_t> cur;
  if (goal.kind == GoalKind::kClique) {
    Subsets(left.size(), goal.size, 0, cur, [&](const std::vector<std::size_t>& s) {
      std::uint32_t mask = 0;
      bool ok = true;
      for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
          std::uint32_t b = bit(left[s[i]], left[s[j]]);
          ok = ok && b;
          mask |= b;
        }
      }
      if (ok) sets.insert(mask);
    });
  } else {
    Subsets(left.size(), goal.left, 0, cur, [&](const std::vector<std::size_t>& a) {
      std::vector<std::size_t> cur2;
      Subsets(right.size(), goal.right, 0, cur2, [&](const std::vector<std::size_t>& b) {
        std::uint32_t mask = 0;
        bool ok = true;
        for (std::size_t i : a) {
          for (std::size_t j : b) {
            std::uint32_t e = left[i] == right[j] ? 0 : bit(left[i], right[j]);
            ok = ok && e;
            mask |= e;
          }
        }
        if (ok) sets.insert(mask);
      });
    });
  }
  g.winning.assign(sets.begin(), sets.end());
  return g;
}

bool TinyMakerWins(const TinyGame& g, std::uint32_t maker, std::uint32_t breaker,
                   std::map<std::uint64_t, bool>& memo) {
  for (std::uint32_t w : g.winning) {
    if ((maker & w) == w) return true;
  }
  bool alive = false;
  for (std::uint32_t w : g.winning) alive = alive || (breaker & w) == 0;
  std::uint32_t all = (g.edges.size() == 32) ? ~0u : (1u << g.edges.size()) - 1;
  std::uint32_t free = all & ~maker & ~breaker;
  if (!alive || free == 0) return false;
  std::uint64_t key = (std::uint64_t{maker} << 32) | breaker;
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  bool maker_turn = std::popcount(maker) == std::popcount(breaker);
  bool result = !maker_turn;
  for (std::uint32_t f = free; f; f &= f - 1) {
    std::uint32_t e = f & -f;
    bool v = maker_turn ? TinyMakerWins(g, maker | e, breaker, memo)
                        : TinyMakerWins(g, maker, breaker | e, memo);
    if (maker_turn && v) {
      result = true;
      break;
    }
    if (!maker_turn && !v) {
      result = false;
      break;
    }
  }
  memo[key] = result;
  return result;
}

Outcome MinimaxSuite() {
  Outcome out;
  struct Case {
    std::string board;
    std::string goal;
  };
  std::vector<Case> cases;
  for (int n = 2; n <= 5; ++n) {
    for (int s = 2; s <= n; ++s) cases.push_back({"K" + std::to_string(n), "clique:" + std::to_string(s)});
    for (int a = 1; a < n; ++a) {
      for (int b = 1; a + b <= n; ++b) {
        cases.push_back({"K" + std::to_string(n),
                         "biclique:" + std::to_string(a) + "x" + std::to_string(b)});
      }
    }
  }
  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 3; ++n) {
      for (int a = 1; a <= m; ++a) {
        for (int b = 1; b <= n; ++b) {
          cases.push_back({"K" + std::to_string(m) + "," + std::to_string(n),
                           "biclique:" + std::to_string(a) + "x" + std::to_string(b)});
        }
      }
    }
  }
  std::string golden;
  std::size_t maker_wins = 0;
  std::size_t counting = 0;
  std::map<std::string, std::string> value;
  for (const Case& c : cases) {
    std::string tag = c.board + " " + c.goal;
    Board board = ParseBoard(c.board);
    Goal goal = Goal::Parse(c.goal);
    MinimaxSolver solver(board, goal);
    MinimaxValue v = solver.Solve();
    TinyGame tiny = BuildTiny(board, goal);
    std::map<std::uint64_t, bool> memo;
    bool oracle = TinyMakerWins(tiny, 0, 0, memo);
    if (oracle != (v == MinimaxValue::kMakerWins)) out.Fail(tag + ": solver vs bitmask oracle");
    // Counting: Maker gets ceil(E/2) edges.
    std::uint64_t edges = tiny.edges.size();
    std::uint64_t needed = goal.kind == GoalKind::kClique
                               ? goal.size * (goal.size - 1) / 2
                               : goal.left * goal.right;
    bool impossible = (edges + 1) / 2 < needed;
    if (impossible != CountingImpossible(board, goal)) out.Fail(tag + ": counting test");
    if (impossible) {
      ++counting;
      if (v != MinimaxValue::kBreakerWins) out.Fail(tag + ": counting-impossible but Maker wins");
    }
    // The solver's optimal play realises the value.
    GameConfig g = MakeConfig(c.board, c.goal, "minimax", "minimax", 0, 64);
    GameRecord r = RunConfigured(g);
    bool maker_won = r.transcript.result == GameResult::kMaker;
    if (maker_won != (v == MinimaxValue::kMakerWins)) out.Fail(tag + ": optimal play disagrees");
    maker_wins += v == MinimaxValue::kMakerWins;
    value[tag] = MinimaxName(v);
    golden += tag + " " + MinimaxName(v) + "\n";
  }
  // Monotone in the board: a Maker win on K_n stays a win on K_{n+1}.
  for (const auto& [tag, v] : value) {
    if (v != "MakerWins" || tag[2] == ',') continue;
    int n = tag[1] - '0';
    std::string bigger = "K" + std::to_string(n + 1) + tag.substr(2);
    if (value.count(bigger) && value[bigger] != "MakerWins") {
      out.Fail(tag + ": Maker loses on the larger board");
    }
  }
  for (const char* forced : {"K3 clique:3", "K2,2 biclique:2x2"}) {
    if (value[forced] != "BreakerWins") out.Fail(std::string(forced) + " must be BreakerWins");
  }
  std::string path = std::string(MB_GOLDEN_DIR) + "/minimax_values.txt";
  if (g_write_golden) {
    std::ofstream(path) << golden;
  }
  if (testing::ReadGolden("minimax_values.txt") + "\n" != golden) {
    out.Fail("values differ from tests/golden/minimax_values.txt");
  }
  out.detail = std::to_string(cases.size()) + " games (" + std::to_string(maker_wins) +
               " Maker wins, " + std::to_string(counting) +
               " counting-impossible), bitmask oracle and golden file agree";
  return out;
}

// ---------------------------------------------------------------------------

Outcome CatalogueSuite() {
  Outcome out;
  Catalogue cat = Catalogue::AllSubsets(2, 6);
  std::size_t answered = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    GameConfig c = MakeConfig("K30", "biclique:2x6", "goal-seeker",
                              "catalogue(k=2,m=6)", seed, 200,
                              1 + static_cast<int>(seed % 2));
    std::string tag = "seed " + std::to_string(seed);
    RefereeHooks hooks;
    hooks.check_invariants = true;  // blocking soundness at fire time
    std::optional<GameRecord> r;
    try {
      r.emplace(RunConfigured(c, hooks));
    } catch (const InvariantViolation& e) {
      out.Fail(tag + ": " + e.what());
      continue;
    }
    testing::ReplayFindings f = testing::ReplayCatalogue(r->transcript, cat);
    for (const std::string& s : f.unsound) out.Fail(tag + ": unsound answer at " + s);
    for (const std::string& s : f.joined_after_answer) {
      out.Fail(tag + ": set answered yet fully joined " + s);
    }
    answered += f.answered;
  }
  if (answered == 0) out.Fail("the response rule never fired");
  out.detail = "500 games on K30, " + std::to_string(answered) +
               " answered downward edges replayed";
  return out;
}

// ---------------------------------------------------------------------------

// A column can carry the constraints of sets 0..top iff some 2-colouring of
// the u left labels splits each of them.
bool ColumnFeasible(const std::vector<std::vector<std::uint64_t>>& sets,
                    std::size_t top, std::uint64_t u) {
  for (std::uint32_t mask = 0; mask < (1u << u); ++mask) {
    bool ok = true;
    for (std::size_t b = 0; b <= top && ok; ++b) {
      bool red = false;
      bool blue = false;
      for (std::uint64_t x : sets[b]) (mask >> x & 1 ? blue : red) = true;
      ok = red && blue;
    }
    if (ok) return true;
  }
  return false;
}

Outcome ColouringSuite() {
  Outcome out;
  std::vector<std::vector<std::vector<std::uint64_t>>> catalogues;
  for (std::uint64_t k = 2; k <= 3; ++k) {
    for (std::uint64_t m = k; m <= 8; ++m) {
      Catalogue all = Catalogue::AllSubsets(k, m);
      std::vector<std::vector<std::uint64_t>> sets;
      for (std::size_t b = 0; b < all.size(); ++b) sets.push_back(all.Set(b));
      catalogues.push_back(sets);
    }
  }
  std::mt19937_64 rng(99);
  for (int i = 0; i < 120; ++i) {
    std::uint64_t range = 3 + rng() % 6;
    std::uint64_t k = 2 + rng() % std::min<std::uint64_t>(3, range - 1);
    std::size_t c = 1 + rng() % 6;
    std::set<std::vector<std::uint64_t>> sets;
    for (int tries = 0; sets.size() < c && tries < 64; ++tries) {
      std::set<std::uint64_t> s;
      while (s.size() < k) s.insert(rng() % range);
      sets.insert(std::vector<std::uint64_t>(s.begin(), s.end()));
    }
    catalogues.emplace_back(sets.begin(), sets.end());
  }
  std::size_t feasible = 0;
  std::size_t infeasible = 0;
  std::size_t scans = 0;
  for (const auto& sets : catalogues) {
    Catalogue cat(sets);
    std::uint64_t range = cat.Range();
    for (std::uint64_t u = std::max<std::uint64_t>(range, 1); u <= 8; ++u) {
      for (std::uint64_t n = 1; n <= 8; ++n) {
        std::string tag = cat.ToJson().dump() + " u=" + std::to_string(u) +
                          " n=" + std::to_string(n);
        bool expect = true;
        for (std::uint64_t a = 0; a < n && expect; ++a) {
          expect = ColumnFeasible(sets, std::min<std::uint64_t>(a, sets.size() - 1), u);
        }
        std::optional<Colouring> col;
        try {
          col.emplace(BuildAvoidingColouring(cat, u, n));
        } catch (const Infeasible&) {
        }
        if (col.has_value() != expect) {
          out.Fail(tag + (expect ? ": builder missed a colouring" : ": builder claims an impossible one"));
          continue;
        }
        if (!col) {
          ++infeasible;
          continue;
        }
        ++feasible;
        // Both colours on v_a x A_b for every b <= min(a, c-1).
        for (std::uint64_t a = 0; a < n; ++a) {
          for (std::size_t b = 0; b <= std::min<std::uint64_t>(a, sets.size() - 1); ++b) {
            bool red = false;
            bool blue = false;
            for (std::uint64_t x : sets[b]) {
              (col->At(x, a) == Colour::kRed ? red : blue) = true;
            }
            if (!red || !blue) out.Fail(tag + ": constraint at " + std::to_string(a));
          }
        }
        // Exhaustive scan: no monochromatic K_{k,t} whose left class is a
        // catalogued A_b reaches a right vertex a >= b.
        std::uint64_t k = sets[0].size();
        std::vector<std::size_t> cur;
        Subsets(u, k, 0, cur, [&](const std::vector<std::size_t>& left) {
          std::vector<std::uint64_t> l(left.begin(), left.end());
          auto it = std::find(sets.begin(), sets.end(), l);
          if (it == sets.end()) return;
          std::size_t b = it - sets.begin();
          for (Colour colour : {Colour::kRed, Colour::kBlue}) {
            for (std::uint64_t a = b; a < n; ++a) {
              bool mono = true;
              for (std::uint64_t x : l) mono = mono && col->At(x, a) == colour;
              if (mono) out.Fail(tag + ": monochromatic A_" + std::to_string(b) + " at " + std::to_string(a));
            }
          }
          ++scans;
        });
      }
    }
  }
  out.detail = std::to_string(catalogues.size()) + " catalogues, " +
               std::to_string(feasible) + " feasible and " +
               std::to_string(infeasible) + " infeasible instances (all confirmed by brute force), " +
               std::to_string(scans) + " left classes scanned";
  return out;
}

// ---------------------------------------------------------------------------

std::vector<PhaseRecord> Phases(const Transcript& t) {
  std::vector<PhaseRecord> out;
  for (const Json& j : t.footer.at("phases")) out.push_back(PhaseFromJson(j));
  return out;
}

Outcome BipartiteSuite() {
  Outcome out;
  std::size_t games = 0;
  std::size_t witnesses = 0;
  std::size_t phases_total = 0;
  const char* breakers[] = {"random", "greedy-blocker", "null", "fallback"};
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    std::string board = seed % 2 ? "Kw,w" : "K8,8";
    std::uint64_t p = 2 + seed % 4;
    const char* breaker = breakers[(seed / 2) % 4];
    int bias = 1 + static_cast<int>((seed / 8) % 2);
    GameConfig c = MakeConfig(board, "biclique:9x9", "bipartite(p=" + std::to_string(p) + ")",
                              breaker, seed, 40, bias);
    std::string tag = board + " p=" + std::to_string(p) + " " + breaker + " seed " +
                      std::to_string(seed);
    RefereeHooks hooks;
    hooks.check_invariants = true;  // C within P, nesting, exact pool
    std::optional<GameRecord> r;
    try {
      r.emplace(RunConfigured(c, hooks));
    } catch (const InvariantViolation& e) {
      out.Fail(tag + ": " + e.what());
      continue;
    }
    ++games;
    for (const std::string& s : testing::ScanPhases(r->transcript)) out.Fail(tag + ": " + s);
    std::map<Edge, Player> owner;
    for (const Move& m : r->transcript.moves) owner[m.edge] = m.player;
    std::vector<PhaseRecord> phases = Phases(r->transcript);
    phases_total += phases.size();
    for (std::uint64_t a = 1; a <= 2; ++a) {
      for (std::uint64_t b = 1; b <= 3; ++b) {
        auto w = ExtractBiclique(phases, a, b);
        if (!w) continue;
        ++witnesses;
        if (!WitnessHolds(owner, Goal::Biclique(a, b), *w)) {
          out.Fail(tag + ": extracted K_{" + std::to_string(a) + "," +
                   std::to_string(b) + "} does not verify");
        }
      }
    }
  }
  // Null adversary: q full phases of length p give K_{a,q} for every a <= p.
  std::size_t null_cases = 0;
  for (std::uint64_t p = 1; p <= 8; ++p) {
    for (std::uint64_t q = 1; q <= 8; ++q) {
      GameConfig c = MakeConfig("Kw,w", "biclique:99x99",
                                "bipartite(p=" + std::to_string(p) + ")", "null", 0, p * q);
      GameRecord r = RunConfigured(c);
      std::map<Edge, Player> owner;
      for (const Move& m : r.transcript.moves) owner[m.edge] = m.player;
      std::vector<PhaseRecord> phases = Phases(r.transcript);
      for (std::uint64_t a = 1; a <= p; ++a) {
        ++null_cases;
        std::string tag = "null p=" + std::to_string(p) + " q=" + std::to_string(q) +
                          " a=" + std::to_string(a);
        auto w = ExtractBiclique(phases, a, q, &r.state);
        if (!w) {
          out.Fail(tag + ": no K_{a,q}");
        } else if (!WitnessHolds(owner, Goal::Biclique(a, q), *w)) {
          out.Fail(tag + ": witness does not verify");
        }
      }
    }
  }
  out.detail = std::to_string(games) + " games, " + std::to_string(phases_total) +
               " phases scanned, " + std::to_string(witnesses) +
               " extracted witnesses verified, " + std::to_string(null_cases) +
               " null-adversary K_{a,q} cases";
  return out;
}

// ---------------------------------------------------------------------------

Outcome CombinatorSuite() {
  Outcome out;
  std::size_t collisions = 0;
  std::size_t steal_games = 0;
  struct StealCase {
    const char* board;
    const char* goal;
    const char* inner;
    const char* opponent;
  };
  // steal(fallback) against fallback names the real free edge over and
  // over: every game is a collision provocation.
  std::vector<StealCase> cases = {
      {"Kw", "clique:4", "fallback", "fallback"},
      {"K10", "clique:4", "fallback", "fallback"},
      {"Kw", "clique:4", "greedy-blocker", "random"},
      {"Kw", "clique:5", "random", "greedy-blocker"},
      {"K12", "clique:4", "catalogue(k=2,m=6)", "random"},
      {"Kw,w", "biclique:2x2", "random", "fallback"},
  };
  for (std::uint64_t seed = 0; steal_games < 500; ++seed) {
    const StealCase& sc = cases[seed % cases.size()];
    GameConfig c = MakeConfig(sc.board, sc.goal, "steal(random)", sc.opponent, seed, 60,
                              1 + static_cast<int>((seed / 6) % 2));
    if (seed % 3 == 0) c.options.schedule = TurnSchedule::Phased(3 + seed % 4);
    std::string tag = std::string(sc.board) + " steal(" + sc.inner + ") vs " +
                      sc.opponent + " seed " + std::to_string(seed);
    StealStrategy maker(MakeStrategy(sc.inner, c));
    std::unique_ptr<Strategy> breaker = MakeStrategy(sc.opponent, c);
    c.maker = maker.Name();
    c.breaker = breaker->Name();
    RefereeHooks hooks;
    hooks.check_invariants = true;
    // Bookkeeping: the virtual game mirrors real Breaker moves as virtual
    // Maker moves, and every real Maker edge is either a virtual Breaker
    // claim or a held free edge, never both.
    hooks.after_move = [&](const GameState& s, const Move& m) {
      if (m.player != Player::kMaker || !maker.virtual_state()) return;
      const GameState& v = *maker.virtual_state();
      std::set<Edge> real_breaker = s.Claims(Player::kBreaker);
      std::set<Edge> virtual_maker = v.Claims(Player::kMaker);
      // The real Breaker move after our last sync is not mirrored yet.
      for (const Edge& e : virtual_maker) {
        if (!real_breaker.count(e)) out.Fail(tag + ": virtual Maker edge Breaker never played");
      }
      std::set<Edge> mine = v.Claims(Player::kBreaker);
      for (const Edge& e : maker.free_edges()) {
        if (!mine.insert(e).second) out.Fail(tag + ": free edge also a virtual claim");
      }
      if (mine != s.Claims(Player::kMaker)) out.Fail(tag + ": Maker edges != virtual + free");
    };
    try {
      RunGame(c, maker, *breaker, hooks);
    } catch (const std::exception& e) {
      out.Fail(tag + ": " + e.what());
    }
    collisions += maker.remap().size();
    ++steal_games;
  }
  if (collisions == 0) out.Fail("no collision was provoked");

  // restrict over K_{m,n} inside K_{m+n}: every real Maker claim has its
  // image among the virtual Maker claims once the adapter has answered.
  std::size_t restrict_games = 0;
  for (std::uint64_t m = 1; m <= 6; ++m) {
    for (std::uint64_t n = 1; n <= 6; ++n) {
      for (int variant = 0; variant < 3; ++variant) {
        std::string board = "K" + std::to_string(m) + "," + std::to_string(n);
        std::string goal = "biclique:" + std::to_string(std::min<std::uint64_t>(m, 2)) + "x" +
                           std::to_string(std::min<std::uint64_t>(n, 2));
        GameConfig c = MakeConfig(board, goal, "random", "random", m * 10 + n + variant, 100);
        Embedding emb = Embedding::Canonical(c.board);
        GameConfig inner = c;
        inner.board = emb.target();
        const char* inside = variant == 0 ? "catalogue(k=2,m=6)"
                                          : variant == 1 ? "greedy-blocker" : "random";
        RestrictStrategy rs(MakeStrategy(inside, inner), emb);
        std::unique_ptr<Strategy> maker =
            MakeStrategy(variant == 1 ? "random" : "goal-seeker", c);
        std::string tag = board + " " + maker->Name() + " vs " + rs.Name();
        RefereeHooks hooks;
        hooks.check_invariants = true;
        hooks.after_move = [&](const GameState& s, const Move& mv) {
          if (mv.player != Player::kBreaker || !rs.virtual_state()) return;
          const GameState& v = *rs.virtual_state();
          for (const Edge& e : s.Claims(Player::kMaker)) {
            // Left a -> a, Right b -> m + b.
            Vertex l = e.first().side == Side::kLeft ? e.first() : e.second();
            Vertex r = e.first().side == Side::kLeft ? e.second() : e.first();
            Edge image = Edge::Plain(l.Index(), m + r.Index());
            if (v.Owner(image) != Player::kMaker) {
              out.Fail(tag + ": image of " + e.ToString() + " missing");
            }
          }
        };
        c.maker = maker->Name();
        c.breaker = rs.Name();
        try {
          RunGame(c, *maker, rs, hooks);
        } catch (const std::exception& e) {
          out.Fail(tag + ": " + e.what());
        }
        ++restrict_games;
      }
    }
  }
  out.detail = std::to_string(steal_games) + " steal games (" + std::to_string(collisions) +
               " collisions), " + std::to_string(restrict_games) +
               " restrict games on K_{m,n} for m,n <= 6";
  return out;
}

// ---------------------------------------------------------------------------

struct Criterion {
  const char* name;
  double limit_seconds;
  Outcome (*run)();
};

}  // namespace
}  // namespace mb

int main(int argc, char** argv) {
  using namespace mb;
  std::string only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = argv[++i];
    if (std::strcmp(argv[i], "--write-golden") == 0) g_write_golden = true;
    if (std::strcmp(argv[i], "--slowest") == 0 && i + 1 < argc) {
      g_slowest = std::stoul(argv[++i]);
    }
  }
  const Criterion criteria[] = {
      {"ordinal-algebra", 10, OrdinalSuite},
      {"referee", 120, RefereeSuite},
      {"maker-tree", 180, TreeSuite},
      {"tiny-board-oracle", 300, MinimaxSuite},
      {"breaker-catalogue", 120, CatalogueSuite},
      {"colouring", 120, ColouringSuite},
      {"maker-bipartite", 120, BipartiteSuite},
      {"combinators", 60, CombinatorSuite},
      {"transcript-round-trip", 120, TranscriptSuite},
  };
  bool all = true;
  for (const Criterion& c : criteria) {
    if (!only.empty() && only != c.name) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.Fail(std::string("threw: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = o.ok && secs < c.limit_seconds;
    all = all && pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.1fs / %.0fs", secs, c.limit_seconds);
    std::cout << (pass ? "PASS " : "FAIL ") << c.name << " [" << timing << "] "
              << o.detail << "\n";
    for (const std::string& f : o.failures) std::cout << "     " << f << "\n";
    std::cout.flush();
  }
  return all ? 0 : 1;
}
