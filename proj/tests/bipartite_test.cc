#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "bitmask_oracle.h"
#include "bipartite_oracle.h"
#include "mb/bipartite.h"
#include "mb/referee.h"
#include "mb/transcript.h"

namespace mb {
namespace {

Vertex L(std::uint64_t n) { return Vertex::Left(n); }
Vertex R(std::uint64_t n) { return Vertex::Right(n); }

GameConfig LazyConfig(std::uint64_t budget, std::uint64_t seed) {
  GameConfig c;
  c.board = Board::BipartiteLazy();
  c.goal = Goal::Biclique(100, 100);
  c.budget = budget;
  c.seed = seed;
  return c;
}

TEST_CASE("phase 0 on K6,6 takes the smallest Left labels") {
  GameState s(Board::BipartiteFinite(6, 6));
  BipartiteMakerStrategy m(2);
  Rng rng(0);
  s.Claim(Player::kMaker, m.NextMove(s, Player::kMaker, rng));
  s.Claim(Player::kBreaker, Edge::Sided(5, 5));
  s.Claim(Player::kMaker, m.NextMove(s, Player::kMaker, rng));
  REQUIRE(m.phases().size() == 1);
  CHECK(m.phases()[0].center == R(0));
  CHECK(m.phases()[0].claimed == std::vector<std::uint64_t>{0, 1});
  CHECK(m.Name() == "bipartite(p=2)");
  CHECK(m.CheckInvariants(s).empty());
}

TEST_CASE("Breaker claims at a previous centre leave the pool") {
  GameState s(Board::BipartiteFinite(8, 8));
  BipartiteMakerStrategy m(3);
  Rng rng(0);
  auto maker = [&] { s.Claim(Player::kMaker, m.NextMove(s, Player::kMaker, rng)); };
  maker();                                         // {L0,R0}
  s.Claim(Player::kBreaker, Edge::Sided(1, 0));
  maker();                                         // {L2,R0}
  s.Claim(Player::kBreaker, Edge::Sided(3, 0));
  maker();                                         // {L4,R0}
  s.Claim(Player::kBreaker, Edge::Sided(7, 7));
  maker();                                         // phase 1 at R1
  REQUIRE(m.phases().size() == 2);
  CHECK(m.phases()[0].claimed == std::vector<std::uint64_t>{0, 2, 4});
  CHECK(m.phases()[1].pool.excluded == std::set<std::uint64_t>{1, 3});
  CHECK(m.phases()[1].center == R(1));
  CHECK(s.History().back().edge == Edge::Sided(0, 1));
  s.Claim(Player::kBreaker, Edge::Sided(0, 6));
  maker();
  s.Claim(Player::kBreaker, Edge::Sided(6, 6));
  maker();
  CHECK(m.phases()[1].claimed == std::vector<std::uint64_t>{0, 2, 4});
  CHECK(m.CheckInvariants(s).empty());
}

TEST_CASE("a Breaker pre-claim at a non-centre moves the centre, not the pool") {
  GameOptions o;
  o.breaker_first = true;
  GameState s(Board::BipartiteFinite(6, 6), o);
  BipartiteMakerStrategy m(2);
  Rng rng(0);
  auto maker = [&] { s.Claim(Player::kMaker, m.NextMove(s, Player::kMaker, rng)); };
  s.Claim(Player::kBreaker, Edge::Sided(0, 1));
  maker();
  s.Claim(Player::kBreaker, Edge::Sided(5, 5));
  maker();
  s.Claim(Player::kBreaker, Edge::Sided(4, 5));
  maker();
  REQUIRE(m.phases().size() == 2);
  CHECK(m.phases()[0].center == R(0));
  CHECK(m.phases()[1].center == R(2));
  CHECK(m.phases()[1].pool.excluded.empty());
  CHECK(m.phases()[1].claimed == std::vector<std::uint64_t>{0});
  CHECK(m.CheckInvariants(s).empty());
}

TEST_CASE("an exhausted pool is recorded and the strategy falls back") {
  GameState s(Board::BipartiteFinite(2, 3));
  BipartiteMakerStrategy m(3);
  Rng rng(0);
  s.Claim(Player::kMaker, m.NextMove(s, Player::kMaker, rng));  // {L0,R0}
  s.Claim(Player::kBreaker, Edge::Sided(1, 0));
  Edge e = m.NextMove(s, Player::kMaker, rng);
  CHECK(m.pool_exhaustions() == 1);
  CHECK(m.phases()[0].exhausted);
  CHECK(e == Edge::Sided(0, 1));
  s.Claim(Player::kMaker, e);
  CHECK(m.CheckInvariants(s).empty());
}

TEST_CASE("phase records round-trip through JSON") {
  PhaseRecord p;
  p.index = 3;
  p.center = R(7);
  p.claimed = {0, 2, 5};
  p.pool.excluded = {1, 4};
  p.start_step = 19;
  CHECK(PhaseFromJson(PhaseToJson(p)) == p);
  p.pool.bound = 9;
  p.exhausted = true;
  CHECK(PhaseFromJson(PhaseToJson(p)) == p);
  CHECK(p.pool.Size() == 7u);
}

TEST_CASE("12-phase lazy game against random passes the transcript scan") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    BipartiteMakerStrategy m(4);
    RandomAdversary b;
    RefereeHooks hooks;
    hooks.check_invariants = true;
    auto r = RunGame(LazyConfig(48, seed), m, b, hooks);
    CHECK(m.phases().size() == 12);
    // Scan the parsed transcript, not the in-memory one.
    std::stringstream ss(SerializeTranscript(r.transcript));
    Transcript t = ParseTranscript(ss);
    std::vector<std::string> problems = testing::ScanPhases(t);
    for (const auto& p : problems) MESSAGE(p);
    CHECK(problems.empty());
  }
}

TEST_CASE("pool nesting over seeded finite and lazy games") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    GameConfig c = LazyConfig(40, seed);
    if (seed % 2) c.board = Board::BipartiteFinite(10, 30);
    c.options.bias = 1 + seed % 3;
    BipartiteMakerStrategy m(1 + seed % 6);
    GreedyBlocker b(Goal::Biclique(2, 3));
    auto r = RunGame(c, m, b);
    CHECK(m.CheckInvariants(r.state).empty());
    CHECK(testing::ScanPhases(r.transcript).empty());
  }
}

TEST_CASE("extractBiclique examples") {
  std::vector<PhaseRecord> shared;
  for (std::size_t i = 0; i < 5; ++i) {
    PhaseRecord p;
    p.index = i;
    p.center = R(i);
    p.claimed = {0, 1, 2 + i};
    shared.push_back(p);
  }
  auto w = ExtractBiclique(shared, 2, 5);
  REQUIRE(w.has_value());
  CHECK(w->first == std::vector<Vertex>{L(0), L(1)});
  CHECK(w->second == std::vector<Vertex>{R(0), R(1), R(2), R(3), R(4)});

  std::vector<PhaseRecord> disjoint;
  for (std::size_t i = 0; i < 4; ++i) {
    PhaseRecord p;
    p.index = i;
    p.center = R(i);
    p.claimed = {2 * i, 2 * i + 1};
    disjoint.push_back(p);
  }
  CHECK_FALSE(ExtractBiclique(disjoint, 1, 2).has_value());
  CHECK_FALSE(ExtractBiclique(disjoint, 1, 5).has_value());
}

TEST_CASE("extractBiclique agrees with a bitmask scan of the phase edges") {
  int found = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    BipartiteMakerStrategy m(4);
    RandomAdversary b;
    auto r = RunGame(LazyConfig(16, seed), m, b);
    std::set<Edge> phase_edges;
    for (const PhaseRecord& p : m.phases()) {
      for (std::uint64_t u : p.claimed) phase_edges.insert(Edge(L(u), p.center));
    }
    auto expect = testing::MaskBiclique(phase_edges, 2, 3, true);
    auto got = ExtractBiclique(m.phases(), 2, 3, &r.state);
    CHECK(expect.has_value() == got.has_value());
    if (got) {
      ++found;
      CHECK(VerifyWitness(r.state, Player::kMaker, Goal::Biclique(2, 3), *got));
      CHECK(got->first == expect->first);
    }
  }
  CHECK(found > 0);
}

TEST_CASE("the exhaustive limit switches to the frequency heuristic") {
  std::vector<PhaseRecord> phases;
  for (std::size_t i = 0; i < 6; ++i) {
    PhaseRecord p;
    p.index = i;
    p.center = R(i);
    p.claimed = {0, 1, 2, 3, 10 + i};
    phases.push_back(p);
  }
  auto w = ExtractBiclique(phases, 3, 6, nullptr, 1);
  REQUIRE(w.has_value());
  CHECK(w->first == std::vector<Vertex>{L(0), L(1), L(2)});
}

TEST_CASE("null adversary yields K_{a,q} for every p, q <= 8") {
  for (std::uint64_t p = 1; p <= 8; ++p) {
    for (std::uint64_t q = 1; q <= 8; ++q) {
      BipartiteMakerStrategy m(p);
      NullAdversary b;
      auto r = RunGame(LazyConfig(p * q, 0), m, b);
      REQUIRE(m.phases().size() == q);
      for (std::uint64_t a = 1; a <= p; ++a) {
        auto w = ExtractBiclique(m.phases(), a, q, &r.state);
        REQUIRE(w.has_value());
        CHECK(w->first.size() == a);
        CHECK(w->second.size() == q);
        for (const Vertex& u : w->first) {
          for (const Vertex& v : w->second) {
            CHECK(r.state.Owner(Edge(u, v)) == Player::kMaker);
          }
        }
      }
    }
  }
}

TEST_CASE("footer carries the phase records") {
  BipartiteMakerStrategy m(2);
  NullAdversary b;
  auto r = RunGame(LazyConfig(6, 0), m, b);
  REQUIRE(r.transcript.footer.contains("phases"));
  CHECK(r.transcript.footer["phases"].size() == 3);
  CHECK(r.transcript.footer["phaseLength"] == 2);
  CHECK(PhaseFromJson(r.transcript.footer["phases"][2]) == m.phases()[2]);
}

}  // namespace
}  // namespace mb
