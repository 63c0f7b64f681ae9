#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <random>

#include "mb/referee.h"
#include "mb/tree.h"

namespace mb {
namespace {

Vertex V(std::uint64_t n) { return Vertex::Plain(n); }

GameConfig TreeConfig(std::uint64_t budget, std::uint64_t seed, int bias = 1) {
  GameConfig c;
  c.board = Board::CompleteLazy();
  c.goal = Goal::Clique(1000);
  c.budget = budget;
  c.seed = seed;
  c.options.bias = bias;
  return c;
}

TEST_CASE("tree opening claims {0,1}") {
  GameState s(Board::CompleteLazy());
  TreeMakerStrategy t;
  Rng rng(0);
  CHECK(t.NextMove(s, Player::kMaker, rng) == Edge::Plain(0, 1));
  CHECK(t.active() == V(1));
  CHECK(t.Name() == "tree(k=1)");
}

TEST_CASE("tree takes the unblocked child") {
  GameState s(Board::CompleteLazy());
  TreeMakerStrategy t(TreeOptions{1, 0, true});
  Rng rng(0);
  auto maker = [&] { s.Claim(Player::kMaker, t.NextMove(s, Player::kMaker, rng)); };
  maker();                                        // {0,1}
  s.Claim(Player::kBreaker, Edge::Plain(10, 11));
  maker();                                        // 1 under 0; {0,2}
  CHECK(s.History().back().edge == Edge::Plain(0, 2));
  s.Claim(Player::kBreaker, Edge::Plain(1, 2));
  maker();                                        // 2 under 0; {0,3}
  CHECK(s.History().back().edge == Edge::Plain(0, 3));
  CHECK(t.tree().Children(V(0)) == std::vector<Vertex>{V(1), V(2)});
  s.Claim(Player::kBreaker, Edge::Plain(1, 3));
  CHECK(t.NextMove(s, Player::kMaker, rng) == Edge::Plain(2, 3));
  CHECK(t.chain() == std::vector<Vertex>{V(0), V(2)});
  CHECK(t.CheckInvariants(s).empty());
}

TEST_CASE("hints report blocked candidates") {
  GameState s(Board::CompleteLazy());
  TreeMakerStrategy t;
  Rng rng(0);
  auto maker = [&] { s.Claim(Player::kMaker, t.NextMove(s, Player::kMaker, rng)); };
  maker();
  s.Claim(Player::kBreaker, Edge::Plain(10, 11));
  maker();
  s.Claim(Player::kBreaker, Edge::Plain(1, 2));
  CHECK(t.HintsJson()["candidates"].dump() ==
        R"([{"node":"1","blocked":false}])");
  t.Observe(s);
  auto hints = t.HintsJson();
  CHECK(hints["active"] == "2");
  CHECK(hints["candidates"].dump() == R"([{"node":"1","blocked":true}])");
}

TEST_CASE("branch extraction examples") {
  HausdorffTree single(2, 1);
  CHECK(ExtractBranch(single, BranchPolicy::kDeepest) == std::vector<Vertex>{V(0)});
  CHECK(ExtractBranch(single, BranchPolicy::kMostDescendants) ==
        std::vector<Vertex>{V(0)});

  HausdorffTree t(2, 1);
  t.Insert(V(1), V(0));
  t.Insert(V(2), V(0));
  t.Insert(V(4), V(1));
  t.Insert(V(3), V(2));
  t.Insert(V(5), V(2));
  t.Insert(V(6), V(3));
  CHECK(ExtractBranch(t, BranchPolicy::kPrincipalAt, V(4)) ==
        std::vector<Vertex>{V(0), V(1), V(4)});
  CHECK(ExtractBranch(t, BranchPolicy::kDeepest) ==
        std::vector<Vertex>{V(0), V(2), V(3), V(6)});
  CHECK(ExtractBranch(t, BranchPolicy::kMostDescendants) ==
        std::vector<Vertex>{V(0), V(2), V(3), V(6)});
  CHECK_THROWS_AS(ExtractBranch(t, BranchPolicy::kPrincipalAt, V(2)),
                  UnknownLeaf);
  CHECK_THROWS_AS(ExtractBranch(t, BranchPolicy::kPrincipalAt, V(9)),
                  UnknownLeaf);
  CHECK(t.CheckStructure().empty());
  t.Insert(V(7), V(2));
  CHECK(t.CheckStructure().size() == 1);
}

// Height by explicit depth-first recursion over a parent array.
std::size_t Height(const std::vector<int>& parent, int node) {
  std::size_t best = 0;
  for (std::size_t c = 0; c < parent.size(); ++c) {
    if (parent[c] == node) best = std::max(best, Height(parent, static_cast<int>(c)));
  }
  return best + 1;
}

TEST_CASE("deepest branch of random 15-node trees equals the height") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 200; ++trial) {
    HausdorffTree t(2, 1);
    std::vector<int> parent{-1};
    std::vector<std::uint64_t> labels{0};
    std::vector<int> children(1, 0);
    while (parent.size() < 15) {
      int p = static_cast<int>(rng() % parent.size());
      if (children[p] >= 2) continue;
      std::uint64_t label = labels.back() + 1 + rng() % 3;
      t.Insert(V(label), V(labels[p]));
      parent.push_back(p);
      labels.push_back(label);
      children.push_back(0);
      ++children[p];
    }
    std::vector<Vertex> deepest = ExtractBranch(t, BranchPolicy::kDeepest);
    CHECK(deepest.size() == Height(parent, 0));
    CHECK(t.LongestChain() == deepest.size());
    std::vector<Vertex> most = ExtractBranch(t, BranchPolicy::kMostDescendants);
    CHECK(t.IsLeaf(most.back()));
    for (std::size_t i = 1; i < most.size(); ++i) {
      CHECK(t.Parent(most[i]) == most[i - 1]);
    }
  }
}

TEST_CASE("clique from branch") {
  GameState s(Board::CompleteLazy(), {}, Discipline::kRelaxed);
  auto one = CliqueFromBranch(s, {V(0)});
  REQUIRE(one.witness.has_value());
  CHECK(one.witness->first == std::vector<Vertex>{V(0)});
  s.Claim(Player::kMaker, Edge::Plain(0, 1));
  s.Claim(Player::kMaker, Edge::Plain(0, 4));
  auto missing = CliqueFromBranch(s, {V(0), V(1), V(4)});
  CHECK_FALSE(missing.witness.has_value());
  CHECK(missing.missing == std::make_pair(V(1), V(4)));
  s.Claim(Player::kMaker, Edge::Plain(1, 4));
  auto full = CliqueFromBranch(s, {V(0), V(1), V(4)});
  REQUIRE(full.witness.has_value());
  CHECK(full.witness->first == std::vector<Vertex>{V(0), V(1), V(4)});
}

TEST_CASE("40-move game against random keeps every invariant") {
  TreeMakerStrategy t(TreeOptions{1, 0, true});
  RandomAdversary b;
  RefereeHooks hooks;
  hooks.check_invariants = true;
  auto r = RunGame(TreeConfig(40, 7), t, b, hooks);
  CHECK(t.CheckInvariants(r.state).empty());
  std::vector<Vertex> branch = ExtractBranch(t.tree(), BranchPolicy::kDeepest);
  for (std::size_t i = 0; i < branch.size(); ++i) {
    for (std::size_t j = i + 1; j < branch.size(); ++j) {
      CHECK(r.state.Owner(Edge(branch[i], branch[j])) == Player::kMaker);
    }
  }
  for (const Vertex& leaf : t.tree().Leaves()) {
    auto c = CliqueFromBranch(
        r.state, ExtractBranch(t.tree(), BranchPolicy::kPrincipalAt, leaf));
    CHECK(c.witness.has_value());
  }
  CHECK(t.tree().LongestChain() >= 3);
}

TEST_CASE("biased and breaker-first variants") {
  for (int k = 1; k <= 3; ++k) {
    for (bool first : {false, true}) {
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        GameConfig c = TreeConfig(60, seed, k);
        c.options.breaker_first = first;
        TreeMakerStrategy t(TreeOptions{k, 0, true});
        GreedyBlocker b(Goal::Clique(4));
        RefereeHooks hooks;
        hooks.check_invariants = true;
        auto r = RunGame(c, t, b, hooks);
        CHECK(t.tree().arity_bound() == k + 1);
        CHECK(t.tree().limit_multiplicity() == (first ? k + 1 : 1));
        CHECK(t.CheckInvariants(r.state).empty());
      }
    }
  }
}

TEST_CASE("undersized tree against a stronger Breaker is reported") {
  // tree(k=1) facing bias 3: the arity bound breaks, but the strategy does not
  // blame itself since Breaker moved more than k times between claims.
  TreeMakerStrategy t(TreeOptions{1, 0, false});
  GreedyBlocker b(Goal::Clique(4));
  auto r = RunGame(TreeConfig(80, 2, 3), t, b);
  std::vector<std::string> problems = t.CheckInvariants(r.state);
  CHECK_FALSE(problems.empty());
  for (const std::string& p : problems) {
    CHECK(p.find("children (bound 2)") != std::string::npos);
  }
}

TEST_CASE("longest chain is non-decreasing in the budget") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::size_t prev = 0;
    for (std::uint64_t budget : {5, 10, 20, 40, 80}) {
      TreeMakerStrategy t;
      RandomAdversary b;
      RunGame(TreeConfig(budget, seed), t, b);
      CHECK(t.tree().LongestChain() >= prev);
      prev = t.tree().LongestChain();
    }
  }
}

TEST_CASE("saturation on a finite board falls back") {
  TreeMakerStrategy t;
  FallbackStrategy b;
  GameConfig c;
  c.board = Board::CompleteFinite(6);
  c.goal = Goal::Clique(6);
  auto r = RunGame(c, t, b);
  CHECK(t.saturated());
  CHECK(r.state.Exhausted());
  CHECK(t.CheckInvariants(r.state).empty());
}

}  // namespace
}  // namespace mb
