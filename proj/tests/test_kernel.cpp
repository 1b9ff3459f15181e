#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <mutex>
#include <random>
#include <thread>

#include "generators.hpp"
#include "hyperset/kernel.hpp"
#include "oracle_bisim.hpp"

using namespace hyperset;
using hyperset::testing::for_each_graph;
using hyperset::testing::production_matches_oracle;
using hyperset::testing::random_graph;
using hyperset::testing::random_set;

namespace {

SetValue omega() {
  SetGraph g(1);
  g.add_edge(0, 0);
  return canon(g, 0);
}

// x* = {x*, x} built directly: fresh point with a self-loop and an edge to x.
SetValue dual_of(const SetValue& x) {
  SetGraph g(1 + x.node_count());
  g.add_edge(0, 0);
  g.add_edge(0, 1);
  for (NodeId v = 0; v < x.node_count(); ++v)
    for (NodeId c : x.children_ids(v)) g.add_edge(1 + v, 1 + c);
  return canon(g, 0);
}

}  // namespace

TEST_CASE("make_set basics") {
  const SetValue e = make_set({});
  CHECK(e.node_count() == 1);
  CHECK(e.children_ids(0).empty());

  // duplicates collapse
  CHECK(make_set({e, e}) == make_set({e}));
  CHECK(make_set({e, e}).node_count() == 2);

  // {empty, omega}: three nodes, one child carries a self-loop
  const SetValue m = make_set({e, omega()});
  CHECK(m.node_count() == 3);
  REQUIRE(m.children_ids(0).size() == 2);
  std::size_t self_loops = 0;
  for (NodeId c : m.children_ids(0))
    for (NodeId cc : m.children_ids(c))
      if (cc == c) ++self_loops;
  CHECK(self_loops == 1);
}

TEST_CASE("canon collapses cycles") {
  SetGraph two_cycle(2);
  two_cycle.add_edge(0, 1);
  two_cycle.add_edge(1, 0);
  const SetValue v = canon(two_cycle, 0);
  CHECK(v == omega());
  CHECK(v.node_count() == 1);

  SetGraph lone(1);
  CHECK(canon(lone, 0) == make_set({}));

  SetGraph chain(2);
  chain.add_edge(0, 1);
  CHECK(canon(chain, 0) == make_set({make_set({})}));

  CHECK_THROWS_AS(canon(lone, 5), Error);
}

TEST_CASE("canon is idempotent") {
  std::mt19937 rng(7001);
  for (int i = 0; i < 200; ++i) {
    const SetValue v = random_set(rng, 8);
    CHECK(canon(v.as_graph(), v.point()) == v);
  }
}

TEST_CASE("bisimilar is canonical equality") {
  const SetValue e = make_set({});
  const SetValue w = omega();
  SetGraph two_cycle(2);
  two_cycle.add_edge(0, 1);
  two_cycle.add_edge(1, 0);
  CHECK(bisimilar(w, canon(two_cycle, 0)));
  CHECK_FALSE(bisimilar(e, make_set({e})));
  CHECK(bisimilar(make_set({w}), w));  // Omega = {Omega}
}

TEST_CASE("children") {
  const SetValue e = make_set({});
  CHECK(children(e).empty());

  const auto cw = children(omega());
  REQUIRE(cw.size() == 1);
  CHECK(cw[0] == omega());

  const SetValue one = make_set({e});
  const SetValue two = make_set({e, one});
  const auto c2 = children(two);
  REQUIRE(c2.size() == 2);
  CHECK(c2[0] == e);
  CHECK(c2[1] == one);
}

TEST_CASE("children agree with full canon") {
  std::mt19937 rng(7002);
  for (int i = 0; i < 100; ++i) {
    const SetValue v = random_set(rng, 8);
    const SetGraph g = v.as_graph();
    const auto kids = children(v);
    REQUIRE(kids.size() == v.children_ids(0).size());
    for (std::size_t k = 0; k < kids.size(); ++k)
      CHECK(kids[k] == canon(g, v.children_ids(0)[k]));
  }
}

TEST_CASE("elem and subset") {
  const SetValue e = make_set({});
  const SetValue one = make_set({e});
  const SetValue w = omega();
  CHECK(elem(e, one));
  CHECK(elem(w, w));
  CHECK_FALSE(elem(one, one));

  CHECK(subset(e, w));
  CHECK(subset(one, make_set({e, w})));
  CHECK_FALSE(subset(make_set({w}), one));
}

TEST_CASE("boolean operations") {
  const SetValue e = make_set({});
  const SetValue w = omega();
  const SetValue se = make_set({e});
  const SetValue sw = make_set({w});
  CHECK(union2(se, sw) == make_set({e, w}));
  CHECK(intersect(make_set({e, w}), sw) == sw);
  // {Omega} is Omega itself, so its sole element lies in Omega
  CHECK(diff(sw, w) == e);
}

TEST_CASE("diff satisfies x - y = x - (x ∩ y)") {
  std::mt19937 rng(7003);
  for (int i = 0; i < 150; ++i) {
    const SetValue x = random_set(rng, 6);
    const SetValue y = random_set(rng, 6);
    CHECK(diff(x, y) == diff(x, intersect(x, y)));
  }
}

TEST_CASE("monadic union contract") {
  std::mt19937 rng(7004);
  for (int i = 0; i < 80; ++i) {
    const SetValue a = random_set(rng, 6);
    const SetValue u = monadic_union(a);
    // z ∈ ∪A iff z ∈ e for some e ∈ A
    for (const SetValue& z : children(u)) {
      bool witnessed = false;
      for (const SetValue& e : children(a)) witnessed = witnessed || elem(z, e);
      CHECK(witnessed);
    }
    for (const SetValue& e : children(a))
      for (const SetValue& z : children(e)) CHECK(elem(z, u));
  }
}

TEST_CASE("normality") {
  const SetValue e = make_set({});
  CHECK(is_normal(e));
  CHECK_FALSE(is_normal(omega()));
  CHECK_FALSE(is_normal(dual_of(e)));
}

TEST_CASE("well-foundedness") {
  const SetValue e = make_set({});
  CHECK(is_well_founded(e));
  CHECK_FALSE(is_well_founded(omega()));
  CHECK(is_well_founded(make_set({e, make_set({e})})));
}

TEST_CASE("unfold_tree") {
  const SetValue e = make_set({});
  for (std::size_t k : {0u, 1u, 5u}) {
    const UnfoldNode t = unfold_tree(e, k);
    CHECK(t.children.empty());
    CHECK(t.value() == e);
  }

  // Omega unfolds to a unary chain: 3 edges below the root at depth 3
  const UnfoldNode tw = unfold_tree(omega(), 3);
  const UnfoldNode* n = &tw;
  for (int d = 0; d < 3; ++d) {
    REQUIRE(n->children.size() == 1);
    n = &n->children[0];
    CHECK(n->value() == omega());
  }
  CHECK(n->children.empty());
  CHECK(n->chain.size() == 4);

  const SetValue two = make_set({e, make_set({e})});
  const UnfoldNode t2 = unfold_tree(two, 2);
  REQUIRE(t2.children.size() == 2);
  CHECK(t2.children[0].children.empty());        // the empty-set branch
  REQUIRE(t2.children[1].children.size() == 1);  // {empty} -> empty
  CHECK(t2.children[1].children[0].value() == e);
  CHECK(t2.children[1].children[0].chain.size() == 3);
}

TEST_CASE("extensionality") {
  std::mt19937 rng(7005);
  std::vector<SetValue> corpus;
  for (int i = 0; i < 40; ++i) corpus.push_back(random_set(rng, 6));
  for (const SetValue& x : corpus) {
    for (const SetValue& y : corpus) {
      const bool mutual = subset(x, y) && subset(y, x);
      CHECK(mutual == bisimilar(x, y));
    }
  }
}

TEST_CASE("bisimilarity is an equivalence relation") {
  std::mt19937 rng(7010);
  std::vector<SetValue> corpus;
  for (int i = 0; i < 25; ++i) corpus.push_back(random_set(rng, 5));
  for (const SetValue& x : corpus) {
    CHECK(bisimilar(x, x));
    for (const SetValue& y : corpus) {
      CHECK(bisimilar(x, y) == bisimilar(y, x));
      for (const SetValue& z : corpus)
        if (bisimilar(x, y) && bisimilar(y, z)) CHECK(bisimilar(x, z));
    }
  }
}

TEST_CASE("same block iff same canonical value") {
  std::mt19937 rng(7006);
  for (int i = 0; i < 60; ++i) {
    const SetGraph g = random_graph(rng, 7);
    const Partition part = coarsest_bisimulation(g);
    for (NodeId a = 0; a < g.node_count(); ++a)
      for (NodeId b = 0; b < g.node_count(); ++b)
        CHECK(part.same_block(a, b) == (canon(g, a) == canon(g, b)));
  }
}

TEST_CASE("minimality: distinct nodes of a SetValue are never bisimilar") {
  std::mt19937 rng(7007);
  for (int i = 0; i < 60; ++i) {
    const SetValue v = random_set(rng, 8);
    const SetGraph g = v.as_graph();
    const Partition part = coarsest_bisimulation(g);
    CHECK(part.block_count == v.node_count());
  }
}

TEST_CASE("production refinement matches the pairwise oracle") {
  // exhaustive up to 3 nodes here; the acceptance suite goes to 4 and beyond
  for (std::size_t n = 1; n <= 3; ++n)
    for_each_graph(n, [](const SetGraph& g) { CHECK(production_matches_oracle(g)); });

  std::mt19937 rng(7008);
  for (int i = 0; i < 200; ++i) CHECK(production_matches_oracle(random_graph(rng, 10)));
}

TEST_CASE("no child equal to the point implies normality") {
  std::mt19937 rng(7009);
  for (int i = 0; i < 100; ++i) {
    const SetValue v = random_set(rng, 6);
    bool point_among_children = false;
    for (const SetValue& c : children(v)) point_among_children |= (c == v);
    if (!point_among_children) CHECK(is_normal(v));
  }
}

TEST_CASE("values are safely shareable across threads") {
  const SetValue shared = make_set({make_set({}), omega()});
  std::vector<std::thread> workers;
  std::vector<SetValue> results;
  std::mutex mutex;
  for (int w = 0; w < 4; ++w) {
    workers.emplace_back([&] {
      for (int i = 0; i < 50; ++i) {
        SetValue local = make_set({shared, make_set({})});
        local = intersect(union2(local, shared), local);
        std::lock_guard<std::mutex> lock(mutex);
        results.push_back(std::move(local));
      }
    });
  }
  for (auto& worker : workers) worker.join();
  for (const SetValue& r : results) CHECK(r == results.front());
}

TEST_CASE("node limit guard") {
  const std::size_t old_limit = node_limit();
  set_node_limit(4);
  SetGraph g(5);
  CHECK_THROWS_AS(canon(g, 0), LimitError);
  const SetValue e = make_set({});
  CHECK_THROWS_AS(make_set({e, e, e, e, e}), LimitError);
  set_node_limit(old_limit);
  CHECK(canon(g, 0) == e);
}
