#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "hyperlab/components.hpp"
#include "hyperlab/errors.hpp"
#include "hyperlab/hypergraph.hpp"
#include "oracles.hpp"

using namespace hyperlab;

TEST_CASE("sampling extremes") {
  CHECK(sample_hypergraph(10, 3, 0.0, 5).empty());
  const Hypergraph full = sample_hypergraph(5, 3, 1.0, 5);
  CHECK(full.edge_count() == 10);
  for (std::size_t i = 0; i < full.edge_count(); ++i) CHECK(full.edge_rank(i) == i);
  CHECK_THROWS_AS(sample_hypergraph(3, 4, 0.5, 1), ValidationError);
  CHECK_THROWS_AS(sample_hypergraph(5, 3, 1.5, 1), ValidationError);
}

TEST_CASE("sampling is deterministic per seed") {
  const TheoryParams t = TheoryParams::make(100, 3, 2, 0.3);
  CHECK(sample_hypergraph(t, 7) == sample_hypergraph(t, 7));
  CHECK(!(sample_hypergraph(t, 7) == sample_hypergraph(t, 8)));
}

TEST_CASE("mean edge count at p0") {
  const TheoryParams t = TheoryParams::make(100, 3, 2, 0.3);
  const double N = static_cast<double>(binomial_u64(100, 3));
  double sum = 0.0;
  const int seeds = 1000;
  for (int s = 0; s < seeds; ++s) sum += static_cast<double>(sample_hypergraph(100, 3, t.p0, s).edge_count());
  const double mean = sum / seeds;
  const double sd = std::sqrt(N * t.p0 * (1 - t.p0) / seeds);
  CHECK(std::abs(mean - N * t.p0) < 5 * sd);
}

TEST_CASE("per-rank inclusion frequency is uniform") {
  // chi-square style check on a small rank space
  const std::uint32_t n = 7, k = 3;
  const double p = 0.3;
  const int reps = 20000;
  std::vector<int> hits(binomial_u64(n, k), 0);
  for (int s = 0; s < reps; ++s) {
    const Hypergraph h = sample_hypergraph(n, k, p, 1000 + s);
    for (Rank r : h.ranks()) ++hits[r];
  }
  const double sd = std::sqrt(reps * p * (1 - p));
  for (int c : hits) CHECK(std::abs(c - reps * p) < 5 * sd);
}

TEST_CASE("text format round trip") {
  const Hypergraph h = sample_hypergraph(30, 4, 0.01, 3);
  std::stringstream ss;
  write_hypergraph(ss, h);
  CHECK(read_hypergraph(ss) == h);
}

TEST_CASE("reader rejects malformed files") {
  const auto bad = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(read_hypergraph(in), ValidationError);
  };
  bad("");
  bad("5 3 1\n1 2\n");
  bad("5 3 1\n1 2 9\n");
  bad("5 3 1\n2 1 3\n");
  bad("5 3 2\n1 2 4\n1 2 3\n");
  bad("5 3 2\n1 2 3\n1 2 3\n");
  bad("5 3 2\n1 2 3\n");
  bad("5 3 1\n1 2 3\n1 2 4\n");
  bad("5 x 1\n1 2 3\n");
}

TEST_CASE("from_edges sorts and rejects duplicates") {
  const Hypergraph h = Hypergraph::from_edges(5, 3, {{3, 4, 5}, {1, 2, 3}});
  CHECK(h.edge_rank(0) < h.edge_rank(1));
  CHECK(h.contains(VertexSet{3, 4, 5}));
  CHECK(!h.contains(VertexSet{1, 2, 4}));
  CHECK_THROWS_AS(Hypergraph::from_edges(5, 3, {{1, 2, 3}, {1, 2, 3}}), ValidationError);
  CHECK_THROWS_AS(Hypergraph::from_edges(5, 3, {{1, 2}}), ValidationError);
}

TEST_CASE("j_components examples") {
  SUBCASE("two triangles sharing a vertex, j = 2") {
    const Hypergraph h = Hypergraph::from_edges(5, 3, {{1, 2, 3}, {3, 4, 5}});
    const Decomposition d = j_components(h, 2);
    REQUIRE(d.components.size() == 2);
    for (const auto& c : d.components) {
      CHECK(c.size == 1);
      CHECK(c.order == 3);
      CHECK(c.is_hypertree);
      CHECK(!c.wheel_witness);
    }
    CHECK(d.isolated_jsets == 10 - 6);
  }
  SUBCASE("same edges, j = 1") {
    const Hypergraph h = Hypergraph::from_edges(5, 3, {{1, 2, 3}, {3, 4, 5}});
    const Decomposition d = j_components(h, 1);
    REQUIRE(d.components.size() == 1);
    CHECK(d.components[0].size == 2);
    CHECK(d.components[0].order == 5);
    CHECK(d.components[0].is_hypertree);
  }
  SUBCASE("three triples on four vertices") {
    const Hypergraph h = Hypergraph::from_edges(4, 3, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}});
    const Decomposition d = j_components(h, 2);
    REQUIRE(d.components.size() == 1);
    const auto& c = d.components[0];
    CHECK(c.size == 3);
    CHECK(c.order == 6);
    CHECK(!c.is_hypertree);
    REQUIRE(c.wheel_witness);
    CHECK(c.wheel_witness->length() == 3);
    CHECK(c.wheel_witness->is_valid());
  }
}

TEST_CASE("find_wheel examples") {
  CHECK(!find_wheel(2, std::vector<VertexSet>{{1, 2, 3}, {2, 3, 4}}));
  CHECK(!find_wheel(2, std::vector<VertexSet>{{1, 2, 3}}));
  const auto w = find_wheel(2, std::vector<VertexSet>{{1, 2, 3}, {1, 2, 4}, {1, 3, 4}});
  REQUIRE(w);
  const Wheel expected{{{1, 2, 3}, {1, 2, 4}, {1, 3, 4}}, {{1, 2}, {1, 4}, {1, 3}}};
  CHECK(expected.is_valid());
  CHECK(same_wheel(*w, expected));
}

TEST_CASE("wheel canonical form ignores rotation and reversal") {
  const Wheel w{{{1, 2, 3}, {1, 2, 4}, {1, 3, 4}}, {{1, 2}, {1, 4}, {1, 3}}};
  const Wheel rotated{{{1, 2, 4}, {1, 3, 4}, {1, 2, 3}}, {{1, 4}, {1, 3}, {1, 2}}};
  // reversed traversal: K3, K2, K1 with the j-sets between them
  const Wheel reversed{{{1, 3, 4}, {1, 2, 4}, {1, 2, 3}}, {{1, 4}, {1, 2}, {1, 3}}};
  REQUIRE(rotated.is_valid());
  REQUIRE(reversed.is_valid());
  CHECK(w.canonical() == rotated.canonical());
  CHECK(w.canonical() == reversed.canonical());
  const Wheel invalid{{{1, 2, 3}, {1, 2, 4}, {1, 3, 4}}, {{1, 2}, {1, 3}, {1, 4}}};
  CHECK(!invalid.is_valid());
}

TEST_CASE("graph case matches breadth-first search components") {
  for (double c : {0.5, 0.9, 1.5}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const std::uint32_t n = 50;
      const Hypergraph h = sample_hypergraph(n, 2, c / n, seed);
      std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
      for (std::size_t i = 0; i < h.edge_count(); ++i) edges.emplace_back(h.edge(i)[0], h.edge(i)[1]);
      const auto label = oracle::graph_components(n, edges);
      const Decomposition d = j_components(h, 1);

      // same partition of touched vertices
      std::map<std::uint32_t, std::uint32_t> oracle_to_ours;
      for (std::size_t t = 0; t < d.jset_ranks.size(); ++t) {
        const Vertex v = static_cast<Vertex>(d.jset_ranks[t] + 1);
        const auto [it, fresh] = oracle_to_ours.emplace(label[v], d.jset_component[t]);
        REQUIRE(it->second == d.jset_component[t]);
      }
      REQUIRE(oracle_to_ours.size() == d.components.size());
      // sizes: edges per oracle component
      std::map<std::uint32_t, std::uint64_t> oracle_size, oracle_order;
      for (auto [a, b] : edges) ++oracle_size[label[a]];
      for (std::uint32_t v = 1; v <= n; ++v) {
        if (oracle_size.count(label[v])) ++oracle_order[label[v]];
      }
      for (auto [root, id] : oracle_to_ours) {
        REQUIRE(d.components[id].size == oracle_size[root]);
        REQUIRE(d.components[id].order == oracle_order[root]);
        REQUIRE(d.components[id].is_hypertree == (oracle_order[root] == oracle_size[root] + 1));
      }
      REQUIRE(d.isolated_jsets == n - d.jset_ranks.size());
    }
  }
}

TEST_CASE("component invariants on sampled hypergraphs") {
  const std::pair<std::uint32_t, std::uint32_t> grid[] = {{2, 1}, {3, 1}, {3, 2}, {4, 2}, {4, 3}};
  for (auto [k, j] : grid) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const std::uint32_t n = 18;
      const TheoryParams t = TheoryParams::make(n, k, j, 0.3);
      // push towards the critical window so cycles appear
      const Hypergraph h = sample_hypergraph(n, k, std::min(1.0, 1.4 * t.p0), seed);
      const Decomposition d = j_components(h, j);
      std::uint64_t total = 0;
      std::vector<int> seen(h.edge_count(), 0);
      for (const auto& c : d.components) {
        REQUIRE(c.order <= 1 + t.c0 * c.size);
        REQUIRE(c.is_hypertree == (c.order == 1 + t.c0 * c.size));
        REQUIRE(c.is_hypertree == !c.wheel_witness.has_value());
        const auto edges = d.edges_of(h, c.id);
        REQUIRE(edges.size() == c.size);
        REQUIRE(find_wheel(j, edges).has_value() == !c.is_hypertree);
        if (c.wheel_witness) {
          REQUIRE(c.wheel_witness->is_valid());
          for (const auto& e : c.wheel_witness->edges) REQUIRE(h.contains(e));
        }
        total += c.size;
      }
      REQUIRE(total == h.edge_count());
      for (auto id : d.edge_component) REQUIRE(id < d.components.size());
    }
  }
}

TEST_CASE("parallel j-set collection matches serial reference") {
  const Hypergraph h = sample_hypergraph(120, 3, 0.02, 11);
  REQUIRE(h.edge_count() > 1000);
  CHECK(detail::collect_jset_ranks(h, 2, true) == detail::collect_jset_ranks(h, 2, false));
  CHECK(detail::collect_jset_ranks(h, 1, true) == detail::collect_jset_ranks(h, 1, false));
}

TEST_CASE("wheel census") {
  CHECK(brute_force_wheel_census(4, 3, 2, 2) == 0);
  CHECK(brute_force_wheel_census(5, 2, 1, 3) == 10);
  // cycles of length 4 in K_6: 6!/(2*4*2!) choose 4 vertices times 3 cycles
  CHECK(brute_force_wheel_census(6, 2, 1, 4) == 15 * 3);
  // three of the four triples on a 4-set, in the one cyclic order they allow
  for (std::uint32_t n = 4; n <= 8; ++n) CHECK(brute_force_wheel_census(n, 3, 2, 3) == 4 * binomial_u64(n, 4));
  for (std::uint32_t ell = 2; ell <= 4; ++ell) {
    CHECK(detail::ordered_wheel_count(6, 2, 1, ell) == 2 * ell * brute_force_wheel_census(6, 2, 1, ell));
    CHECK(detail::ordered_wheel_count(6, 3, 2, ell) == 2 * ell * brute_force_wheel_census(6, 3, 2, ell));
  }
  CHECK_THROWS_AS(brute_force_wheel_census(11, 3, 2, 3), ResourceError);
  CHECK_THROWS_AS(brute_force_wheel_census(6, 3, 2, 5), ResourceError);
  CHECK_THROWS_AS(brute_force_wheel_census(6, 3, 2, 1), ValidationError);
}
