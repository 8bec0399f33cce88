#include <algorithm>

#include "degulab/regular_hosts.hpp"
#include "degulab/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace degulab;

namespace {

std::vector<std::size_t> degrees(const WeightedGraph& g) {
  std::vector<std::size_t> d;
  for (Vertex v = 0; v < g.order(); ++v) d.push_back(static_cast<std::size_t>(g.degree(v)));
  return d;
}

}  // namespace

TEST_CASE("random equipartitions of regular graphs") {
  const auto e = random_equipartition_degularity(make_edgeless(30), 5, 0.0, 1);
  CHECK(e.all_pairs_degular);
  CHECK(check_equitable(e.partition));
  CHECK_FALSE(e.warnings.empty());

  const auto k = random_equipartition_degularity(make_complete(31), 4, 0.0, 2);
  CHECK(k.all_pairs_degular);

  const std::size_t offs[] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24, 25,
                              26, 27, 28, 29, 30, 31, 32, 33, 34, 35, 36, 37, 38, 39, 40, 41, 42, 43, 44, 45, 46, 47, 48,
                              49, 50};
  const auto c = make_circulant(1000, offs);
  std::size_t passes = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) passes += random_equipartition_degularity(c, 10, 0.1, seed).all_pairs_degular;
  CHECK(passes >= 9);

  CHECK(random_equipartition_degularity(c, 10, 0.1, 4).partition == random_equipartition_degularity(c, 10, 0.1, 4).partition);
  CHECK_THROWS_AS(random_equipartition_degularity(c, 1, 0.1, 0), ArgumentError);
  CHECK_THROWS_AS(random_equipartition_degularity(make_edgeless(3), 4, 0.1, 0), ArgumentError);
}

TEST_CASE("degree sequence realization") {
  const auto tri = realize_degree_sequence({2, 2, 2});
  REQUIRE(tri.graphic);
  CHECK(tri.graph->edge_count() == 3);

  const auto star = realize_degree_sequence({3, 1, 1, 1});
  REQUIRE(star.graphic);
  CHECK(star.graph->weight(0, 1) == 1.0);
  CHECK(star.graph->weight(0, 3) == 1.0);
  CHECK(star.graph->weight(1, 2) == 0.0);

  const auto no = realize_degree_sequence({3, 3, 1, 1});
  CHECK_FALSE(no.graphic);
  CHECK(no.violated_k == std::optional<std::size_t>(2));
  CHECK(realize_degree_sequence({1, 1, 1}).odd_sum);
  CHECK_THROWS_AS(realize_degree_sequence({3, 1, 1}), ArgumentError);

  CounterRng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.below(12);
    std::vector<std::size_t> d(n);
    for (auto& x : d) x = rng.below(n);
    const auto r = realize_degree_sequence(d);
    CHECK(r.graphic == oracle::graphic(d));
    if (!r.graphic) continue;
    auto got = degrees(*r.graph);
    CHECK(got == d);
  }
}

TEST_CASE("embedding into an almost-regular host") {
  const auto k = embed_into_almost_regular(make_complete(6));
  CHECK(k.pass);
  const auto w = k.host.induced(VertexSet::range(6, 12));
  CHECK(w == make_complete(6));
  for (Vertex v = 0; v < 6; ++v)
    for (Vertex x = 6; x < 12; ++x) CHECK(k.host.weight(v, x) == 0.0);

  const auto one = embed_into_almost_regular(make_edgeless(1));
  CHECK(one.host.order() == 2);
  CHECK(one.host.edge_count() == 0);
  CHECK(one.pass);

  CHECK_THROWS_AS(embed_into_almost_regular(make_random_weighted(5, 1)), ArgumentError);
  CHECK_THROWS_AS(embed_into_almost_regular(WeightedGraph(0, GraphKind::simple)), ArgumentError);

  CounterRng rng(31);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t n = 1 + rng.below(50);
    const auto g = make_random_simple(n, 0.05 + 0.9 * rng.uniform01(), seed);
    const auto r = embed_into_almost_regular(g);
    CHECK(r.induced_ok);
    CHECK(r.host.induced(VertexSet::range(0, static_cast<Vertex>(n))) == g);
    CHECK(r.v_degrees_ok);
    const auto d = degrees(r.host);
    const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
    CHECK(*hi - *lo <= 1);
    for (std::size_t x = 0; x < 2 * n; ++x) {
      CHECK(d[x] + 1 >= n);
      CHECK(d[x] <= n);
      if (x < n) CHECK(d[x] == n - 1);
    }
    CHECK(r.pass);
  }
}
