#include <cmath>

#include "degulab/pair_analysis.hpp"
#include "degulab/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace degulab;

namespace {

struct RandomPair {
  WeightedGraph g;
  VertexSet a, b;
};

RandomPair random_pair(std::size_t na, std::size_t nb, bool simple, std::uint64_t seed, double p = 0.5) {
  RandomPair r;
  const std::size_t n = na + nb;
  r.g = simple ? make_random_simple(n, p, seed) : make_random_weighted(n, seed);
  r.a = VertexSet::range(0, static_cast<Vertex>(na));
  r.b = VertexSet::range(static_cast<Vertex>(na), static_cast<Vertex>(n));
  return r;
}

}  // namespace

TEST_CASE("degularity examples") {
  const auto k = make_complete(10);
  const auto a = VertexSet::range(0, 5), b = VertexSet::range(5, 10);
  const auto v = check_degular(k, a, b, 0.0);
  CHECK(v.pass);
  CHECK(v.violators_a.empty());
  CHECK(v.violators_b.empty());

  const auto gal = gallery_pair(4);
  const auto gv = check_degular(gal.graph, gal.a, gal.b, 0.0);
  CHECK(gv.pass);
  CHECK(gv.violators_a.empty());

  // One vertex of A sees all of B, the rest see nothing.
  WeightedGraph g(20, GraphKind::simple);
  for (Vertex y = 10; y < 20; ++y) g.add_edge(0, y);
  const auto bad = check_degular(g, VertexSet::range(0, 10), VertexSet::range(10, 20), 0.05);
  CHECK_FALSE(bad.pass);
  CHECK(bad.violators_a.size() >= 1);
  CHECK(bad.high_a == std::vector<Vertex>{0});

  CHECK_THROWS_AS(check_degular(k, a, VertexSet::range(4, 8), 0.1), ArgumentError);
  CHECK_THROWS_AS(check_degular(k, a, VertexSet(), 0.1), ArgumentError);
  CHECK_THROWS_AS(check_degular(k, a, b, -0.1), ArgumentError);
}

TEST_CASE("degularity agrees with the oracle, is monotone and has minimal violator sets") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const bool simple = seed % 2 == 0;
    const auto p = random_pair(5 + seed % 7, 4 + seed % 5, simple, seed, 0.2 + 0.01 * static_cast<double>(seed % 50));
    for (double eps : {0.0, 0.05, 0.1, 0.2, 0.3, 0.5}) {
      const auto v = check_degular(p.g, p.a, p.b, eps);
      CHECK(v.pass == oracle::degular(p.g, p.a.vertices(), p.b.vertices(), eps));
      CHECK(v.violators_a == oracle::violators(p.g, p.a.vertices(), p.b.vertices(), eps));
      CHECK(v.violators_b == oracle::violators(p.g, p.b.vertices(), p.a.vertices(), eps));
      if (v.pass)
        for (double e2 : {eps + 0.01, eps + 0.1, 1.0}) CHECK(check_degular(p.g, p.a, p.b, e2).pass);
      // Every reported violator breaks the bound on its own.
      const double mean = v.edge_mass / static_cast<double>(v.size_a);
      for (Vertex x : v.violators_a)
        CHECK(std::abs(degree_into(p.g, x, p.b) - mean) > eps * static_cast<double>(v.size_b));
    }
  }
}

TEST_CASE("exhaustive regularity examples") {
  const auto k = make_complete(16);
  const auto a = VertexSet::range(0, 8), b = VertexSet::range(8, 16);
  for (double eps : {0.01, 0.3, 0.9}) CHECK(check_regular_exhaustive(k, a, b, eps).pass);

  const auto gal = gallery_pair(4);
  const auto rv = check_regular_exhaustive(gal.graph, gal.a, gal.b, 0.499);
  CHECK_FALSE(rv.pass);
  REQUIRE(rv.witness);
  CHECK(rv.witness->a_sub == gal.a1);
  CHECK(rv.witness->b_sub == gal.b1);
  CHECK(rv.witness->density_sub == 1.0);
  CHECK(rv.witness->density_full == 0.5);

  const auto big = make_complete(26);
  CHECK_THROWS_AS(check_regular_exhaustive(big, VertexSet::range(0, 13), VertexSet::range(13, 26), 0.1), CapacityError);
}

TEST_CASE("exhaustive regularity matches the brute-force oracle") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto p = random_pair(6, 6, seed % 3 != 0, seed, 0.5);
    for (double eps : {0.3, 0.45, 0.6}) {
      const auto v = check_regular_exhaustive(p.g, p.a, p.b, eps);
      CHECK(v.pass == oracle::regular(p.g, p.a.vertices(), p.b.vertices(), eps));
      if (!v.pass) {
        REQUIRE(v.witness);
        const auto& w = *v.witness;
        CHECK(static_cast<double>(w.a_sub.size()) > eps * 6);
        CHECK(static_cast<double>(w.b_sub.size()) > eps * 6);
        CHECK(std::abs(oracle::density(p.g, w.a_sub.vertices(), w.b_sub.vertices()) -
                       oracle::density(p.g, p.a.vertices(), p.b.vertices())) > eps);
      }
    }
  }
}

TEST_CASE("regular pairs are 2 eps-degular with small parts") {
  std::size_t regular_seen = 0;
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const auto p = random_pair(8, 8, true, seed, 0.5);
    for (double eps : {0.1, 0.25, 0.4, 0.45}) {
      if (!check_regular_exhaustive(p.g, p.a, p.b, eps).pass) continue;
      ++regular_seen;
      const auto d = check_degular(p.g, p.a, p.b, 2 * eps);
      CHECK(d.pass);
      // A_1 / A_2: vertices more than eps|B| below / above the mean.
      const auto v = check_degular(p.g, p.a, p.b, eps);
      CHECK(count_within(v.low_a.size(), eps, 8));
      CHECK(count_within(v.high_a.size(), eps, 8));
    }
  }
  CHECK(regular_seen > 0);
}

TEST_CASE("degree witnesses") {
  const auto k = make_complete(12);
  CHECK_FALSE(degree_witness_irregularity(k, VertexSet::range(0, 6), VertexSet::range(6, 12), 0.1));
  const auto gal = gallery_pair(4);
  CHECK_FALSE(degree_witness_irregularity(gal.graph, gal.a, gal.b, 0.4));
  CHECK_FALSE(degree_witness_irregularity(gal.graph, gal.a, gal.b, 1.0));

  std::size_t found = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto p = random_pair(8, 8, seed % 2 == 0, seed, 0.15 + 0.007 * static_cast<double>(seed));
    for (double eps : {0.05, 0.1, 0.2}) {
      const auto w = degree_witness_irregularity(p.g, p.a, p.b, eps);
      if (!check_degular(p.g, p.a, p.b, 2 * eps).pass) CHECK(w.has_value());
      if (!w) continue;
      ++found;
      // Soundness: the witness violates the regularity inequality.
      const bool on_a = w->origin[0] == 'A';
      const auto& sub = on_a ? w->a_sub : w->b_sub;
      CHECK(static_cast<double>(sub.size()) > eps * 8);
      const double dev = std::abs(oracle::density(p.g, w->a_sub.vertices(), w->b_sub.vertices()) -
                                  oracle::density(p.g, p.a.vertices(), p.b.vertices()));
      CHECK(dev > eps);
      CHECK(std::abs(dev - w->deviation) < 1e-12);
    }
  }
  CHECK(found > 0);
}

TEST_CASE("one-sided subset density bound") {
  const auto k = make_complete(12);
  const auto a = VertexSet::range(0, 6), b = VertexSet::range(6, 12);
  const auto r = subset_density_bound_check(k, a, b, VertexSet::range(0, 2), 0.1);
  CHECK(r.lhs == 0.0);
  CHECK(r.holds);
  const auto id = subset_density_bound_check(make_random_weighted(12, 3), a, b, a, 1.0);
  CHECK(id.lhs == 0.0);
  CHECK(id.bound == 2.0);

  WeightedGraph g(20, GraphKind::simple);
  for (Vertex y = 10; y < 20; ++y) g.add_edge(0, y);
  CHECK_THROWS_AS(subset_density_bound_check(g, VertexSet::range(0, 10), VertexSet::range(10, 20),
                                             VertexSet::range(0, 2), 0.05),
                  PreconditionError);
  CHECK_THROWS_AS(subset_density_bound_check(k, a, b, VertexSet::range(5, 8), 0.1), ArgumentError);

  CounterRng rng(77);
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; checked < 300; ++seed) {
    const auto p = random_pair(6 + seed % 6, 6 + seed % 4, seed % 2 == 0, seed, 0.5);
    const double eps = 0.15 + 0.05 * static_cast<double>(seed % 6);
    if (!check_degular(p.g, p.a, p.b, eps).pass) continue;
    std::vector<Vertex> xs;
    for (Vertex v : p.a)
      if (rng.below(2)) xs.push_back(v);
    if (xs.empty()) xs.push_back(p.a[0]);
    const auto x = VertexSet::make(xs, p.g.order());
    const auto rep = subset_density_bound_check(p.g, p.a, p.b, x, eps);
    CHECK(rep.holds);
    CHECK(rep.lhs <= rep.bound + 1e-9);
    ++checked;
  }
}

TEST_CASE("gallery pair layout") {
  const auto g = gallery_pair(2);
  CHECK(g.graph.order() == 8);
  CHECK(pair_density(g.graph, g.a, g.b) == 0.5);
  CHECK(pair_density(g.graph, g.a1, g.b1) == 1.0);
  CHECK(pair_density(g.graph, g.a1, g.b2) == 0.0);
}
