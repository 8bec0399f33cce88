#include <cmath>
#include <filesystem>
#include <sstream>

#include "degulab/graph.hpp"
#include "degulab/graph_io.hpp"
#include "degulab/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace degulab;

namespace {

VertexSet vs(std::vector<Vertex> v, std::size_t n) { return VertexSet::make(std::move(v), n); }

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "degulab_unit";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("vertex sets are sorted and validated") {
  const auto s = vs({5, 1, 3}, 6);
  CHECK(s.vertices() == std::vector<Vertex>{1, 3, 5});
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(2));
  CHECK_THROWS_AS(vs({1, 1}, 6), ArgumentError);
  CHECK_THROWS_AS(vs({6}, 6), ArgumentError);
  CHECK(VertexSet::range(2, 5).vertices() == std::vector<Vertex>{2, 3, 4});
  CHECK(vs({1, 2}, 6).disjoint_from(vs({3, 4}, 6)));
  CHECK_FALSE(vs({1, 2}, 6).disjoint_from(vs({2, 4}, 6)));
  CHECK(vs({1, 2}, 6).subset_of(vs({0, 1, 2}, 6)));
}

TEST_CASE("weighted graphs are symmetric with a zero diagonal") {
  WeightedGraph g(4, GraphKind::weighted);
  g.set_weight(0, 2, 0.25);
  CHECK(g.weight(2, 0) == 0.25);
  CHECK(g.weight(1, 1) == 0.0);
  CHECK_THROWS_AS(g.set_weight(1, 1, 0.5), ArgumentError);
  CHECK_THROWS_AS(g.set_weight(0, 1, 1.5), ArgumentError);
  CHECK_THROWS_AS(g.set_weight(0, 1, -0.1), ArgumentError);
  g.set_weight(0, 1, 1.0 + 1e-12);
  CHECK(g.weight(0, 1) == 1.0);

  WeightedGraph s(3, GraphKind::simple);
  CHECK_THROWS_AS(s.set_weight(0, 1, 0.5), ArgumentError);
  s.add_edge(0, 1);
  CHECK(s.edge_count() == 1);
  CHECK(s.degree(0) == 1.0);
}

TEST_CASE("pair density examples") {
  const auto k = make_complete(8);
  const auto a = VertexSet::range(0, 4), b = VertexSet::range(4, 8);
  CHECK(pair_density(k, a, b) == 1.0);
  CHECK(pair_density(make_edgeless(8), a, b) == 0.0);
  CHECK_THROWS_AS(pair_density(k, a, VertexSet::range(3, 6)), ArgumentError);
  CHECK_THROWS_AS(pair_density(k, a, VertexSet()), ArgumentError);

  // Gallery pair: A^i complete to B^i, cross parts empty.
  WeightedGraph g(8, GraphKind::simple);
  for (Vertex x = 0; x < 2; ++x)
    for (Vertex y = 4; y < 6; ++y) g.add_edge(x, y);
  for (Vertex x = 2; x < 4; ++x)
    for (Vertex y = 6; y < 8; ++y) g.add_edge(x, y);
  CHECK(pair_density(g, a, b) == 0.5);
}

TEST_CASE("degree_into examples") {
  WeightedGraph star(5, GraphKind::simple);
  for (Vertex v = 1; v < 5; ++v) star.add_edge(0, v);
  CHECK(degree_into(star, 0, VertexSet::range(1, 5)) == 4.0);
  WeightedGraph iso(3, GraphKind::simple);
  CHECK(degree_into(iso, 0, VertexSet::range(1, 3)) == 0.0);
}

TEST_CASE("equitability examples") {
  CHECK(check_equitable(Partition::intervals(10, 5)));
  CHECK(check_equitable(Partition({0, 0, 0, 0, 1, 1, 1, 2, 2, 2}, 3)));
  CHECK_FALSE(check_equitable(Partition({0, 0, 0, 0, 0, 1, 1, 1, 2, 2}, 3)));
  CHECK_THROWS_AS(Partition({0, 2}, 3), ArgumentError);
  CHECK_THROWS_AS(Partition({0, 3}, 3), ArgumentError);
  const auto p = Partition::intervals(10, 3);
  CHECK(p.sizes() == std::vector<std::size_t>{4, 3, 3});
}

TEST_CASE("density conservation, symmetry and integrality on random graphs") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CounterRng rng(derive_seed(seed, Stream::fixtures));
    const std::size_t n = 10 + rng.below(20);
    const bool simple = seed % 2 == 0;
    const auto g = simple ? make_random_simple(n, 0.4, seed) : make_random_weighted(n, seed);
    std::vector<Vertex> perm(n);
    for (Vertex v = 0; v < n; ++v) perm[v] = v;
    rng.shuffle(std::span<Vertex>(perm));
    const std::size_t na = 1 + rng.below(n / 2), nb = 1 + rng.below(n / 2);
    const auto a = VertexSet::make({perm.begin(), perm.begin() + na}, n);
    const auto b = VertexSet::make({perm.begin() + na, perm.begin() + na + nb}, n);
    const double d = pair_density(g, a, b);
    double sum = 0.0;
    for (Vertex v : a) sum += degree_into(g, v, b);
    const double size = static_cast<double>(na * nb);
    CHECK(std::abs(d * size - sum) <= 1e-9 * size);
    CHECK(std::abs(d - pair_density(g, b, a)) <= 1e-12);
    CHECK(std::abs(d - oracle::density(g, a.vertices(), b.vertices())) <= 1e-12);
    if (simple) CHECK(std::abs(d * size - std::round(d * size)) <= 1e-9);
  }
}

TEST_CASE("graph files round-trip in every format") {
  const auto w = make_random_weighted(13, 4);
  const auto s = make_random_simple(13, 0.3, 4);
  for (const char* fmt : {"dgl", "csv"}) {
    const auto path = scratch(std::string("w.") + fmt).string();
    save_graph(path, w, parse_graph_format(fmt));
    CHECK(load_graph(path, "auto", 13) == w);
  }
  for (const char* fmt : {"dgl", "csv", "edges"}) {
    const auto path = scratch(std::string("s.") + fmt).string();
    save_graph(path, s, parse_graph_format(fmt));
    CHECK(load_graph(path, fmt, 13) == s);
    CHECK(load_graph(path, "auto", 13) == s);
  }
  CHECK_THROWS_AS(save_graph(scratch("w.edges").string(), w, GraphFormat::edge_list), ArgumentError);
  CHECK_THROWS_AS(load_graph(scratch("missing.dgl").string() + "x"), IoError);
  CHECK_THROWS_AS(parse_graph_format("xml"), ArgumentError);

  std::istringstream bad("DGL1\x05");
  CHECK_THROWS_AS(read_dgl(bad), IoError);
}

TEST_CASE("partitions and vertex sets round-trip as JSON") {
  const Partition p({2, 0, 1, 1, 0, 2}, 3);
  CHECK(partition_from_json(partition_to_json(p)) == p);
  const auto path = scratch("p.json").string();
  save_partition(path, p);
  CHECK(load_partition(path) == p);
  CHECK_THROWS_AS(partition_from_json("{\"n\":2,\"ell\":1,\"assign\":[0]}"), IoError);
  const auto v = vertex_set_from_json("[4, 1, 2]", 5);
  CHECK(v.vertices() == std::vector<Vertex>{1, 2, 4});
  CHECK(vertex_set_from_json("{\"vertices\":[0]}", 5).size() == 1);
  CHECK(vertex_set_from_json(vertex_set_to_json(v), 5) == v);
}

TEST_CASE("generators") {
  const std::size_t offs[] = {1, 2};
  const auto c = make_circulant(10, offs);
  for (Vertex v = 0; v < 10; ++v) CHECK(c.degree(v) == 4.0);
  CHECK(make_complete(5).edge_count() == 10);
  CHECK(make_random_simple(30, 0.5, 9) == make_random_simple(30, 0.5, 9));
  CHECK_FALSE(make_random_simple(30, 0.5, 9) == make_random_simple(30, 0.5, 10));
}
