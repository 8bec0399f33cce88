#include "degulab/tournaments.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace degulab;

TEST_CASE("cyclic tournament formula") {
  const auto o2 = build_cyclic_tournament(2);
  CHECK(o2.forward(0, 0));
  CHECK_FALSE(o2.forward(0, 1));
  CHECK_FALSE(o2.forward(1, 0));
  CHECK(o2.forward(1, 1));

  const auto o4 = build_cyclic_tournament(4);
  // Row t = 2 (1-based) is J+ = {2, 3}.
  CHECK_FALSE(o4.forward(1, 0));
  CHECK(o4.forward(1, 1));
  CHECK(o4.forward(1, 2));
  CHECK_FALSE(o4.forward(1, 3));

  for (std::size_t m : {2u, 4u, 6u, 8u, 16u}) {
    const auto o = build_cyclic_tournament(m);
    for (std::size_t t = 0; t < m; ++t) {
      std::size_t row = 0, col = 0;
      for (std::size_t u = 0; u < m; ++u) {
        row += o.forward(t, u);
        col += o.forward(u, t);
      }
      CHECK(row * 2 == m);
      CHECK(col * 2 == m);
    }
  }
  CHECK_THROWS_AS(build_cyclic_tournament(3), ArgumentError);
  CHECK_THROWS_AS(build_cyclic_tournament(0), ArgumentError);
}

TEST_CASE("layer degrees are exact") {
  for (std::size_t mp : {2u, 3u, 5u})
    for (std::size_t m : {2u, 4u, 8u}) {
      const auto layer = build_layer(mp, m);
      const std::size_t d = (mp - 1) * m / 2;
      CHECK(layer.regular_degree() == d);
      for (std::size_t v = 0; v < layer.node_count(); ++v) {
        CHECK(layer.in_neighbours(v).size() == d);
        CHECK(layer.out_neighbours(v).size() == d);
      }
      // Tournament totality between blocks.
      for (std::size_t a = 0; a < layer.node_count(); ++a)
        for (std::size_t b = 0; b < layer.node_count(); ++b)
          if (a / m != b / m) CHECK(layer.points_to(a, b) != layer.points_to(b, a));
      CHECK(verify_layer(layer).pass);
    }
  CHECK(build_layer(2, 2).regular_degree() == 1);
  CHECK(build_layer(3, 2).regular_degree() == 2);
  CHECK(build_layer(2, 4).regular_degree() == 2);
  CHECK_THROWS_AS(build_layer(2, 3), ArgumentError);
}

TEST_CASE("a flipped edge is reported with both endpoints") {
  auto layer = build_layer(3, 4);
  layer.pair(0, 2).flip(1, 3);
  const auto rep = verify_layer(layer);
  CHECK_FALSE(rep.pass);
  std::vector<std::size_t> nodes;
  for (const auto& d : rep.deviating_nodes) nodes.push_back(d.node);
  CHECK(nodes == std::vector<std::size_t>{1, 11});
  REQUIRE(rep.non_regular_pairs.size() == 1);
  CHECK(rep.non_regular_pairs[0].i == 0);
  CHECK(rep.non_regular_pairs[0].j == 2);
}

TEST_CASE("layer JSON lists every block edge once with 1-based labels") {
  const auto layer = build_layer(3, 2);
  const auto j = nlohmann::json::parse(layer_to_json(layer));
  CHECK(j.size() == 3 * 4);
  for (const auto& e : j) {
    CHECK(e["from"][0].get<int>() >= 1);
    CHECK(e["to"][1].get<int>() <= 2);
    const std::size_t a = (e["from"][0].get<std::size_t>() - 1) * 2 + e["from"][1].get<std::size_t>() - 1;
    const std::size_t b = (e["to"][0].get<std::size_t>() - 1) * 2 + e["to"][1].get<std::size_t>() - 1;
    CHECK(layer.points_to(a, b));
  }
}
