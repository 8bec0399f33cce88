#include <cmath>

#include "degulab/construction.hpp"
#include "degulab/partition_toolkit.hpp"
#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"

using namespace degulab;

TEST_CASE("schedule examples match the recurrence oracle") {
  const auto a = compute_schedule(3, 9999);
  CHECK(a.m == std::vector<std::uint64_t>{2, 4, 8, 16});
  CHECK(a.big_m == std::vector<std::uint64_t>{0, 2, 2, 2});
  CHECK(a.d == std::vector<std::uint64_t>{0, 1, 3, 7});
  CHECK(a.separator_degrees() == std::vector<std::uint64_t>{1, 3});

  const auto b = compute_schedule(4, 1);
  CHECK(b.m == std::vector<std::uint64_t>{2, 4, 8, 32, 8192});
  CHECK(b.big_m == std::vector<std::uint64_t>{0, 2, 2, 4, 256});
  CHECK(b.d == std::vector<std::uint64_t>{0, 1, 3, 14, 3968});

  for (std::uint64_t c : {1u, 2u, 7u, 9999u}) {
    const auto one = compute_schedule(1, c);
    CHECK(one.m == std::vector<std::uint64_t>{2, 4});
  }

  for (std::size_t s = 1; s <= 4; ++s)
    for (std::uint64_t c : {1u, 2u, 3u, 9999u}) {
      const auto sc = compute_schedule(s, c);
      const auto o = oracle::schedule(s, c);
      CHECK(sc.m == o.m);
      for (std::size_t r = 1; r <= s; ++r) {
        CHECK(sc.big_m[r] == o.big_m[r - 1]);
        CHECK(sc.d[r] == o.d[r - 1]);
        CHECK(sc.d_odd[r] == (o.d[r - 1] % 2 == 1));
        CHECK(sc.m[r] > sc.m[r - 1]);
        CHECK(4 * sc.d[r] >= sc.m[r]);
        if (r >= 2) CHECK(sc.d[r] > sc.d[r - 1]);
      }
    }
  CHECK_THROWS_AS(compute_schedule(5, 1), SizeError);
  CHECK_THROWS_AS(compute_schedule(0, 1), ArgumentError);
  CHECK_THROWS_AS(compute_schedule(2, 0), ArgumentError);
}

TEST_CASE("level structure cells") {
  const auto sc = compute_schedule(3, 9999);
  const LevelStructure ls(32, sc);
  CHECK(ls.cell_count(3) == 16);
  CHECK(ls.cell_size(1) == 8);
  CHECK(ls.cell(2, 1, 1).vertices() == std::vector<Vertex>{12, 13, 14, 15});
  CHECK(ls.cell_of(2, 13) == 3);
  CHECK(check_equitable(ls.partition(3)));
  CHECK_THROWS_AS(LevelStructure(24, sc), ArgumentError);
}

TEST_CASE("first layer weights") {
  const auto b = build_construction(16, 1, 0.01, 9999, 1);
  CHECK(b.wiring.empty());
  const auto x0 = VertexSet::range(0, 8), x1 = VertexSet::range(8, 16);
  const auto g1 = b.layer_graph(1);
  CHECK(std::abs(oracle::density(g1, {0, 1, 2, 3}, {4, 5, 6, 7}) - 0.1) < 1e-15);
  CHECK(std::abs(oracle::density(g1, {8, 9, 10, 11}, {12, 13, 14, 15}) - 0.9) < 1e-15);
  CHECK(pair_density(g1, x0, x1) == 0.0);
  CHECK(g1 == b.total);
  CHECK(verify_homogeneity(b).pass);
}

TEST_CASE("construction example bundle") {
  const auto b = build_construction(16, 3, 0.01, 9999, 1);
  const auto rep = verify_homogeneity(b);
  CHECK(rep.pass);
  CHECK(rep.sum_decomposition_ok);
  CHECK(rep.top_level_constant);
  CHECK(rep.layers_checked == 3);
  for (Vertex x = 0; x < 16; ++x)
    for (Vertex y = 0; y < 16; ++y) {
      const double w = b.total.weight(x, y);
      if (x == y) continue;
      const double base = (x < 8 && y < 8) ? 0.1 : (x >= 8 && y >= 8) ? 0.9 : 0.0;
      const double k = (w - base) / 0.01;
      CHECK(std::abs(k - std::round(k)) < 1e-9);
      CHECK(std::round(k) >= 0);
      CHECK(std::round(k) <= 2);
    }
  CHECK_THROWS_AS(build_construction(12, 3, 0.01, 9999, 1), ArgumentError);
  CHECK_THROWS_AS(build_construction(16, 3, 0.6, 9999, 1), ArgumentError);
  CHECK_THROWS_AS(build_construction(16, 3, 0.0, 9999, 1), ArgumentError);
}

TEST_CASE("homogeneity and determinism on toy bundles") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed)
    for (auto sharing : {SeparatorSharing::shared_per_level, SeparatorSharing::per_target}) {
      ConstructionOptions opt;
      opt.sharing = sharing;
      const auto b = build_construction(64, 3, 0.02, 1, seed, opt);
      CHECK(verify_homogeneity(b).pass);
      const auto again = build_construction(64, 3, 0.02, 1, seed, opt);
      CHECK(again.total == b.total);
      CHECK(construction_manifest(again) == construction_manifest(b));

      // Between distinct X_s cells every total weight is the same.
      const auto& ls = b.levels;
      const std::size_t cs = ls.cell_size(3);
      for (Vertex x = 0; x < 64; ++x)
        for (Vertex y = 0; y < 64; ++y)
          if (x / cs != y / cs)
            CHECK(b.total.weight(x, y) == b.total.weight(static_cast<Vertex>(x / cs * cs), static_cast<Vertex>(y / cs * cs)));
    }
}

TEST_CASE("total-only bundles reproduce the layers") {
  ConstructionOptions lean;
  lean.materialize_layers = false;
  const auto a = build_construction(64, 3, 0.02, 1, 4);
  const auto b = build_construction(64, 3, 0.02, 1, 4, lean);
  CHECK_FALSE(b.has_layers());
  CHECK(a.total == b.total);
  for (std::size_t r = 1; r <= 3; ++r) CHECK(a.layer_graph(r) == b.layer_graph(r));
  CHECK(verify_homogeneity(b).pass);
}

TEST_CASE("wiring follows the tournament and the separator rows") {
  const auto b = build_construction(64, 3, 0.02, 1, 2);
  for (const auto& w : b.wiring) {
    const std::size_t m = w.tournament.node_count();
    for (std::size_t j = 0; j < m; ++j) {
      const auto in = w.tournament.in_neighbours(j);
      CHECK(std::vector<std::uint32_t>(in.begin(), in.end()) == w.in_neighbours[j]);
      for (std::size_t k = 0; k < in.size(); ++k) CHECK(w.row_of[j * m + in[k]] == static_cast<std::int32_t>(k));
    }
  }
}

TEST_CASE("an injected fault names its cell pair") {
  auto b = build_construction(64, 3, 0.02, 1, 1);
  const double w = b.stored_layer(3).weight(0, 63);
  b.stored_layer(3).set_weight(0, 63, w == 0.0 ? 0.02 : 0.0);
  const auto rep = verify_homogeneity(b);
  CHECK_FALSE(rep.pass);
  REQUIRE_FALSE(rep.violations.empty());
  bool named = false;
  for (const auto& v : rep.violations)
    if (v.layer == 3 && v.cell_a == b.levels.cell_of(3, 0) && v.cell_b == b.levels.cell_of(3, 63)) named = true;
  CHECK(named);
}

TEST_CASE("degree-sum audit") {
  const auto b = build_construction(16, 3, 0.01, 9999, 1);
  const auto top = audit_degree_sums(b, 3);
  CHECK(top.mode == "vacuous");
  CHECK(top.target == 0.0);
  CHECK(top.max_abs_deviation == 0.0);
  CHECK(top.pass);
  const auto r1 = audit_degree_sums(b, 1);
  CHECK(std::abs(r1.target - 0.01) < 1e-15);
  CHECK(r1.pass);
  CHECK(r1.max_abs_deviation <= r1.deviation_bound + 1e-12);
  CHECK_THROWS_AS(audit_degree_sums(b, 0), ArgumentError);
  CHECK_THROWS_AS(audit_degree_sums(b, 4), ArgumentError);

  // Independent recomputation of one layered sum with x outside X.
  const auto x_cell = b.levels.cell(0, 1);
  const Vertex x = 0;
  double sum = 0.0;
  for (std::size_t r = 2; r <= 3; ++r) sum += oracle::density(b.layer_graph(r), {x}, x_cell.vertices());
  CHECK(std::abs(sum - r1.target) <= r1.max_abs_deviation + 1e-12);
}

TEST_CASE("toy schedules only reach generalized separator levels") {
  // D_r is even only when M_r >= 4. The first such case (c = 1, s = 4) needs a
  // (256, 14)-separator, which cannot be 0.2-balanced: 256 weight-7 columns of
  // length 14 at pairwise distance >= 6 exceed the Johnson bound.
  const auto b = build_construction(64, 3, 0.02, 1, 1);
  CHECK_FALSE(b.exact_from(1));
  CHECK(audit_degree_sums(b, 1).mode == "generalized");
  CHECK(audit_degree_sums(b, 2).mode == "generalized");
  CHECK_FALSE(audit_degree_sums(b, 1).asserted);
  SeparatorBuildOptions quick;
  quick.retry_cap = 20;
  CHECK_THROWS_AS(build_separator(256, 14, 1, 1, quick), ConstructionError);
}

TEST_CASE("tower values") {
  CHECK(tower_value(2, 0.5).approx == 1.0);
  CHECK(tower_value(2, 0).approx == 1.0);
  CHECK(tower_value(2, 1).approx == 2.0);
  CHECK(tower_value(2, 3).approx == 16.0);
  CHECK(tower_value(2, 3).exact == std::optional<std::string>("16"));
  CHECK(tower_value(2, 4).exact == std::optional<std::string>("65536"));
  const auto t5 = tower_value(2, 5);
  REQUIRE(t5.exact);
  CHECK(t5.exact->size() == 19729);
  CHECK(t5.exact->substr(0, 5) == "20035");
  CHECK(std::isinf(t5.approx));
  CHECK(std::abs(t5.log10_value - 65536 * std::log10(2.0)) < 1e-6);
  CHECK(tower_value(3, 1).approx == 3.0);
  CHECK(tower_value(1.5, 1).approx == 1.5);
  // Literal: 3^tow(1) = 9; self-referential: 3^tow_3(1) = 27.
  CHECK(tower_value(3, 2).approx == 9.0);
  CHECK(tower_value(3, 2, TowerVariant::self_referential).approx == 27.0);
  CHECK_THROWS_AS(tower_value(1, 2), ArgumentError);
  CHECK_THROWS_AS(tower_value(2, -1), ArgumentError);
  const auto big = tower_value(2, 6);
  CHECK(std::isinf(big.log10_value));
  CHECK(big.log10_log10_value > 19000);
}

TEST_CASE("manifest records schedule, seeds and parity") {
  const auto b = build_construction(64, 3, 0.02, 1, 9);
  const auto j = nlohmann::json::parse(construction_manifest(b));
  CHECK(j["params"]["seed"] == 9);
  CHECK(j["schedule"]["m"] == std::vector<int>{2, 4, 8, 32});
  CHECK(j.contains("separators"));
  CHECK(j.contains("tower"));
}
