#include <algorithm>
#include <numeric>

#include "degulab/construction.hpp"
#include "degulab/partition_toolkit.hpp"
#include "degulab/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace degulab;

namespace {

// Blow-up of a random 0/1 template on h interval clusters of size k.
WeightedGraph blow_up(std::size_t h, std::size_t k, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<int> t(h * h, 0);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = i + 1; j < h; ++j) t[i * h + j] = t[j * h + i] = static_cast<int>(rng.below(2));
  WeightedGraph g(h * k, GraphKind::simple);
  for (Vertex x = 0; x < h * k; ++x)
    for (Vertex y = x + 1; y < h * k; ++y)
      if (x / k != y / k && t[(x / k) * h + y / k]) g.add_edge(x, y);
  return g;
}

// Makes (V_i, V_j) non-degular: the first vertex of V_i sees all of V_j, the rest none.
void spoil(WeightedGraph& g, std::size_t k, std::size_t i, std::size_t j) {
  for (Vertex x = static_cast<Vertex>(i * k); x < (i + 1) * k; ++x)
    for (Vertex y = static_cast<Vertex>(j * k); y < (j + 1) * k; ++y)
      g.set_weight(x, y, x == i * k ? 1.0 : 0.0);
}

}  // namespace

TEST_CASE("partition verdict examples") {
  const auto e = make_edgeless(50);
  const auto ten = check_degular_partition(e, Partition::intervals(50, 10), 0.1);
  CHECK(ten.pass);
  CHECK(ten.bad_pairs.empty());

  const auto five = check_degular_partition(e, Partition::intervals(50, 5), 0.1);
  CHECK(five.bad_pairs.empty());
  CHECK_FALSE(five.degree_form_pass);
  CHECK(five.degree_form_failures.size() == 5);
  CHECK(five.aggregate_form_pass);
  CHECK_FALSE(five.pass);

  CHECK_THROWS_AS(check_degular_partition(e, Partition::intervals(50, 1), 0.1), ArgumentError);
  CHECK_THROWS_AS(check_degular_partition(e, Partition::intervals(40, 4), 0.1), ArgumentError);

  // Unequal sizes fail P1 even with every pair degular.
  const auto uneq = check_degular_partition(make_edgeless(12), Partition({0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 2, 2}, 3), 0.5);
  CHECK_FALSE(uneq.equitable);
  CHECK(uneq.degree_form_pass);
  CHECK_FALSE(uneq.pass);
}

TEST_CASE("level-s partitions have no bad pairs at eps = 0") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto b = build_construction(64, 3, 0.02, 1, seed);
    const auto xs = b.levels.partition(3);
    const auto v0 = check_degular_partition(b.total, xs, 0.0);
    CHECK(v0.equitable);
    CHECK(v0.bad_pairs.empty());
    CHECK(v0.aggregate_form_pass);
    // ell - 1 partners never reach (1 - 0) ell: the degree form needs ell >= 1/eps.
    CHECK_FALSE(v0.degree_form_pass);
    const auto v = check_degular_partition(b.total, xs, 1.0 / static_cast<double>(xs.cluster_count()));
    CHECK(v.pass);
    CHECK(v.bad_pairs.empty());
  }
}

TEST_CASE("degree form implies aggregate form") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = make_random_simple(30, 0.5, seed);
    for (std::size_t ell : {3u, 5u, 10u})
      for (double eps : {0.2, 0.4, 0.6}) {
        const auto v = check_degular_partition(g, Partition::intervals(30, ell), eps);
        if (v.degree_form_pass) CHECK(v.aggregate_form_pass);
        CHECK(v.aggregate_bad == 2 * v.bad_pairs.size());
      }
  }
}

TEST_CASE("aggregate to degree form") {
  const auto clean = make_edgeless(40);
  const auto p = Partition::intervals(40, 10);
  CHECK(aggregate_to_degree_form(clean, p, 0.5) == p);

  // One bad cluster (V_0, bad with three partners) among h = 10 clusters of size 4.
  auto g = make_edgeless(40);
  for (std::size_t j = 1; j <= 3; ++j) spoil(g, 4, 0, j);
  const auto out = aggregate_to_degree_form(g, p, 1.0);
  CHECK(out.cluster_count() == 9);
  const auto sizes = out.sizes();
  CHECK(*std::max_element(sizes.begin(), sizes.end()) - *std::min_element(sizes.begin(), sizes.end()) <= 1);
  CHECK(*std::max_element(sizes.begin(), sizes.end()) <= 4 + (4 + 8) / 9);
  CHECK(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}) == 40);

  CHECK_THROWS_AS(aggregate_to_degree_form(make_edgeless(6), Partition({0, 0, 0, 0, 1, 2}, 3), 0.5), PreconditionError);
  CHECK_THROWS_AS(aggregate_to_degree_form(g, p, 0.3), PreconditionError);
}

TEST_CASE("aggregate to degree form on blow-ups with one spoiled cluster") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t h = 16, k = 6;
    auto g = blow_up(h, k, seed);
    CounterRng rng(derive_seed(seed, Stream::fixtures));
    const std::size_t bad = rng.below(h);
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < h; ++j)
      if (j != bad) others.push_back(j);
    rng.shuffle(std::span<std::size_t>(others));
    for (std::size_t q = 0; q < 3; ++q) spoil(g, k, bad, others[q]);
    const auto p = Partition::intervals(h * k, h);
    const auto out = aggregate_to_degree_form(g, p, 0.5);
    CHECK(out.cluster_count() == h - 1);
    CHECK(check_equitable(out));
    const auto v = check_degular_partition(g, out, 0.5);
    CHECK(v.degree_form_pass);
    CHECK(v.pass);
  }
}

TEST_CASE("equalize partition") {
  const auto e = make_edgeless(60);
  const Partition uneven({0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
                          1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2},
                         3);
  const auto r = equalize_partition(e, uneven, 0.8, 1);
  CHECK(r.verdict.pass);
  CHECK(r.piece_size == 8);
  CHECK(equalize_partition(e, uneven, 0.8, 1).partition == r.partition);

  const std::size_t offs[] = {1, 2, 3, 4, 5};
  const auto c = make_circulant(100, offs);
  std::vector<std::uint32_t> assign(100);
  for (Vertex v = 0; v < 100; ++v) assign[v] = v < 50 ? 0 : v < 80 ? 1 : 2;
  const Partition split(assign, 3);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto res = equalize_partition(c, split, 0.8, seed);
    CHECK(check_degular_partition(c, res.partition, 0.8).pass);
    CHECK(res.verdict.pass);
  }
  CHECK_THROWS_AS(equalize_partition(e, uneven, 0.2, 1), PreconditionError);
}

TEST_CASE("refinement beta") {
  const auto fine = Partition::intervals(12, 6), coarse = Partition::intervals(12, 3);
  CHECK(refinement_beta(fine, coarse).beta == 0.0);
  CHECK(refinement_beta(fine, fine).beta == 0.0);
  CHECK(refinement_beta(coarse, fine).beta == 0.5);
  const Partition z({0, 0, 0, 0, 1, 1, 1, 1}, 2);
  const Partition q({0, 0, 1, 1, 1, 1, 0, 0}, 2);
  const auto r = refinement_beta(z, q);
  CHECK(r.deficiency == std::vector<double>{0.5, 0.5});
  // Ties go to the lowest cell id.
  CHECK(r.best_cover == std::vector<std::uint32_t>{0, 0});
  CHECK_THROWS_AS(refinement_beta(fine, Partition::intervals(10, 2)), ArgumentError);

  // Exact refinement is transitive.
  const auto finest = Partition::intervals(12, 12);
  CHECK(refinement_beta(finest, coarse).beta == 0.0);
}

TEST_CASE("exhaustive search examples") {
  const auto e = min_complexity_search(make_edgeless(12), 0.25, SearchMode::exhaustive, 0);
  CHECK(e.found);
  CHECK(e.ell == 4);
  CHECK(e.start_ell == 4);
  REQUIRE(e.partition);
  CHECK(check_degular_partition(make_edgeless(12), *e.partition, 0.25).pass);
  const auto k = min_complexity_search(make_complete(12), 0.25, SearchMode::exhaustive, 0);
  CHECK(k.ell == 4);
  CHECK_THROWS_AS(min_complexity_search(make_edgeless(13), 0.25, SearchMode::exhaustive, 0), CapacityError);
  CHECK_THROWS_AS(min_complexity_search(make_edgeless(8), 0.0, SearchMode::exhaustive, 0), ArgumentError);
}

TEST_CASE("exhaustive search matches the independent enumerator") {
  std::vector<WeightedGraph> graphs = {make_edgeless(7), make_complete(8), make_edgeless(8), make_complete(6)};
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    CounterRng rng(derive_seed(seed, Stream::fixtures, {1}));
    const std::size_t n = 4 + rng.below(5);
    graphs.push_back(seed % 3 == 0 ? make_random_weighted(n, seed) : make_random_simple(n, 0.2 + 0.02 * seed, seed));
  }
  for (const auto& g : graphs)
    for (double eps : {0.25, 0.34, 0.5}) {
      const auto r = min_complexity_search(g, eps, SearchMode::exhaustive, 0);
      const auto expect = oracle::min_complexity(g, eps);
      CHECK(r.found == (expect != 0));
      CHECK(r.ell == expect);
      if (r.partition)
        CHECK(oracle::valid_partition(g, r.partition->assignment(), r.ell, eps));
      const auto again = min_complexity_search(g, eps, SearchMode::exhaustive, 0);
      CHECK(again.partition == r.partition);
    }
}

TEST_CASE("local search") {
  const auto b = build_construction(32, 3, 0.01, 9999, 1);
  const auto xs = b.levels.partition(3);
  SearchOptions opt;
  opt.initial = xs;
  opt.budget = 500;
  opt.restarts = 2;
  const auto r = min_complexity_search(b.total, 0.1, SearchMode::local_search, 3, opt);
  CHECK(r.found);
  CHECK(r.upper_bound_only);
  CHECK(r.ell <= xs.cluster_count());
  REQUIRE(r.partition);
  CHECK(check_degular_partition(b.total, *r.partition, 0.1).pass);
  const auto again = min_complexity_search(b.total, 0.1, SearchMode::local_search, 3, opt);
  CHECK(again.partition == r.partition);

  const auto e = min_complexity_search(make_edgeless(40), 0.25, SearchMode::local_search, 1);
  CHECK(e.found);
  CHECK(e.ell == 4);
}

TEST_CASE("cascade audit on the toy bundle") {
  const auto b = build_construction(64, 3, 0.02, 1, 1);
  const auto top = cascade_audit(b, b.levels.partition(3), 0.1, 0.0, 0.01);
  for (const auto& l : top.levels) {
    CHECK(l.beta_r == 0.0);
    CHECK_FALSE(l.failure_path);
  }
  CHECK(top.pass);
  CHECK_FALSE(top.asserted);

  for (std::size_t r = 1; r <= 3; ++r) {
    const auto rep = cascade_audit(b, b.levels.partition(r - 1), 0.1, 0.0, 0.01);
    CHECK(rep.levels[r - 1].beta_r == 0.0);
    CHECK(rep.levels[r].failure_path);
    CHECK(rep.levels[r].failing_clusters.size() == b.levels.cell_count(r - 1));
    CHECK(rep.levels[r].beta_r > 0.0);
    CHECK(rep.pass);
  }

  CounterRng rng(5);
  std::vector<std::uint32_t> assign(64);
  for (Vertex v = 0; v < 64; ++v) assign[v] = v % 8;
  rng.shuffle(std::span<std::uint32_t>(assign));
  const auto rnd = cascade_audit(b, Partition(assign, 8), 0.1, 0.0, 0.01);
  CHECK(rnd.levels[0].beta_r > 0.0);
  CHECK_FALSE(rnd.notes.empty());
}

TEST_CASE("cascade assertion gating") {
  const auto b = build_construction(64, 3, 0.02, 1, 1);
  CascadeOptions low;
  low.n_floor = 1;
  // 32 eps / mu, 4000 eps and 1600 beta must all stay below delta = 0.02.
  const auto rep = cascade_audit(b, b.levels.partition(1), 1e-7, 0.0, 1e-3, low);
  CHECK(rep.hypotheses_hold);
  CHECK(rep.asserted);
  const auto off = cascade_audit(b, b.levels.partition(1), 0.1, 0.0, 0.01, low);
  CHECK_FALSE(off.hypotheses_hold);
  CHECK_FALSE(off.asserted);
  CHECK(off.pass);
}
