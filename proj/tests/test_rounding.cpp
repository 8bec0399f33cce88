#include <cmath>

#include "degulab/construction.hpp"
#include "degulab/rng.hpp"
#include "degulab/rounding.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace degulab;

TEST_CASE("rounding keeps zeros and ones") {
  CHECK(round_to_simple(make_complete(20), 3) == make_complete(20));
  CHECK(round_to_simple(make_edgeless(20), 3) == make_edgeless(20));
  const auto w = make_random_weighted(40, 2);
  auto mixed = w;
  mixed.set_weight(0, 1, 1.0);
  mixed.set_weight(2, 3, 0.0);
  const auto s = round_to_simple(mixed, 8);
  CHECK(s.is_simple());
  CHECK(s.weight(0, 1) == 1.0);
  CHECK(s.weight(2, 3) == 0.0);
  CHECK(round_to_simple(mixed, 8) == s);
}

TEST_CASE("rounded edge counts follow the binomial law") {
  const std::size_t n = 1000;
  WeightedGraph half(n, GraphKind::weighted);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) half.set_weight(u, v, 0.5);
  const double pairs = n * (n - 1) / 2.0;
  const double mean = pairs / 2.0, sigma = std::sqrt(pairs / 4.0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const double e = static_cast<double>(round_to_simple(half, seed).edge_count());
    CHECK(std::abs(e - mean) <= 4.0 * sigma);
  }
}

TEST_CASE("rounding floor") {
  CHECK(rounding_floor(0.1, 4096) == static_cast<std::size_t>(std::ceil(2000.0 * std::log(4096.0))));
  CHECK(rounding_floor(0.5, 100, 10.0) == 160);
  CHECK_THROWS_AS(rounding_floor(0.0, 10), ArgumentError);
}

TEST_CASE("rounding audit") {
  const auto s = make_random_simple(60, 0.3, 1);
  RoundingAuditOptions opt;
  opt.samples = 200;
  opt.min_size = 10;
  const auto same = audit_rounding(s, s, 0.01, 4, opt);
  CHECK(same.max_deviation == 0.0);
  CHECK(same.pass);
  CHECK(same.deviations.size() == 200);

  const auto w = make_random_weighted(60, 1);
  const auto r = round_to_simple(w, 5);
  const auto any = audit_rounding(w, r, 1.0, 4, opt);
  CHECK(any.pass);
  CHECK(any.exceedances == 0);
  CHECK(audit_rounding(w, r, 1.0, 4, opt).deviations == any.deviations);

  opt.min_size = 61;
  CHECK_THROWS_AS(audit_rounding(w, r, 0.1, 4, opt), ArgumentError);
  CHECK_THROWS_AS(audit_rounding(w, make_edgeless(10), 0.1, 4, {}), ArgumentError);
}

TEST_CASE("rounding a bundle graph audits cleanly at desk scale") {
  const auto b = build_construction(512, 3, 0.02, 1, 1, {});
  RoundingAuditOptions opt;
  opt.samples = 300;
  opt.min_size = 150;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto gs = round_to_simple(b.total, seed);
    const auto rep = audit_rounding(b.total, gs, 0.05, seed, opt);
    CHECK(rep.exceedances == 0);
    CHECK(rep.pass);
  }
}

TEST_CASE("retry loop records the seed used") {
  const auto w = make_random_weighted(80, 3);
  RoundingAuditOptions opt;
  opt.samples = 50;
  opt.min_size = 40;
  const auto res = round_until_audit_passes(w, 0.2, 9, opt, 4);
  CHECK(res.audit.pass);
  CHECK(res.retries == 0);
  CHECK(res.seed_used == 9);
  CHECK(res.simple == round_to_simple(w, 9));

  // An unreachable threshold exhausts the attempts and returns the last one.
  const auto hard = round_until_audit_passes(w, 1e-6, 9, opt, 3);
  CHECK_FALSE(hard.audit.pass);
  CHECK(hard.retries == 2);
  CHECK(hard.seed_used == derive_seed(9, Stream::rounding, {2}));
}

TEST_CASE("degularity transfer") {
  const auto w = make_random_weighted(40, 6);
  const auto a = VertexSet::range(0, 20), b = VertexSet::range(20, 40);
  const auto ident = degularity_transfer_check(w, w, a, b, 0.5, 0.1);
  CHECK(ident.holds);
  CHECK(ident.rounding_deviation == 0.0);

  // Gs unrelated to Gw: complete on A x B while Gw splits A into a full and an empty half.
  WeightedGraph gw(40, GraphKind::weighted);
  for (Vertex x = 0; x < 10; ++x)
    for (Vertex y = 20; y < 40; ++y) gw.set_weight(x, y, 1.0);
  const auto gs = make_complete(40);
  const auto bad = degularity_transfer_check(gw, gs, a, b, 0.05, 0.05);
  CHECK_FALSE(bad.holds);
  CHECK(bad.rounding_cause);
  CHECK(bad.rounding_deviation >= 0.5);

  CHECK_THROWS_AS(degularity_transfer_check(gs, gw, a, b, 0.05, 0.05), PreconditionError);
}

TEST_CASE("transfers hold on a rounded bundle graph") {
  const auto bndl = build_construction(512, 3, 0.02, 1, 2, {});
  const auto gs = round_to_simple(bndl.total, 2);
  const auto x1 = bndl.levels.partition(1).clusters();
  std::size_t checked = 0;
  for (std::size_t i = 0; i < x1.size(); ++i)
    for (std::size_t j = i + 1; j < x1.size(); ++j) {
      if (!check_degular(gs, x1[i], x1[j], 0.1).pass) continue;
      const auto t = degularity_transfer_check(bndl.total, gs, x1[i], x1[j], 0.1, 0.1);
      CHECK(t.holds);
      ++checked;
    }
  CHECK(checked > 0);
}
