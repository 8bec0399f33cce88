#include "degulab/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "degulab/parallel.hpp"
#include "degulab/rng.hpp"

namespace degulab {

WeightedGraph round_to_simple(const WeightedGraph& gw, std::uint64_t seed) {
  const std::size_t n = gw.order();
  const std::uint64_t key = derive_seed(seed, Stream::rounding);
  WeightedGraph gs(n, GraphKind::simple);
  parallel_for(n, [&](std::size_t u) {
    for (Vertex v = static_cast<Vertex>(u) + 1; v < n; ++v)
      if (keyed_uniform01(key, u, v) < gw.weight(static_cast<Vertex>(u), v)) gs.add_edge(static_cast<Vertex>(u), v);
  }, 16);
  return gs;
}

std::size_t rounding_floor(double zeta, std::size_t n, double log_base) {
  if (!(zeta > 0.0)) throw ArgumentError("zeta must be > 0");
  if (n < 1) return 0;
  double lg = std::log(static_cast<double>(n));
  if (log_base != 0.0) {
    if (!(log_base > 1.0)) throw ArgumentError("log base must be > 1");
    lg /= std::log(log_base);
  }
  return static_cast<std::size_t>(std::ceil(20.0 / (zeta * zeta) * lg - 1e-9));
}

namespace {

// Sum of (gs - gw) over A x B, and |A||B|, for possibly overlapping sets.
double deviation(const WeightedGraph& gw, const WeightedGraph& gs, const std::vector<Vertex>& a,
                 const std::vector<double>& in_b, std::size_t size_b) {
  const std::size_t n = gw.order();
  double sw = 0.0, ss = 0.0;
  for (Vertex x : a) {
    const auto rw = gw.row(x), rs = gs.row(x);
    double tw = 0.0, ts = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
      tw += rw[y] * in_b[y];
      ts += rs[y] * in_b[y];
    }
    sw += tw;
    ss += ts;
  }
  const double denom = static_cast<double>(a.size()) * static_cast<double>(size_b);
  return std::abs(ss / denom - sw / denom);
}

}  // namespace

RoundingAuditReport audit_rounding(const WeightedGraph& gw, const WeightedGraph& gs, double zeta, std::uint64_t seed,
                                   const RoundingAuditOptions& options) {
  if (gw.order() != gs.order()) throw ArgumentError("graphs differ in order");
  const std::size_t n = gw.order();
  RoundingAuditReport rep;
  rep.zeta = zeta;
  rep.n = n;
  rep.seed = seed;
  rep.samples = options.samples;
  rep.min_size = options.min_size != 0 ? options.min_size : rounding_floor(zeta, n, options.log_base);
  if (rep.min_size > n)
    throw ArgumentError("sampling floor " + std::to_string(rep.min_size) + " exceeds n = " + std::to_string(n));
  rep.min_size = std::max<std::size_t>(rep.min_size, 1);
  rep.deviations.assign(rep.samples, 0.0);

  parallel_for(rep.samples, [&](std::size_t k) {
    CounterRng rng(derive_seed(seed, Stream::audit_rounding, {k}));
    std::vector<Vertex> perm(n);
    auto draw = [&](std::size_t size) {
      std::iota(perm.begin(), perm.end(), 0);
      for (std::size_t i = 0; i < size; ++i) std::swap(perm[i], perm[i + rng.below(n - i)]);
      return std::vector<Vertex>(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(size));
    };
    const std::size_t span = n - rep.min_size + 1;
    const std::size_t sa = rep.min_size + rng.below(span);
    const std::size_t sb = rep.min_size + rng.below(span);
    const auto a = draw(sa);
    const auto b = draw(sb);
    std::vector<double> in_b(n, 0.0);
    for (Vertex v : b) in_b[v] = 1.0;
    rep.deviations[k] = deviation(gw, gs, a, in_b, sb);
  });

  for (double d : rep.deviations) {
    rep.max_deviation = std::max(rep.max_deviation, d);
    if (d > zeta + kTol) ++rep.exceedances;
  }
  rep.exceed_fraction = rep.samples == 0 ? 0.0 : static_cast<double>(rep.exceedances) / static_cast<double>(rep.samples);
  rep.pass = rep.exceedances == 0;
  return rep;
}

RoundingRetryResult round_until_audit_passes(const WeightedGraph& gw, double zeta, std::uint64_t seed,
                                             const RoundingAuditOptions& options, std::size_t max_attempts) {
  RoundingRetryResult res;
  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(1, max_attempts); ++attempt) {
    res.seed_used = attempt == 0 ? seed : derive_seed(seed, Stream::rounding, {attempt});
    res.retries = attempt;
    res.simple = round_to_simple(gw, res.seed_used);
    res.audit = audit_rounding(gw, res.simple, zeta, res.seed_used, options);
    if (res.audit.pass) break;
  }
  return res;
}

TransferReport degularity_transfer_check(const WeightedGraph& gw, const WeightedGraph& gs, const VertexSet& a,
                                         const VertexSet& b, double eps_prime, double zeta) {
  if (gw.order() != gs.order()) throw ArgumentError("graphs differ in order");
  TransferReport rep;
  rep.eps_prime = eps_prime;
  rep.zeta = zeta;
  rep.simple_verdict = check_degular(gs, a, b, eps_prime);
  if (!rep.simple_verdict.pass) throw PreconditionError("(A,B) is not eps'-degular in the simple graph");
  rep.weighted_verdict = check_degular(gw, a, b, 4.0 * eps_prime);

  auto overlap = [](const std::vector<Vertex>& x, const std::vector<Vertex>& y) {
    std::vector<Vertex> out;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    return out;
  };
  auto sorted = [](std::vector<Vertex> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  rep.violator_overlap_a = overlap(sorted(rep.simple_verdict.violators_a), sorted(rep.weighted_verdict.violators_a));
  rep.violator_overlap_b = overlap(sorted(rep.simple_verdict.violators_b), sorted(rep.weighted_verdict.violators_b));

  auto dev = [&](const VertexSet& x, const VertexSet& y) {
    return std::abs(pair_density(gs, x, y) - pair_density(gw, x, y));
  };
  rep.rounding_deviation = dev(a, b);
  const auto& wv = rep.weighted_verdict;
  for (const auto* part : {&wv.low_a, &wv.high_a})
    if (!part->empty()) rep.rounding_deviation = std::max(rep.rounding_deviation, dev(VertexSet::make(*part, gw.order()), b));
  for (const auto* part : {&wv.low_b, &wv.high_b})
    if (!part->empty()) rep.rounding_deviation = std::max(rep.rounding_deviation, dev(a, VertexSet::make(*part, gw.order())));
  rep.rounding_cause = rep.rounding_deviation > zeta + kTol;

  const std::size_t floor = rounding_floor(zeta, gw.order());
  rep.sizes_meet_floor = a.size() >= floor && b.size() >= floor;
  rep.asserted = zeta <= eps_prime && rep.sizes_meet_floor;
  rep.holds = wv.pass;
  rep.pass = !rep.asserted || rep.holds;
  return rep;
}

}  // namespace degulab
