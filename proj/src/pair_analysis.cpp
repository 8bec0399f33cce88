#include "degulab/pair_analysis.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

#include "degulab/parallel.hpp"

namespace degulab {

namespace {

void require_pair(const VertexSet& a, const VertexSet& b, double eps) {
  if (a.empty() || b.empty()) throw ArgumentError("pair sets must be nonempty");
  if (!a.disjoint_from(b)) throw ArgumentError("pair sets must be disjoint");
  if (!(eps >= 0.0)) throw ArgumentError("eps must be >= 0");
}

// Classifies one side. For simple graphs deg and mass are integers and the
// test |deg |S| - e| > eps |S| |T| is exact.
void classify(const WeightedGraph& g, const VertexSet& side, const VertexSet& other, double mass, double eps,
              std::vector<Vertex>& violators, std::vector<Vertex>& low, std::vector<Vertex>& high) {
  const double s = static_cast<double>(side.size());
  const double t = static_cast<double>(other.size());
  if (g.is_simple()) {
    const auto e = static_cast<std::int64_t>(std::llround(mass));
    const double limit = eps * (s * t);
    for (Vertex v : side) {
      const auto deg = static_cast<std::int64_t>(std::llround(degree_into(g, v, other)));
      const std::int64_t diff = deg * static_cast<std::int64_t>(side.size()) - e;
      if (static_cast<double>(diff) < -limit) low.push_back(v);
      else if (static_cast<double>(diff) > limit) high.push_back(v);
      else continue;
      violators.push_back(v);
    }
  } else {
    const double mean = mass / s;
    const double limit = eps * t + kTol * t;
    for (Vertex v : side) {
      const double diff = degree_into(g, v, other) - mean;
      if (diff < -limit) low.push_back(v);
      else if (diff > limit) high.push_back(v);
      else continue;
      violators.push_back(v);
    }
  }
}

VertexSet from_mask(const VertexSet& base, std::uint32_t mask) {
  std::vector<Vertex> out;
  for (std::size_t k = 0; k < base.size(); ++k)
    if (mask >> k & 1u) out.push_back(base[k]);
  return VertexSet::make(std::move(out), static_cast<std::size_t>(base[base.size() - 1]) + 1);
}

}  // namespace

DegularityVerdict check_degular(const WeightedGraph& g, const VertexSet& a, const VertexSet& b, double eps) {
  require_pair(a, b, eps);
  DegularityVerdict v;
  v.eps = eps;
  v.size_a = a.size();
  v.size_b = b.size();
  v.edge_mass = edge_mass(g, a, b);
  v.mean_degree_a = v.edge_mass / static_cast<double>(a.size());
  v.mean_degree_b = v.edge_mass / static_cast<double>(b.size());
  classify(g, a, b, v.edge_mass, eps, v.violators_a, v.low_a, v.high_a);
  classify(g, b, a, v.edge_mass, eps, v.violators_b, v.low_b, v.high_b);
  v.pass = count_within(v.violators_a.size(), eps, a.size()) && count_within(v.violators_b.size(), eps, b.size());
  return v;
}

RegularityVerdict check_regular_exhaustive(const WeightedGraph& g, const VertexSet& a, const VertexSet& b, double eps) {
  require_pair(a, b, eps);
  if (a.size() > kExhaustiveSideCap || b.size() > kExhaustiveSideCap)
    throw CapacityError("exhaustive regularity check is capped at 12 vertices per side; use the degree witness");
  const std::size_t na = a.size(), nb = b.size();
  const std::uint32_t full_a = (1u << na), full_b = (1u << nb);
  const bool simple = g.is_simple();

  // w[k][l] = weight between the k-th vertex of A and the l-th of B.
  std::vector<double> w(na * nb);
  for (std::size_t k = 0; k < na; ++k)
    for (std::size_t l = 0; l < nb; ++l) w[k * nb + l] = g.weight(a[k], b[l]);
  double total = 0.0;
  for (double x : w) total += x;
  const double d_full = total / static_cast<double>(na * nb);
  const auto total_int = static_cast<std::int64_t>(std::llround(total));
  const auto ab = static_cast<std::int64_t>(na * nb);

  // col[mask][l] = sum of w over the A' = mask rows, built by peeling the low bit.
  std::vector<double> col(static_cast<std::size_t>(full_a) * nb, 0.0);
  for (std::uint32_t m = 1; m < full_a; ++m) {
    const int k = std::countr_zero(m);
    const std::uint32_t rest = m & (m - 1);
    for (std::size_t l = 0; l < nb; ++l) col[m * nb + l] = col[rest * nb + l] + w[k * nb + l];
  }

  struct Best {
    bool found = false;
    std::uint32_t ma = 0, mb = 0;
    double dev = 0.0;
    std::int64_t num = 0, den = 1;  // exact |deviation| = num / den for simple graphs
    std::size_t checked = 0;
  };
  // x beats y on a strictly larger deviation; ties keep the earlier masks.
  auto better = [&](const Best& x, const Best& y) {
    if (!y.found) return x.found;
    if (!x.found) return false;
    if (simple) {
      const __int128 lhs = static_cast<__int128>(x.num) * y.den, rhs = static_cast<__int128>(y.num) * x.den;
      if (lhs != rhs) return lhs > rhs;
    } else if (x.dev != y.dev) {
      return x.dev > y.dev;
    }
    return x.ma != y.ma ? x.ma < y.ma : x.mb < y.mb;
  };

  std::vector<Best> per_mask(full_a);
  parallel_for(full_a, [&](std::size_t mi) {
    const auto ma = static_cast<std::uint32_t>(mi);
    const auto sa = static_cast<std::size_t>(std::popcount(ma));
    if (!count_exceeds(sa, eps, na)) return;
    Best best;
    std::vector<double> sub(full_b, 0.0);
    for (std::uint32_t mb = 1; mb < full_b; ++mb) {
      const int l = std::countr_zero(mb);
      sub[mb] = sub[mb & (mb - 1)] + col[ma * nb + l];
      const auto sb = static_cast<std::size_t>(std::popcount(mb));
      if (!count_exceeds(sb, eps, nb)) continue;
      ++best.checked;
      Best cand;
      cand.found = true;
      cand.ma = ma;
      cand.mb = mb;
      const auto sab = static_cast<std::int64_t>(sa * sb);
      if (simple) {
        const auto e = static_cast<std::int64_t>(std::llround(sub[mb]));
        std::int64_t num = e * ab - total_int * sab;
        if (num < 0) num = -num;
        const std::int64_t den = sab * ab;
        // Violation iff num / den > eps.
        if (!(static_cast<double>(num) > eps * static_cast<double>(den))) continue;
        cand.num = num;
        cand.den = den;
        cand.dev = static_cast<double>(num) / static_cast<double>(den);
      } else {
        cand.dev = std::abs(sub[mb] / static_cast<double>(sab) - d_full);
        if (!(cand.dev > eps + kTol)) continue;
      }
      if (better(cand, best)) {
        cand.checked = best.checked;
        best = cand;
      }
    }
    per_mask[mi] = best;
  }, 16);

  RegularityVerdict v;
  v.eps = eps;
  v.method = "exhaustive";
  Best best;
  for (const auto& pm : per_mask) {
    v.subset_pairs_checked += pm.checked;
    if (better(pm, best)) best = pm;
  }
  v.pass = !best.found;
  if (best.found) {
    RegularityWitness wit;
    wit.a_sub = from_mask(a, best.ma);
    wit.b_sub = from_mask(b, best.mb);
    wit.density_full = d_full;
    wit.density_sub = pair_density(g, wit.a_sub, wit.b_sub);
    wit.deviation = best.dev;
    wit.origin = "exhaustive";
    v.witness = std::move(wit);
  }
  return v;
}

std::optional<RegularityWitness> degree_witness_irregularity(const WeightedGraph& g, const VertexSet& a,
                                                             const VertexSet& b, double eps) {
  require_pair(a, b, eps);
  if (eps >= 1.0) return std::nullopt;
  const double mass = edge_mass(g, a, b);
  const double d_full = mass / static_cast<double>(a.size() * b.size());
  struct Part {
    const VertexSet* side;
    const VertexSet* other;
    bool low;
    const char* name;
  };
  const Part parts[] = {{&a, &b, true, "A-low"}, {&a, &b, false, "A-high"}, {&b, &a, true, "B-low"}, {&b, &a, false, "B-high"}};
  for (const auto& p : parts) {
    const double mean = mass / static_cast<double>(p.side->size());
    const double limit = eps * static_cast<double>(p.other->size());
    std::vector<Vertex> members;
    for (Vertex v : *p.side) {
      const double deg = degree_into(g, v, *p.other);
      if (p.low ? deg < mean - limit : deg > mean + limit) members.push_back(v);
    }
    if (!count_exceeds(members.size(), eps, p.side->size())) continue;
    RegularityWitness w;
    VertexSet sub = VertexSet::make(std::move(members), g.order());
    w.origin = p.name;
    w.density_full = d_full;
    if (p.side == &a) {
      w.a_sub = sub;
      w.b_sub = b;
    } else {
      w.a_sub = a;
      w.b_sub = sub;
    }
    w.density_sub = pair_density(g, w.a_sub, w.b_sub);
    w.deviation = std::abs(w.density_sub - d_full);
    return w;
  }
  return std::nullopt;
}

SubsetDensityReport subset_density_bound_check(const WeightedGraph& g, const VertexSet& a, const VertexSet& b,
                                               const VertexSet& x, double eps) {
  if (x.empty()) throw ArgumentError("X must be nonempty");
  if (!x.subset_of(a)) throw ArgumentError("X must be a subset of A");
  if (!check_degular(g, a, b, eps).pass) throw PreconditionError("(A,B) is not eps-degular");
  SubsetDensityReport r;
  r.density_sub = pair_density(g, x, b);
  r.density_full = pair_density(g, a, b);
  r.lhs = std::abs(r.density_sub - r.density_full);
  r.bound = (1.0 + static_cast<double>(a.size()) / static_cast<double>(x.size())) * eps;
  r.slack = r.bound - r.lhs;
  r.holds = r.lhs <= r.bound + kTol;
  return r;
}

GalleryPair gallery_pair(std::size_t k) {
  if (k == 0) throw ArgumentError("gallery pair needs k >= 1");
  const auto kk = static_cast<Vertex>(k);
  GalleryPair p;
  p.graph = WeightedGraph(4 * k, GraphKind::simple);
  p.a = VertexSet::range(0, 2 * kk);
  p.b = VertexSet::range(2 * kk, 4 * kk);
  p.a1 = VertexSet::range(0, kk);
  p.a2 = VertexSet::range(kk, 2 * kk);
  p.b1 = VertexSet::range(2 * kk, 3 * kk);
  p.b2 = VertexSet::range(3 * kk, 4 * kk);
  for (Vertex u : p.a1)
    for (Vertex v : p.b1) p.graph.add_edge(u, v);
  for (Vertex u : p.a2)
    for (Vertex v : p.b2) p.graph.add_edge(u, v);
  return p;
}

}  // namespace degulab
