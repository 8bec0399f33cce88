#include "degulab/regular_hosts.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "degulab/rng.hpp"

namespace degulab {

EquipartitionResult random_equipartition_degularity(const WeightedGraph& g, std::size_t parts, double eps,
                                                    std::uint64_t seed) {
  const std::size_t n = g.order();
  if (parts < 2 || parts > n) throw ArgumentError("equipartition needs 2 <= L <= n");
  EquipartitionResult res;
  const double floor = 20.0 / (eps * eps) * std::log(static_cast<double>(n));
  if (static_cast<double>(n) / static_cast<double>(parts) < floor)
    res.warnings.push_back("n / L = " + std::to_string(static_cast<double>(n) / static_cast<double>(parts)) +
                           " is below 20 eps^-2 ln n = " + std::to_string(floor));
  CounterRng rng(derive_seed(seed, Stream::equipartition));
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(std::span<Vertex>(perm));
  const auto base = Partition::intervals(n, parts);
  std::vector<std::uint32_t> assign(n);
  for (std::size_t i = 0; i < n; ++i) assign[perm[i]] = base.cluster_of(static_cast<Vertex>(i));
  res.partition = Partition(std::move(assign), parts);
  res.verdict = check_degular_partition(g, res.partition, eps);
  res.all_pairs_degular = res.verdict.bad_pairs.empty();
  return res;
}

DegreeSequenceResult realize_degree_sequence(const std::vector<std::size_t>& degrees) {
  const std::size_t n = degrees.size();
  for (std::size_t d : degrees)
    if (n == 0 || d > n - 1) throw ArgumentError("degree " + std::to_string(d) + " outside [0, len - 1]");
  DegreeSequenceResult res;
  const std::size_t total = std::accumulate(degrees.begin(), degrees.end(), std::size_t{0});
  if (total % 2 != 0) {
    res.odd_sum = true;
    return res;
  }
  std::vector<std::size_t> sorted = degrees;
  std::sort(sorted.rbegin(), sorted.rend());
  std::size_t prefix = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    prefix += sorted[k - 1];
    std::size_t rhs = k * (k - 1);
    for (std::size_t i = k; i < n; ++i) rhs += std::min(sorted[i], k);
    if (prefix > rhs) {
      res.violated_k = k;
      return res;
    }
  }

  WeightedGraph g(n, GraphKind::simple);
  std::vector<std::size_t> left = degrees;
  std::vector<Vertex> order(n);
  for (;;) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Vertex x, Vertex y) { return left[x] > left[y]; });
    const Vertex v = order[0];
    const std::size_t d = left[v];
    if (d == 0) break;
    if (d > n - 1 || left[order[d]] == 0) throw InternalError("Havel-Hakimi stalled on a graphic sequence");
    left[v] = 0;
    for (std::size_t k = 1; k <= d; ++k) {
      g.add_edge(v, order[k]);
      --left[order[k]];
    }
  }
  res.graphic = true;
  res.graph = std::move(g);
  return res;
}

EmbedResult embed_into_almost_regular(const WeightedGraph& g) {
  const std::size_t n = g.order();
  if (n < 1) throw ArgumentError("embedding needs n >= 1");
  if (!g.is_simple()) throw ArgumentError("embedding needs a simple graph");
  EmbedResult res;
  res.host = WeightedGraph(2 * n, GraphKind::simple);
  WeightedGraph& h = res.host;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (g.weight(u, v) != 0.0) h.add_edge(u, v);

  std::vector<std::size_t> deficiency(n);
  for (Vertex v = 0; v < n; ++v) deficiency[v] = n - 1 - static_cast<std::size_t>(std::llround(g.degree(v)));
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex x, Vertex y) { return deficiency[x] < deficiency[y]; });

  std::vector<std::size_t> w_deg_v(n, 0);  // deg(w, V)
  std::vector<Vertex> ws(n);
  for (Vertex v : order) {
    std::iota(ws.begin(), ws.end(), 0);
    std::stable_sort(ws.begin(), ws.end(), [&](Vertex x, Vertex y) { return w_deg_v[x] < w_deg_v[y]; });
    for (std::size_t k = 0; k < deficiency[v]; ++k) {
      h.add_edge(v, static_cast<Vertex>(n + ws[k]));
      ++w_deg_v[ws[k]];
    }
  }

  res.w_targets.resize(n);
  for (std::size_t w = 0; w < n; ++w) res.w_targets[w] = n - 1 - w_deg_v[w];
  const std::size_t sum = std::accumulate(res.w_targets.begin(), res.w_targets.end(), std::size_t{0});
  if (sum % 2 != 0) {
    const auto [lo, hi] = std::minmax_element(res.w_targets.begin(), res.w_targets.end());
    if (*lo != *hi) {
      const auto idx = static_cast<std::size_t>(hi - res.w_targets.begin());
      --res.w_targets[idx];
      res.repairs.push_back("odd target sum: lowered the target of W vertex " + std::to_string(idx) + " by 1");
    } else {
      const auto idx = static_cast<std::size_t>(lo - res.w_targets.begin());
      if (res.w_targets[idx] + 1 <= n - 1) {
        ++res.w_targets[idx];
        res.repairs.push_back("odd target sum: raised the target of W vertex " + std::to_string(idx) + " by 1");
      } else {
        --res.w_targets[idx];
        res.repairs.push_back("odd target sum: lowered the target of W vertex " + std::to_string(idx) + " by 1");
      }
    }
  }
  auto realized = realize_degree_sequence(res.w_targets);
  if (!realized.graphic) throw InternalError("W-side degree sequence is not graphic after the parity repair");
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = x + 1; y < n; ++y)
      if (realized.graph->weight(x, y) != 0.0) h.add_edge(static_cast<Vertex>(n + x), static_cast<Vertex>(n + y));

  res.induced_ok = true;
  for (Vertex u = 0; u < n && res.induced_ok; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (h.weight(u, v) != g.weight(u, v)) {
        res.induced_ok = false;
        break;
      }
  res.v_degrees_ok = true;
  res.min_degree = 2 * n;
  for (Vertex x = 0; x < 2 * n; ++x) {
    const auto d = static_cast<std::size_t>(std::llround(h.degree(x)));
    if (x < n && d != n - 1) res.v_degrees_ok = false;
    res.min_degree = std::min(res.min_degree, d);
    res.max_degree = std::max(res.max_degree, d);
  }
  res.spread = res.max_degree - res.min_degree;
  res.pass = res.induced_ok && res.v_degrees_ok && res.spread <= 1;
  return res;
}

}  // namespace degulab
