#include "degulab/partition_toolkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "degulab/pair_analysis.hpp"
#include "degulab/parallel.hpp"
#include "degulab/rng.hpp"

namespace degulab {

namespace {

bool enough_partners(std::size_t partners, double eps, std::size_t ell) {
  return static_cast<double>(partners) >= (1.0 - eps) * static_cast<double>(ell) - kTol;
}

std::size_t start_ell(double eps) {
  if (!(eps > 0.0)) return 0;
  const double inv = std::ceil(1.0 / eps - 1e-9);
  return std::max<std::size_t>(2, static_cast<std::size_t>(inv));
}

// Degularity of cluster pairs from a cache deg[v * ell + c] = sum of w(v, u)
// over u in cluster c. Mirrors check_degular's thresholds.
class PairJudge {
 public:
  PairJudge(const WeightedGraph& g, double eps) : g_(g), eps_(eps), simple_(g.is_simple()) {}

  bool degular(const std::vector<Vertex>& ci, std::size_t i, const std::vector<Vertex>& cj, std::size_t j,
               const std::vector<double>& deg, std::size_t ell) const {
    double e = 0.0;
    for (Vertex v : ci) e += deg[v * ell + j];
    return side_ok(ci, j, cj.size(), e, deg, ell) && side_ok(cj, i, ci.size(), e, deg, ell);
  }

 private:
  bool side_ok(const std::vector<Vertex>& side, std::size_t other, std::size_t other_size, double e,
               const std::vector<double>& deg, std::size_t ell) const {
    const double s = static_cast<double>(side.size());
    const double t = static_cast<double>(other_size);
    std::size_t bad = 0;
    if (simple_) {
      const auto ei = static_cast<std::int64_t>(std::llround(e));
      const double limit = eps_ * (s * t);
      for (Vertex v : side) {
        const auto d = static_cast<std::int64_t>(std::llround(deg[v * ell + other]));
        const double diff = static_cast<double>(d * static_cast<std::int64_t>(side.size()) - ei);
        if (diff < -limit || diff > limit) ++bad;
      }
    } else {
      const double mean = e / s;
      const double limit = eps_ * t + kTol * t;
      for (Vertex v : side)
        if (std::abs(deg[v * ell + other] - mean) > limit) ++bad;
    }
    return count_within(bad, eps_, side.size());
  }

  const WeightedGraph& g_;
  double eps_;
  bool simple_;
};

std::vector<double> degree_cache(const WeightedGraph& g, const std::vector<std::uint32_t>& assign, std::size_t ell) {
  const std::size_t n = g.order();
  std::vector<double> deg(n * ell, 0.0);
  for (Vertex v = 0; v < n; ++v) {
    const auto row = g.row(v);
    for (Vertex u = 0; u < n; ++u) deg[v * ell + assign[u]] += row[u];
  }
  return deg;
}

std::vector<std::vector<Vertex>> members_of(const std::vector<std::uint32_t>& assign, std::size_t ell) {
  std::vector<std::vector<Vertex>> out(ell);
  for (Vertex v = 0; v < assign.size(); ++v) out[assign[v]].push_back(v);
  return out;
}

}  // namespace

PartitionVerdict check_degular_partition(const WeightedGraph& g, const Partition& p, double eps) {
  if (p.order() != g.order()) throw ArgumentError("partition order differs from graph order");
  if (p.cluster_count() < 2) throw ArgumentError("check_degular_partition needs ell >= 2");
  if (!(eps >= 0.0)) throw ArgumentError("eps must be >= 0");
  const std::size_t ell = p.cluster_count();
  const auto clusters = p.clusters();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t i = 0; i < ell; ++i)
    for (std::uint32_t j = i + 1; j < ell; ++j) pairs.emplace_back(i, j);
  std::vector<std::uint8_t> ok(pairs.size(), 0);
  parallel_for(pairs.size(), [&](std::size_t k) {
    ok[k] = check_degular(g, clusters[pairs[k].first], clusters[pairs[k].second], eps).pass ? 1 : 0;
  });

  PartitionVerdict v;
  v.eps = eps;
  v.ell = ell;
  v.equitable = check_equitable(p);
  v.bad_partner_count.assign(ell, 0);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (ok[k]) continue;
    v.bad_pairs.push_back(pairs[k]);
    ++v.bad_partner_count[pairs[k].first];
    ++v.bad_partner_count[pairs[k].second];
  }
  v.aggregate_bad = 2 * v.bad_pairs.size();
  for (std::uint32_t i = 0; i < ell; ++i)
    if (!enough_partners(ell - 1 - v.bad_partner_count[i], eps, ell)) v.degree_form_failures.push_back(i);
  v.degree_form_pass = v.degree_form_failures.empty();
  v.aggregate_form_pass = static_cast<double>(v.aggregate_bad) <= eps * static_cast<double>(ell * ell) + kTol;
  v.pass = v.equitable && v.degree_form_pass;
  return v;
}

Partition aggregate_to_degree_form(const WeightedGraph& g, const Partition& p, double eps) {
  if (!check_equitable(p)) throw PreconditionError("aggregate_to_degree_form needs an equitable partition");
  const double inner = eps * eps / 8.0;
  const auto verdict = check_degular_partition(g, p, inner);
  if (!verdict.aggregate_form_pass)
    throw PreconditionError("partition fails the aggregate form at eps^2/8 (" + std::to_string(verdict.aggregate_bad) +
                            " bad ordered pairs)");
  const std::size_t h = p.cluster_count();
  const double limit = eps / 4.0 * static_cast<double>(h);
  std::vector<bool> removed(h, false);
  std::size_t removed_count = 0;
  for (std::size_t i = 0; i < h; ++i)
    if (static_cast<double>(verdict.bad_partner_count[i]) > limit + kTol) {
      removed[i] = true;
      ++removed_count;
    }
  if (static_cast<double>(removed_count) > limit + kTol)
    throw PreconditionError(std::to_string(removed_count) + " clusters exceed the (eps/4) h partner bound; at most " +
                            std::to_string(limit) + " may be removed");
  if (removed_count == h) throw PreconditionError("every cluster would be removed");
  if (removed_count == 0) return p;

  std::vector<std::uint32_t> relabel(h, 0);
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < h; ++i)
    if (!removed[i]) relabel[i] = next++;
  const auto sizes = p.sizes();
  std::vector<std::size_t> new_sizes(next, 0);
  for (std::size_t i = 0; i < h; ++i)
    if (!removed[i]) new_sizes[relabel[i]] = sizes[i];
  std::vector<std::uint32_t> assign(p.order());
  for (Vertex v = 0; v < p.order(); ++v) {
    const auto c = p.cluster_of(v);
    if (!removed[c]) {
      assign[v] = relabel[c];
      continue;
    }
    const auto target = static_cast<std::uint32_t>(std::min_element(new_sizes.begin(), new_sizes.end()) - new_sizes.begin());
    assign[v] = target;
    ++new_sizes[target];
  }
  return Partition(std::move(assign), next);
}

EqualizeResult equalize_partition(const WeightedGraph& g, const Partition& p, double eps, std::uint64_t seed) {
  if (p.order() != g.order()) throw ArgumentError("partition order differs from graph order");
  if (!(eps > 0.0)) throw ArgumentError("eps must be > 0");
  const std::size_t n = p.order();
  const std::size_t ell = p.cluster_count();
  const auto clusters = p.clusters();

  double covered = 0.0;
  for (std::size_t i = 0; i < ell; ++i)
    for (std::size_t j = i + 1; j < ell; ++j)
      if (check_degular(g, clusters[i], clusters[j], eps / 2.0).pass)
        covered += 2.0 * static_cast<double>(clusters[i].size() * clusters[j].size());
  const double need = (1.0 - eps / 2.0) * static_cast<double>(n) * static_cast<double>(n);
  if (covered < need - kTol)
    throw PreconditionError("degular pairs at eps/2 cover " + std::to_string(covered) + " < (1 - eps/2) n^2 = " +
                            std::to_string(need));

  EqualizeResult res;
  res.piece_size = static_cast<std::size_t>(std::floor(eps * static_cast<double>(n) / (2.0 * static_cast<double>(ell)) + 1e-9));
  if (res.piece_size == 0) throw PreconditionError("piece size floor(eps n / (2 ell)) is 0");

  CounterRng rng(derive_seed(seed, Stream::equalize));
  std::vector<std::vector<Vertex>> pieces;
  std::vector<Vertex> leftovers;
  for (const auto& c : clusters) {
    std::vector<Vertex> vs = c.vertices();
    rng.shuffle(std::span<Vertex>(vs));
    const std::size_t full = vs.size() / res.piece_size;
    for (std::size_t k = 0; k < full; ++k)
      pieces.emplace_back(vs.begin() + static_cast<std::ptrdiff_t>(k * res.piece_size),
                          vs.begin() + static_cast<std::ptrdiff_t>((k + 1) * res.piece_size));
    leftovers.insert(leftovers.end(), vs.begin() + static_cast<std::ptrdiff_t>(full * res.piece_size), vs.end());
  }
  rng.shuffle(std::span<Vertex>(leftovers));
  std::vector<std::size_t> order(pieces.size());
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(std::span<std::size_t>(order));
  for (std::size_t k = 0; k < leftovers.size(); ++k) pieces[order[k % pieces.size()]].push_back(leftovers[k]);
  res.pieces = pieces.size();
  res.leftovers = leftovers.size();

  std::vector<std::uint32_t> assign(n);
  for (std::size_t k = 0; k < pieces.size(); ++k)
    for (Vertex v : pieces[k]) assign[v] = static_cast<std::uint32_t>(k);
  Partition out(std::move(assign), pieces.size());
  if (out.cluster_count() >= 2 && check_degular_partition(g, out, eps).degree_form_pass) {
    res.partition = std::move(out);
  } else {
    res.partition = aggregate_to_degree_form(g, out, eps);
    res.transformed = true;
  }
  if (res.partition.cluster_count() >= 2) res.verdict = check_degular_partition(g, res.partition, eps);
  return res;
}

RefinementReport refinement_beta(const Partition& p, const Partition& q) {
  if (p.order() != q.order()) throw ArgumentError("refinement_beta needs partitions of the same order");
  const std::size_t lp = p.cluster_count(), lq = q.cluster_count();
  std::vector<std::size_t> overlap(lp * lq, 0);
  for (Vertex v = 0; v < p.order(); ++v) ++overlap[p.cluster_of(v) * lq + q.cluster_of(v)];
  const auto sizes = p.sizes();
  RefinementReport r;
  r.best_cover.resize(lp);
  r.deficiency.resize(lp);
  for (std::size_t i = 0; i < lp; ++i) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < lq; ++j)
      if (overlap[i * lq + j] > overlap[i * lq + best]) best = j;
    r.best_cover[i] = static_cast<std::uint32_t>(best);
    r.deficiency[i] = 1.0 - static_cast<double>(overlap[i * lq + best]) / static_cast<double>(sizes[i]);
    if (r.deficiency[i] > r.beta) {
      r.beta = r.deficiency[i];
      r.worst_cluster = i;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Search

namespace {

bool degree_form_ok(const WeightedGraph& g, const std::vector<std::uint32_t>& assign, std::size_t ell, double eps) {
  const auto deg = degree_cache(g, assign, ell);
  const auto mem = members_of(assign, ell);
  PairJudge judge(g, eps);
  std::vector<std::size_t> bad(ell, 0);
  for (std::size_t i = 0; i < ell; ++i)
    for (std::size_t j = i + 1; j < ell; ++j)
      if (!judge.degular(mem[i], i, mem[j], j, deg, ell)) {
        ++bad[i];
        ++bad[j];
      }
  for (std::size_t i = 0; i < ell; ++i)
    if (!enough_partners(ell - 1 - bad[i], eps, ell)) return false;
  return true;
}

// Depth-first enumeration of restricted growth strings whose blocks have the
// equitable sizes for (n, ell).
class EquitableEnumerator {
 public:
  EquitableEnumerator(std::size_t n, std::size_t ell) : n_(n), ell_(ell), q_(n / ell), big_(n % ell) {}

  template <class Visit>
  bool run(Visit&& visit) {
    assign_.assign(n_, 0);
    sizes_.assign(ell_, 0);
    blocks_ = 0;
    big_used_ = 0;
    return step(0, visit);
  }

 private:
  template <class Visit>
  bool step(std::size_t v, Visit& visit) {
    if (v == n_) return blocks_ == ell_ ? visit(assign_) : false;
    std::size_t deficit = (ell_ - blocks_) * q_;
    for (std::size_t c = 0; c < blocks_; ++c) deficit += sizes_[c] < q_ ? q_ - sizes_[c] : 0;
    if (deficit > n_ - v) return false;
    const std::size_t limit = std::min(blocks_ + 1, ell_);
    for (std::size_t c = 0; c < limit; ++c) {
      const std::size_t sz = sizes_[c];
      if (sz == q_ + 1 || (sz == q_ && big_used_ == big_)) continue;
      const bool grows_big = sz == q_;
      if (c == blocks_) ++blocks_;
      assign_[v] = static_cast<std::uint32_t>(c);
      ++sizes_[c];
      if (grows_big) ++big_used_;
      if (step(v + 1, visit)) return true;
      if (grows_big) --big_used_;
      --sizes_[c];
      if (c + 1 == blocks_ && sizes_[c] == 0) --blocks_;
    }
    return false;
  }

  std::size_t n_, ell_, q_, big_;
  std::vector<std::uint32_t> assign_;
  std::vector<std::size_t> sizes_;
  std::size_t blocks_ = 0, big_used_ = 0;
};

struct Annealer {
  const WeightedGraph& g;
  double eps;
  std::size_t ell;
  std::vector<std::uint32_t> assign;
  std::vector<std::vector<Vertex>> mem;
  std::vector<std::size_t> pos;  // index of v in mem[assign[v]]
  std::vector<double> deg;
  std::vector<std::uint8_t> bad;  // ell x ell
  PairJudge judge;

  Annealer(const WeightedGraph& graph, double e, std::size_t l, std::vector<std::uint32_t> a)
      : g(graph), eps(e), ell(l), assign(std::move(a)), judge(graph, e) {
    mem = members_of(assign, ell);
    pos.assign(g.order(), 0);
    for (const auto& m : mem)
      for (std::size_t k = 0; k < m.size(); ++k) pos[m[k]] = k;
    deg = degree_cache(g, assign, ell);
    bad.assign(ell * ell, 0);
    for (std::size_t i = 0; i < ell; ++i)
      for (std::size_t j = i + 1; j < ell; ++j) refresh(i, j);
  }

  void refresh(std::size_t i, std::size_t j) {
    const std::uint8_t b = judge.degular(mem[i], i, mem[j], j, deg, ell) ? 0 : 1;
    bad[i * ell + j] = bad[j * ell + i] = b;
  }

  void refresh_touching(std::size_t a, std::size_t b) {
    for (std::size_t k = 0; k < ell; ++k) {
      if (k != a) refresh(a, k);
      if (k != b && k != a) refresh(b, k);
    }
  }

  // Lexicographic (failing clusters, bad pairs) folded into one number.
  double cost() const {
    std::size_t failing = 0, pairs = 0;
    for (std::size_t i = 0; i < ell; ++i) {
      std::size_t bi = 0;
      for (std::size_t j = 0; j < ell; ++j) bi += bad[i * ell + j];
      pairs += bi;
      if (!enough_partners(ell - 1 - bi, eps, ell)) ++failing;
    }
    return static_cast<double>(failing) * static_cast<double>(ell * ell + 1) + static_cast<double>(pairs / 2);
  }

  void swap(Vertex x, Vertex y) {
    const std::uint32_t cx = assign[x], cy = assign[y];
    const std::size_t n = g.order();
    const auto rx = g.row(x), ry = g.row(y);
    for (Vertex v = 0; v < n; ++v) {
      const double d = ry[v] - rx[v];
      deg[v * ell + cx] += d;
      deg[v * ell + cy] -= d;
    }
    std::swap(mem[cx][pos[x]], mem[cy][pos[y]]);
    std::swap(pos[x], pos[y]);
    assign[x] = cy;
    assign[y] = cx;
  }
};

}  // namespace

SearchResult min_complexity_search(const WeightedGraph& g, double eps, SearchMode mode, std::uint64_t seed,
                                   const SearchOptions& options) {
  if (!(eps > 0.0)) throw ArgumentError("search needs eps > 0");
  const std::size_t n = g.order();
  SearchResult res;
  res.mode = mode;
  res.upper_bound_only = mode == SearchMode::local_search;
  res.start_ell = start_ell(eps);
  const std::size_t max_ell = options.max_ell == 0 ? n : std::min(options.max_ell, n);

  if (mode == SearchMode::exhaustive) {
    if (n > kExhaustiveSearchCap) throw CapacityError("exhaustive search is capped at n = 12; use local search");
    for (std::size_t ell = res.start_ell; ell <= max_ell; ++ell) {
      EquitableEnumerator en(n, ell);
      bool stop = false;
      const bool hit = en.run([&](const std::vector<std::uint32_t>& assign) {
        if (options.budget != 0 && res.evaluated >= options.budget) {
          stop = true;
          return true;
        }
        ++res.evaluated;
        if (!degree_form_ok(g, assign, ell, eps)) return false;
        res.partition = Partition(assign, ell);
        return true;
      });
      if (stop) {
        res.budget_exhausted = true;
        return res;
      }
      if (hit) {
        res.found = true;
        res.ell = ell;
        return res;
      }
    }
    return res;
  }

  const std::uint64_t steps = options.budget == 0 ? 4000 : options.budget;
  const std::size_t restarts = std::max<std::size_t>(1, options.restarts);
  for (std::size_t ell = res.start_ell; ell <= max_ell; ++ell) {
    std::vector<std::optional<std::vector<std::uint32_t>>> found(restarts);
    std::vector<std::uint64_t> used(restarts, 0);
    parallel_for(restarts, [&](std::size_t k) {
      CounterRng rng(derive_seed(seed, Stream::search, {ell, k}));
      std::vector<std::uint32_t> assign(n);
      if (k == 0 && options.initial && options.initial->cluster_count() == ell && options.initial->order() == n &&
          check_equitable(*options.initial)) {
        assign = options.initial->assignment();
      } else {
        std::vector<Vertex> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        rng.shuffle(std::span<Vertex>(perm));
        const auto base = Partition::intervals(n, ell);
        for (std::size_t i = 0; i < n; ++i) assign[perm[i]] = base.cluster_of(static_cast<Vertex>(i));
      }
      Annealer an(g, eps, ell, std::move(assign));
      double cur = an.cost();
      double temp = options.initial_temperature;
      for (std::uint64_t step = 0; step < steps; ++step) {
        if (cur == 0.0 && degree_form_ok(g, an.assign, ell, eps)) {
          found[k] = an.assign;
          break;
        }
        ++used[k];
        if (ell < 2 || ell >= n) break;
        const auto x = static_cast<Vertex>(rng.below(n));
        auto y = static_cast<Vertex>(rng.below(n - 1));
        if (y >= x) ++y;
        if (an.assign[x] == an.assign[y]) {
          temp *= options.cooling;
          continue;
        }
        const std::uint32_t cx = an.assign[x], cy = an.assign[y];
        const auto saved = an.bad;
        an.swap(x, y);
        an.refresh_touching(cx, cy);
        const double next = an.cost();
        const double u = rng.uniform01();
        if (next <= cur || (temp > 0.0 && u < std::exp((cur - next) / temp))) {
          cur = next;
        } else {
          an.swap(x, y);
          an.bad = saved;
        }
        temp *= options.cooling;
      }
      if (!found[k] && cur == 0.0 && degree_form_ok(g, an.assign, ell, eps)) found[k] = an.assign;
    });
    for (std::size_t k = 0; k < restarts; ++k) res.evaluated += used[k];
    for (std::size_t k = 0; k < restarts; ++k)
      if (found[k]) {
        res.found = true;
        res.ell = ell;
        res.partition = Partition(*found[k], ell);
        return res;
      }
  }
  res.budget_exhausted = true;
  return res;
}

// ---------------------------------------------------------------------------
// Cascade audit

CascadeReport cascade_audit(const ConstructionBundle& b, const Partition& z, double eps, double beta, double mu,
                            const CascadeOptions& options) {
  if (z.order() != b.params.n) throw ArgumentError("partition order differs from the bundle's n");
  CascadeReport rep;
  rep.eps = eps;
  rep.beta = beta;
  rep.mu = mu;
  rep.delta = b.params.delta;
  rep.s = b.params.s;
  rep.n = b.params.n;
  rep.ell = z.cluster_count();
  const double d = rep.delta;
  rep.hyp_32eps_over_mu = mu > 0.0 && 32.0 * eps / mu < d;
  rep.hyp_4000eps = 4000.0 * eps < d;
  rep.hyp_1600beta = 1600.0 * beta < d;
  rep.hyp_delta_half = d < 0.5;
  rep.hyp_s_delta = static_cast<double>(rep.s) * d <= 0.1 + 1e-12;
  rep.hypotheses_hold = rep.hyp_32eps_over_mu && rep.hyp_4000eps && rep.hyp_1600beta && rep.hyp_delta_half && rep.hyp_s_delta;
  rep.asserted = rep.hypotheses_hold && rep.n >= options.n_floor;

  std::optional<PartitionVerdict> verdict;
  if (z.cluster_count() >= 2) verdict = check_degular_partition(b.total, z, eps);

  const double threshold = beta + 8.0 * mu;
  std::vector<RefinementReport> refs;
  for (std::size_t r = 0; r <= rep.s; ++r) refs.push_back(refinement_beta(z, b.levels.partition(r)));
  bool ok = true;
  for (std::size_t r = 0; r <= rep.s; ++r) {
    CascadeLevel lvl;
    lvl.r = r;
    lvl.beta_r = refs[r].beta;
    if (r >= 1) {
      lvl.refines_previous = refs[r - 1].beta <= beta + kTol;
      lvl.failure_path = lvl.refines_previous && lvl.beta_r > threshold + kTol;
    }
    if (lvl.failure_path) {
      for (std::uint32_t c = 0; c < z.cluster_count(); ++c)
        if (refs[r].deficiency[c] > threshold + kTol) lvl.failing_clusters.push_back(c);
      for (std::uint32_t c : lvl.failing_clusters) {
        const std::size_t partners = verdict ? verdict->bad_partner_count[c] : 0;
        lvl.bad_pair_count += partners;
        if (count_exceeds(partners, eps, rep.ell)) ++lvl.contradiction_count;
      }
      if (rep.asserted && lvl.contradiction_count != lvl.failing_clusters.size()) ok = false;
    }
    rep.levels.push_back(std::move(lvl));
  }
  if (refs[0].beta > beta + kTol)
    rep.notes.push_back("Z does not beta-refine X_0 (beta_0 = " + std::to_string(refs[0].beta) +
                        "); the cascade starts from an eps-refinement of X_0, which this partition lacks");
  if (!rep.hypotheses_hold) rep.notes.push_back("hypotheses do not all hold numerically; report-only");
  else if (!rep.asserted) rep.notes.push_back("n is below the assertion floor; report-only");
  rep.pass = ok;
  return rep;
}

}  // namespace degulab
