#include "degulab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

#include "degulab/parallel.hpp"
#include "degulab/rng.hpp"

namespace degulab {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::argument: return "argument";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::capacity: return "capacity";
    case ErrorCode::construction: return "construction";
    case ErrorCode::size: return "size";
    case ErrorCode::io: return "io";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

unsigned thread_count() noexcept {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DEGULAB_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

// ---------------------------------------------------------------------------
// VertexSet

VertexSet VertexSet::make(std::vector<Vertex> vertices, std::size_t n) {
  std::sort(vertices.begin(), vertices.end());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] >= n)
      throw ArgumentError("vertex " + std::to_string(vertices[i]) + " out of range for n = " + std::to_string(n));
    if (i > 0 && vertices[i] == vertices[i - 1])
      throw ArgumentError("duplicate vertex " + std::to_string(vertices[i]));
  }
  return VertexSet(std::move(vertices));
}

VertexSet VertexSet::range(Vertex lo, Vertex hi) {
  std::vector<Vertex> v;
  if (hi > lo) v.reserve(hi - lo);
  for (Vertex x = lo; x < hi; ++x) v.push_back(x);
  return VertexSet(std::move(v));
}

bool VertexSet::contains(Vertex v) const noexcept { return std::binary_search(v_.begin(), v_.end(), v); }

bool VertexSet::disjoint_from(const VertexSet& other) const noexcept {
  auto i = v_.begin();
  auto j = other.v_.begin();
  while (i != v_.end() && j != other.v_.end()) {
    if (*i == *j) return false;
    if (*i < *j) ++i; else ++j;
  }
  return true;
}

bool VertexSet::subset_of(const VertexSet& other) const noexcept {
  return std::includes(other.v_.begin(), other.v_.end(), v_.begin(), v_.end());
}

// ---------------------------------------------------------------------------
// WeightedGraph

WeightedGraph::WeightedGraph(std::size_t n, GraphKind kind) : n_(n), kind_(kind), w_(n * n, 0.0) {
  if (n > 0xFFFFFFFFull) throw SizeError("graph order exceeds 32-bit vertex range");
}

void WeightedGraph::set_weight(Vertex u, Vertex v, double w) {
  if (u >= n_ || v >= n_) throw ArgumentError("set_weight: vertex out of range");
  if (u == v) {
    if (w != 0.0) throw ArgumentError("set_weight: diagonal weights must be 0");
    return;
  }
  if (!(w >= 0.0) || w > 1.0 + kTol) throw ArgumentError("set_weight: weight " + std::to_string(w) + " outside [0,1]");
  if (w > 1.0) w = 1.0;
  if (kind_ == GraphKind::simple && w != 0.0 && w != 1.0)
    throw ArgumentError("set_weight: simple graphs take weights in {0,1}");
  w_[static_cast<std::size_t>(u) * n_ + v] = w;
  w_[static_cast<std::size_t>(v) * n_ + u] = w;
}

void WeightedGraph::accumulate(const WeightedGraph& other) {
  if (other.n_ != n_) throw ArgumentError("accumulate: order mismatch");
  for (std::size_t i = 0; i < w_.size(); ++i) {
    double s = w_[i] + other.w_[i];
    if (s > 1.0 + kTol) throw ArgumentError("accumulate: summed weight exceeds 1");
    if (s > 1.0) s = 1.0;
    w_[i] = s;
  }
  kind_ = GraphKind::weighted;
}

double WeightedGraph::total_weight() const noexcept {
  double s = 0.0;
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v = u + 1; v < n_; ++v) s += w_[u * n_ + v];
  return s;
}

std::size_t WeightedGraph::edge_count() const noexcept {
  std::size_t c = 0;
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v = u + 1; v < n_; ++v) c += w_[u * n_ + v] != 0.0;
  return c;
}

double WeightedGraph::degree(Vertex v) const noexcept {
  double s = 0.0;
  for (double x : row(v)) s += x;
  return s;
}

void WeightedGraph::infer_kind() noexcept {
  kind_ = std::all_of(w_.begin(), w_.end(), [](double x) { return x == 0.0 || x == 1.0; }) ? GraphKind::simple
                                                                                           : GraphKind::weighted;
}

WeightedGraph WeightedGraph::induced(const VertexSet& vs) const {
  WeightedGraph h(vs.size(), kind_);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      const double w = weight(vs[i], vs[j]);
      h.w_[i * h.n_ + j] = w;
      h.w_[j * h.n_ + i] = w;
    }
  return h;
}

// ---------------------------------------------------------------------------
// Partition

Partition::Partition(std::vector<std::uint32_t> assign, std::size_t ell) : assign_(std::move(assign)), ell_(ell) {
  if (ell_ == 0) throw ArgumentError("partition needs at least one cluster");
  std::vector<std::size_t> count(ell_, 0);
  for (auto c : assign_) {
    if (c >= ell_) throw ArgumentError("cluster id " + std::to_string(c) + " >= ell = " + std::to_string(ell_));
    ++count[c];
  }
  for (std::size_t c = 0; c < ell_; ++c)
    if (count[c] == 0) throw ArgumentError("cluster " + std::to_string(c) + " is empty");
}

Partition Partition::from_assignment(std::vector<std::uint32_t> assign) {
  std::size_t ell = 0;
  for (auto c : assign) ell = std::max<std::size_t>(ell, std::size_t{c} + 1);
  return Partition(std::move(assign), ell);
}

Partition Partition::intervals(std::size_t n, std::size_t ell) {
  if (ell == 0 || ell > n) throw ArgumentError("intervals: need 1 <= ell <= n");
  std::vector<std::uint32_t> assign(n);
  const std::size_t q = n / ell;
  const std::size_t extra = n % ell;
  std::size_t v = 0;
  for (std::size_t c = 0; c < ell; ++c) {
    const std::size_t len = q + (c < extra ? 1 : 0);
    for (std::size_t k = 0; k < len; ++k) assign[v++] = static_cast<std::uint32_t>(c);
  }
  return Partition(std::move(assign), ell);
}

std::vector<std::size_t> Partition::sizes() const {
  std::vector<std::size_t> s(ell_, 0);
  for (auto c : assign_) ++s[c];
  return s;
}

std::vector<VertexSet> Partition::clusters() const {
  std::vector<std::vector<Vertex>> members(ell_);
  for (std::size_t v = 0; v < assign_.size(); ++v) members[assign_[v]].push_back(static_cast<Vertex>(v));
  std::vector<VertexSet> out;
  out.reserve(ell_);
  for (auto& m : members) out.push_back(VertexSet::make(std::move(m), assign_.size()));
  return out;
}

// ---------------------------------------------------------------------------
// Densities and degrees

namespace {

void require_pair(const WeightedGraph& g, const VertexSet& a, const VertexSet& b) {
  if (a.empty() || b.empty()) throw ArgumentError("pair sets must be nonempty");
  if (!a.empty() && a.vertices().back() >= g.order()) throw ArgumentError("set A exceeds graph order");
  if (!b.empty() && b.vertices().back() >= g.order()) throw ArgumentError("set B exceeds graph order");
  if (!a.disjoint_from(b)) throw ArgumentError("pair sets must be disjoint");
}

}  // namespace

double degree_into(const WeightedGraph& g, Vertex v, const VertexSet& b) {
  if (v >= g.order()) throw ArgumentError("degree_into: vertex out of range");
  if (!b.empty() && b.vertices().back() >= g.order()) throw ArgumentError("degree_into: set exceeds graph order");
  const auto r = g.row(v);
  double s = 0.0;
  for (Vertex x : b) s += r[x];
  return s;
}

double edge_mass(const WeightedGraph& g, const VertexSet& a, const VertexSet& b) {
  double s = 0.0;
  for (Vertex x : a) s += degree_into(g, x, b);
  return s;
}

double pair_density(const WeightedGraph& g, const VertexSet& a, const VertexSet& b) {
  require_pair(g, a, b);
  return edge_mass(g, a, b) / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

bool check_equitable(const Partition& p) {
  const auto s = p.sizes();
  if (s.empty()) return true;
  const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
  return *hi - *lo <= 1;
}

// ---------------------------------------------------------------------------
// Generators

WeightedGraph make_edgeless(std::size_t n) { return WeightedGraph(n, GraphKind::simple); }

WeightedGraph make_complete(std::size_t n) {
  WeightedGraph g(n, GraphKind::simple);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

WeightedGraph make_circulant(std::size_t n, std::span<const std::size_t> offsets) {
  WeightedGraph g(n, GraphKind::simple);
  for (Vertex u = 0; u < n; ++u)
    for (std::size_t off : offsets) {
      if (off == 0 || off >= n) throw ArgumentError("circulant offset out of range");
      const auto v = static_cast<Vertex>((u + off) % n);
      g.add_edge(u, v);
    }
  return g;
}

WeightedGraph make_random_simple(std::size_t n, double p, std::uint64_t seed) {
  WeightedGraph g(n, GraphKind::simple);
  const std::uint64_t key = derive_seed(seed, Stream::fixtures, {1});
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (keyed_uniform01(key, u, v) < p) g.add_edge(u, v);
  return g;
}

WeightedGraph make_random_weighted(std::size_t n, std::uint64_t seed) {
  WeightedGraph g(n, GraphKind::weighted);
  const std::uint64_t key = derive_seed(seed, Stream::fixtures, {2});
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.set_weight(u, v, keyed_uniform01(key, u, v));
  return g;
}

}  // namespace degulab
