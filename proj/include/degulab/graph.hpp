#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "degulab/common.hpp"

namespace degulab {

using Vertex = std::uint32_t;

enum class GraphKind { weighted, simple };

/// Sorted, duplicate-free list of vertex indices.
class VertexSet {
 public:
  VertexSet() = default;

  /// Sorts `vertices`; throws ArgumentError on duplicates or indices >= n.
  static VertexSet make(std::vector<Vertex> vertices, std::size_t n);
  /// The interval [lo, hi).
  static VertexSet range(Vertex lo, Vertex hi);

  std::size_t size() const noexcept { return v_.size(); }
  bool empty() const noexcept { return v_.empty(); }
  std::span<const Vertex> span() const noexcept { return v_; }
  const std::vector<Vertex>& vertices() const noexcept { return v_; }
  auto begin() const noexcept { return v_.begin(); }
  auto end() const noexcept { return v_.end(); }
  Vertex operator[](std::size_t i) const noexcept { return v_[i]; }

  bool contains(Vertex v) const noexcept;
  bool disjoint_from(const VertexSet& other) const noexcept;
  bool subset_of(const VertexSet& other) const noexcept;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  explicit VertexSet(std::vector<Vertex> sorted) : v_(std::move(sorted)) {}
  std::vector<Vertex> v_;
};

/// Symmetric edge-weight matrix on [n] with weights in [0,1] and a zero
/// diagonal. Rows are stored in full so that row scans are contiguous.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(std::size_t n, GraphKind kind);

  std::size_t order() const noexcept { return n_; }
  GraphKind kind() const noexcept { return kind_; }
  bool is_simple() const noexcept { return kind_ == GraphKind::simple; }

  double weight(Vertex u, Vertex v) const noexcept { return w_[static_cast<std::size_t>(u) * n_ + v]; }
  std::span<const double> row(Vertex u) const noexcept { return {w_.data() + static_cast<std::size_t>(u) * n_, n_}; }

  /// Sets w(u,v) = w(v,u). Values in (1, 1 + 1e-9] are clamped to 1.
  void set_weight(Vertex u, Vertex v, double w);
  void add_edge(Vertex u, Vertex v) { set_weight(u, v, 1.0); }

  /// Adds `other` entrywise; kinds must allow the result.
  void accumulate(const WeightedGraph& other);

  double total_weight() const noexcept;
  std::size_t edge_count() const noexcept;
  double degree(Vertex v) const noexcept;

  /// Recomputes the kind: simple iff every weight is 0 or 1.
  void infer_kind() noexcept;

  /// Induced subgraph on `vs` (relabelled 0..|vs|-1 in sorted order).
  WeightedGraph induced(const VertexSet& vs) const;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  std::size_t n_ = 0;
  GraphKind kind_ = GraphKind::weighted;
  std::vector<double> w_;
};

/// Assignment of [n] to clusters 0..ell-1, every cluster nonempty.
class Partition {
 public:
  Partition() = default;
  /// Throws ArgumentError if some id >= ell or some cluster is empty.
  Partition(std::vector<std::uint32_t> assign, std::size_t ell);
  /// Infers ell as max id + 1.
  static Partition from_assignment(std::vector<std::uint32_t> assign);
  /// Consecutive intervals of sizes as equal as possible (first n mod ell get one extra).
  static Partition intervals(std::size_t n, std::size_t ell);

  std::size_t order() const noexcept { return assign_.size(); }
  std::size_t cluster_count() const noexcept { return ell_; }
  std::uint32_t cluster_of(Vertex v) const noexcept { return assign_[v]; }
  const std::vector<std::uint32_t>& assignment() const noexcept { return assign_; }
  std::vector<std::size_t> sizes() const;
  std::vector<VertexSet> clusters() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::uint32_t> assign_;
  std::size_t ell_ = 0;
};

/// e(A,B): total weight between A and B.
double edge_mass(const WeightedGraph& g, const VertexSet& a, const VertexSet& b);

/// d(A,B) = e(A,B) / (|A||B|) for nonempty disjoint A, B.
double pair_density(const WeightedGraph& g, const VertexSet& a, const VertexSet& b);

/// Sum of w(v,b) over b in B.
double degree_into(const WeightedGraph& g, Vertex v, const VertexSet& b);

/// Max cluster size minus min cluster size is at most 1.
bool check_equitable(const Partition& p);

// Generators used by fixtures, tests and the CLI.
WeightedGraph make_edgeless(std::size_t n);
WeightedGraph make_complete(std::size_t n);
/// Circulant graph: u ~ v iff the cyclic distance |u - v| mod n is in `offsets`.
WeightedGraph make_circulant(std::size_t n, std::span<const std::size_t> offsets);
/// G(n, p) with per-edge coins keyed by `seed`.
WeightedGraph make_random_simple(std::size_t n, double p, std::uint64_t seed);
/// Uniform [0,1) weights keyed by `seed`.
WeightedGraph make_random_weighted(std::size_t n, std::uint64_t seed);

}  // namespace degulab
