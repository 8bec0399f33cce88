#pragma once

#include <optional>
#include <string>
#include <vector>

#include "degulab/graph.hpp"

namespace degulab {

struct DegularityVerdict {
  double eps = 0.0;
  double edge_mass = 0.0;    // e(A,B)
  double mean_degree_a = 0;  // e(A,B) / |A|
  double mean_degree_b = 0;  // e(A,B) / |B|
  std::size_t size_a = 0, size_b = 0;
  /// Vertices whose degree into the other side misses the mean by more than eps times its size.
  std::vector<Vertex> violators_a, violators_b;
  /// Signed parts: below (low) and above (high) the mean.
  std::vector<Vertex> low_a, high_a, low_b, high_b;
  bool pass = false;
};

/// Exact eps-degularity check. Simple graphs use integer degrees; weighted
/// graphs allow an extra 1e-9 |B| on the threshold. Throws ArgumentError for
/// empty or overlapping sets or eps < 0.
DegularityVerdict check_degular(const WeightedGraph& g, const VertexSet& a, const VertexSet& b, double eps);

struct RegularityWitness {
  VertexSet a_sub, b_sub;
  double density_sub = 0.0;
  double density_full = 0.0;
  double deviation = 0.0;
  /// For degree witnesses: "A-low", "A-high", "B-low" or "B-high".
  std::string origin;
};

struct RegularityVerdict {
  double eps = 0.0;
  bool pass = false;
  std::string method;  // "exhaustive" or "degree-witness"
  std::size_t subset_pairs_checked = 0;
  std::optional<RegularityWitness> witness;
};

inline constexpr std::size_t kExhaustiveSideCap = 12;

/// Checks every A' in A, B' in B with |A'| > eps|A| and |B'| > eps|B|.
/// The witness maximizes |d(A',B') - d(A,B)|; ties go to the smallest A'
/// mask, then the smallest B' mask (bit k = k-th smallest vertex). Throws
/// CapacityError when a side exceeds 12 vertices.
RegularityVerdict check_regular_exhaustive(const WeightedGraph& g, const VertexSet& a, const VertexSet& b, double eps);

/// Returns (A_1, B), (A_2, B), (A, B_1) or (A, B_2) when that part exceeds eps
/// times its side, where A_1 / A_2 are the vertices more than eps|B| below /
/// above the mean degree. Sound but incomplete; nothing for eps >= 1.
std::optional<RegularityWitness> degree_witness_irregularity(const WeightedGraph& g, const VertexSet& a,
                                                             const VertexSet& b, double eps);

struct SubsetDensityReport {
  double density_sub = 0.0;   // d(X,B)
  double density_full = 0.0;  // d(A,B)
  double lhs = 0.0;           // |d(X,B) - d(A,B)|
  double bound = 0.0;         // (1 + |A|/|X|) eps
  double slack = 0.0;
  bool holds = false;
};

/// Requires (A,B) eps-degular (PreconditionError otherwise) and a nonempty X
/// inside A (ArgumentError otherwise).
SubsetDensityReport subset_density_bound_check(const WeightedGraph& g, const VertexSet& a, const VertexSet& b,
                                               const VertexSet& x, double eps);

/// Half-half pair on 4k vertices: A = [0,2k), B = [2k,4k), complete between
/// A^1 = [0,k) and B^1 = [2k,3k) and between A^2 = [k,2k) and B^2 = [3k,4k).
struct GalleryPair {
  WeightedGraph graph;
  VertexSet a, b, a1, a2, b1, b2;
};
GalleryPair gallery_pair(std::size_t k);

}  // namespace degulab
