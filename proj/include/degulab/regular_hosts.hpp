#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "degulab/graph.hpp"
#include "degulab/partition_toolkit.hpp"

namespace degulab {

struct EquipartitionResult {
  Partition partition;
  PartitionVerdict verdict;
  /// All L(L-1)/2 cluster pairs are eps-degular.
  bool all_pairs_degular = false;
  std::vector<std::string> warnings;
};

/// Uniformly random equitable partition into L clusters plus its full pairwise
/// verdict. Warns when n / L < 20 eps^-2 ln n. ArgumentError unless 2 <= L <= n.
EquipartitionResult random_equipartition_degularity(const WeightedGraph& g, std::size_t parts, double eps,
                                                    std::uint64_t seed);

struct DegreeSequenceResult {
  bool graphic = false;
  std::optional<WeightedGraph> graph;
  bool odd_sum = false;
  /// Smallest k (1-based, on the non-increasing order) violating Erdős-Gallai.
  std::optional<std::size_t> violated_k;
};

/// Havel-Hakimi realization (largest remaining degree first, ties to the
/// lowest index). ArgumentError when an entry is outside [0, len - 1].
DegreeSequenceResult realize_degree_sequence(const std::vector<std::size_t>& degrees);

struct EmbedResult {
  WeightedGraph host;  // on 2n vertices; V = [0,n), W = [n,2n)
  bool induced_ok = false;
  bool v_degrees_ok = false;  // deg_H(v) = n - 1 on V
  std::size_t min_degree = 0, max_degree = 0;
  std::size_t spread = 0;
  std::vector<std::size_t> w_targets;
  std::vector<std::string> repairs;
  bool pass = false;  // induced, V exact and spread <= 1
};

/// H[V] = G; each v gets n - 1 - deg_G(v) edges into W, vertices taken in
/// increasing deficiency and wired to the W vertices with the fewest V
/// neighbours (ties to the lowest index). H[W] realizes n - 1 - deg(w, V),
/// with one target moved by 1 when the sum is odd. ArgumentError unless G is
/// simple with n >= 1.
EmbedResult embed_into_almost_regular(const WeightedGraph& g);

}  // namespace degulab
