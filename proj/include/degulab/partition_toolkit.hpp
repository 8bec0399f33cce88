#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "degulab/construction.hpp"
#include "degulab/graph.hpp"

namespace degulab {

struct PartitionVerdict {
  double eps = 0.0;
  std::size_t ell = 0;
  bool equitable = false;
  /// Number of clusters j != i for which (V_i, V_j) is not eps-degular.
  std::vector<std::size_t> bad_partner_count;
  /// Non-degular unordered pairs (i < j).
  std::vector<std::pair<std::uint32_t, std::uint32_t>> bad_pairs;
  /// Ordered count, 2 |bad_pairs|.
  std::size_t aggregate_bad = 0;
  /// Clusters with fewer than (1 - eps) ell degular partners.
  std::vector<std::uint32_t> degree_form_failures;
  bool degree_form_pass = false;     // every cluster has >= (1 - eps) ell degular partners
  bool aggregate_form_pass = false;  // aggregate_bad <= eps ell^2
  bool pass = false;                 // equitable and degree form
};

/// Evaluates every pair of clusters with check_degular. Requires ell >= 2.
PartitionVerdict check_degular_partition(const WeightedGraph& g, const Partition& p, double eps);

/// Removes every cluster with more than (eps/4) h non-degular partners at
/// eps^2/8 and moves its vertices, in increasing vertex order, each to the
/// currently smallest surviving cluster (ties to the lowest id). Survivors are
/// relabelled in order. PreconditionError when P is not equitable, fails the
/// aggregate form at eps^2/8, or would lose more than (eps/4) h clusters.
Partition aggregate_to_degree_form(const WeightedGraph& g, const Partition& p, double eps);

struct EqualizeResult {
  Partition partition;
  std::size_t piece_size = 0;
  std::size_t pieces = 0;
  std::size_t leftovers = 0;
  /// True when aggregate_to_degree_form had to run.
  bool transformed = false;
  PartitionVerdict verdict;
};

/// Splits each cluster (in random order) into pieces of floor(eps n / (2 ell))
/// vertices and deals the leftovers randomly round-robin over the pieces. The
/// degree-form transform runs only when the equitable result is not already
/// degree-form clean at eps. PreconditionError when the ordered degular pairs
/// at eps/2 cover less than (1 - eps/2) n^2 or the piece size is 0.
EqualizeResult equalize_partition(const WeightedGraph& g, const Partition& p, double eps, std::uint64_t seed);

struct RefinementReport {
  std::vector<std::uint32_t> best_cover;  // per cluster of P, the Q cell covering it most (ties to the lowest id)
  std::vector<double> deficiency;         // 1 - |Z & best| / |Z|
  double beta = 0.0;
  std::size_t worst_cluster = 0;
};

/// Smallest beta such that P beta-refines Q. ArgumentError on different orders.
RefinementReport refinement_beta(const Partition& p, const Partition& q);

enum class SearchMode { exhaustive, local_search };

struct SearchOptions {
  /// Exhaustive: cap on partitions evaluated (0 = none). Local search:
  /// annealing steps per restart and cluster count.
  std::uint64_t budget = 0;
  std::size_t restarts = 4;
  /// Largest ell tried (0 = n).
  std::size_t max_ell = 0;
  double initial_temperature = 1.0;
  double cooling = 0.99;
  /// Optional local-search starting partition, used by the first restart of its ell.
  std::optional<Partition> initial;
};

struct SearchResult {
  bool found = false;
  std::size_t ell = 0;
  std::optional<Partition> partition;
  SearchMode mode = SearchMode::exhaustive;
  /// Local search only proves an upper bound on the minimum.
  bool upper_bound_only = false;
  bool budget_exhausted = false;
  std::uint64_t evaluated = 0;  // partitions (exhaustive) or steps (local search)
  std::size_t start_ell = 0;
};

inline constexpr std::size_t kExhaustiveSearchCap = 12;

/// Smallest ell with an equitable, degree-form eps-degular partition. ell runs
/// from max(2, ceil(1/eps)). Exhaustive mode enumerates canonical equitable set
/// partitions and needs n <= 12 (CapacityError otherwise); local search anneals
/// over P1-preserving vertex swaps with a lexicographic (failing clusters, bad
/// pairs) objective. Not finding a partition is a result, not an error.
SearchResult min_complexity_search(const WeightedGraph& g, double eps, SearchMode mode, std::uint64_t seed,
                                   const SearchOptions& options = {});

struct CascadeLevel {
  std::size_t r = 0;
  double beta_r = 0.0;
  bool refines_previous = false;  // beta_{r-1} <= beta
  bool failure_path = false;      // ... and beta_r > beta + 8 mu
  /// Clusters Z_0 with deficiency above beta + 8 mu at this level.
  std::vector<std::uint32_t> failing_clusters;
  /// Non-degular (Z_0, Z) pairs summed over the failing clusters.
  std::size_t bad_pair_count = 0;
  /// Failing clusters with more than eps ell non-degular partners.
  std::size_t contradiction_count = 0;
};

struct CascadeOptions {
  std::size_t n_floor = std::size_t{1} << 20;
};

struct CascadeReport {
  double eps = 0, beta = 0, mu = 0, delta = 0;
  std::size_t s = 0, n = 0, ell = 0;
  bool hyp_32eps_over_mu = false;  // 32 eps / mu < delta
  bool hyp_4000eps = false;        // 4000 eps < delta
  bool hyp_1600beta = false;       // 1600 beta < delta
  bool hyp_delta_half = false;     // delta < 1/2
  bool hyp_s_delta = false;        // s delta <= 0.1
  bool hypotheses_hold = false;
  bool asserted = false;
  std::vector<CascadeLevel> levels;  // r = 0..s
  std::vector<std::string> notes;
  bool pass = false;
};

/// Measures beta_r = refinement_beta(Z, X_r) for every level. At a level
/// where Z beta-refines X_{r-1} but not (beta + 8 mu)-refines X_r, counts the
/// non-degular partners of each cluster that breaks the refinement. Asserts
/// that each such cluster has more than eps ell of them only when every
/// hypothesis holds numerically and n >= n_floor; otherwise pass is true.
CascadeReport cascade_audit(const ConstructionBundle& b, const Partition& z, double eps, double beta, double mu,
                            const CascadeOptions& options = {});

}  // namespace degulab
