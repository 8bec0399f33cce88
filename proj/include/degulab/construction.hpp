#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "degulab/graph.hpp"
#include "degulab/separators.hpp"
#include "degulab/tournaments.hpp"

namespace degulab {

/// m_0 = 2, M_r = 2^ceil(m_{r-1} / (4 c_exp)), m_r = m_{r-1} M_r and
/// D_r = (m_{r-1} - 1) M_r / 2 for r = 1..s. Index 0 of `big_m` and `d` is
/// unused so that big_m[r] and d[r] match the level numbering.
struct LevelSchedule {
  std::size_t s = 0;
  std::uint64_t c_exp = 0;
  std::vector<std::uint64_t> m;      // m_0..m_s
  std::vector<std::uint64_t> big_m;  // [0], M_1..M_s
  std::vector<std::uint64_t> d;      // [0], D_1..D_s
  std::vector<bool> d_odd;           // [0], parity flag of D_r

  /// D_1..D_{s-1}: the values that size a separator.
  std::vector<std::uint64_t> separator_degrees() const;
  /// Base of the tower reported for this schedule, 2^(1 / (4 c_exp)).
  double tower_base() const;
};

/// Throws ArgumentError for s < 1 or c_exp < 1 and SizeError naming the level
/// when some m_r would exceed `cap`.
LevelSchedule compute_schedule(std::size_t s, std::uint64_t c_exp, std::uint64_t cap = std::uint64_t{1} << 24);

/// Nested interval partitions X_0..X_s of [n]; X_r has m_r consecutive cells of
/// n / m_r vertices each. Cell (i, t) of level r (block i of level r-1,
/// sub-interval t) has index i * M_r + t.
class LevelStructure {
 public:
  LevelStructure() = default;
  /// Throws ArgumentError unless m_s divides n.
  LevelStructure(std::size_t n, const LevelSchedule& schedule);

  std::size_t order() const noexcept { return n_; }
  std::size_t depth() const noexcept { return cell_count_.size() - 1; }
  std::size_t cell_count(std::size_t r) const { return cell_count_.at(r); }
  std::size_t cell_size(std::size_t r) const { return n_ / cell_count_.at(r); }
  std::size_t cell_of(std::size_t r, Vertex v) const { return v / cell_size(r); }
  /// Interval of cell `index` at level r.
  VertexSet cell(std::size_t r, std::size_t index) const;
  /// Cell (i, t) with 0-based block i of level r-1 and sub-interval t.
  VertexSet cell(std::size_t r, std::size_t i, std::size_t t) const;
  Partition partition(std::size_t r) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> cell_count_;
  std::vector<std::size_t> sub_count_;
};

enum class SeparatorSharing { shared_per_level, per_target };

struct ConstructionOptions {
  SeparatorSharing sharing = SeparatorSharing::shared_per_level;
  /// When false only the total graph is stored; layer weights are then
  /// recomputed from the cell-level description on demand.
  bool materialize_layers = true;
  std::uint64_t schedule_cap = std::uint64_t{1} << 24;
  SeparatorBuildOptions separator;
  /// tow_a variant recorded in the manifest.
  bool self_referential_tower = false;
};

/// Per-level wiring of G_{r+1}: tournament T_r on the m_r cells of X_r and the
/// separators that pick, for each in-neighbour X_i of X_j, the sub-cells
/// A^{r+1}_{j,i} of X_j.
struct LevelWiring {
  std::size_t r = 0;
  TournamentLayer tournament;
  /// One system (shared) or one per target cell j.
  std::vector<BipartitionSystem> separators;
  std::vector<SeparatorBuildInfo> separator_info;
  std::vector<std::uint64_t> separator_seeds;
  /// in_neighbours[j] lists the in-neighbours of X_j in increasing index order.
  std::vector<std::vector<std::uint32_t>> in_neighbours;
  /// row_of[j * m_r + i]: separator row matched to the in-neighbour X_i of X_j, or -1.
  std::vector<std::int32_t> row_of;

  const BipartitionSystem& separator_for(std::size_t j) const {
    return separators.size() == 1 ? separators.front() : separators.at(j);
  }
  /// True iff sub-cell t of X_j lies in A^{r+1}_{j,i}.
  bool selects(std::size_t j, std::size_t i, std::size_t t) const;
};

struct ConstructionParams {
  std::size_t n = 0;
  std::size_t s = 0;
  double delta = 0.0;
  std::uint64_t c_exp = 0;
  std::uint64_t seed = 0;
};

class ConstructionBundle {
 public:
  ConstructionParams params;
  ConstructionOptions options;
  LevelSchedule schedule;
  LevelStructure levels;
  /// wiring[r - 1] builds G_{r+1}, r = 1..s-1.
  std::vector<LevelWiring> wiring;
  std::vector<std::string> warnings;
  WeightedGraph total;

  /// Weight of layer G_r (1 <= r <= s) on (x, y) from the cell-level rule.
  double layer_weight(std::size_t r, Vertex x, Vertex y) const;
  /// Layer G_r: the stored copy when layers are materialized, else rebuilt.
  WeightedGraph layer_graph(std::size_t r) const;
  bool has_layers() const noexcept { return !layers_.empty(); }
  /// Mutable stored layer (fault-injection and tooling); requires materialized layers.
  WeightedGraph& stored_layer(std::size_t r);
  const WeightedGraph& stored_layer(std::size_t r) const;

  /// True iff every separator D used by layers r+1..s is even.
  bool exact_from(std::size_t r) const;

 private:
  friend ConstructionBundle build_construction(std::size_t, std::size_t, double, std::uint64_t, std::uint64_t,
                                               const ConstructionOptions&);
  std::vector<WeightedGraph> layers_;  // layers_[r - 1] = G_r
  // cell_weights_[r - 1]: G_r between cells of its level (X_0 for G_1, X_r otherwise).
  std::vector<std::vector<double>> cell_weights_;
};

/// Construction G(n, s, delta) = G_1 + ... + G_s. Requires m_s | n and
/// 0 < delta < 1/2. s * delta > 0.1 only adds a warning; weights that would
/// exceed 1 raise ArgumentError. Separator failures propagate.
ConstructionBundle build_construction(std::size_t n, std::size_t s, double delta, std::uint64_t c_exp,
                                      std::uint64_t seed, const ConstructionOptions& options = {});

struct HomogeneityViolation {
  std::size_t layer;  // r of G_r
  std::size_t level;  // level of the cells
  std::size_t cell_a, cell_b;
  std::string reason;
};

struct HomogeneityReport {
  std::size_t layers_checked = 0;
  std::size_t cell_pairs_checked = 0;
  std::size_t violation_count = 0;
  std::vector<HomogeneityViolation> violations;  // first 100
  bool sum_decomposition_ok = true;
  double max_sum_error = 0.0;
  /// Total weights constant between every two distinct X_s cells.
  bool top_level_constant = true;
  bool pass = false;
};

/// Scans every layer cell-pair by cell-pair: G_1 is 0.1 / 0.9 inside the two
/// X_0 blocks and 0 across; G_{r+1} is constant in {0, delta} between distinct
/// X_{r+1} cells. Also checks total = sum of layers (1e-12) and constancy of the
/// total between X_s cells.
HomogeneityReport verify_homogeneity(const ConstructionBundle& b);

struct DegreeSumReport {
  std::size_t r = 0;
  double target = 0.0;  // delta (s - r) / 2
  double max_abs_deviation = 0.0;
  std::size_t worst_vertex = 0;
  std::size_t worst_cell = 0;  // index in X_{r-1}
  std::size_t pairs_checked = 0;
  /// "exact" (every separator in layers r+1..s has even D), "generalized", or
  /// "vacuous" (r = s).
  std::string mode;
  bool asserted = false;
  /// (s - r) delta / 4: the most a layer built from floor/ceil column sums can drift.
  double deviation_bound = 0.0;
  std::vector<double> deviation_histogram_edges;
  std::vector<std::size_t> deviation_histogram;
  bool pass = false;
};

/// For every X in X_{r-1} and x outside X, compares d_{G_{r+1}}(x,X) + ... +
/// d_{G_s}(x,X) with delta (s - r) / 2. Asserts (1e-9) only in exact mode;
/// otherwise pass reflects report-only status and is true.
DegreeSumReport audit_degree_sums(const ConstructionBundle& b, std::size_t r);

enum class TowerVariant { literal, self_referential };

struct TowerValue {
  double base = 2.0;
  double x = 0.0;
  TowerVariant variant = TowerVariant::literal;
  /// Number of exponentiations, floor(x) (0 for x < 1).
  std::uint64_t height = 0;
  /// Decimal expansion when base = 2 and the value has at most 2^20 bits.
  std::optional<std::string> exact;
  /// Innermost exponent of the symbolic form base^(...^(top_exponent)).
  double top_exponent = 1.0;
  /// Finite approximation, or +inf when out of double range.
  double approx = 0.0;
  /// log10 of the value (the decimal digit count is floor(log10_value) + 1);
  /// +inf when even this overflows.
  double log10_value = 0.0;
  /// log10(log10 value), available when log10_value overflows.
  double log10_log10_value = 0.0;
};

/// tow(x) = 1 for x < 1 and tow(1 + x) = 2^tow(x). The literal variant of
/// tow_a uses a^tow(x - 1); the self-referential one a^tow_a(x - 1).
/// Throws ArgumentError unless a > 1 and x >= 0.
TowerValue tower_value(double a, double x, TowerVariant variant = TowerVariant::literal);

/// Manifest JSON: parameters, schedule, seeds, separator modes and parity.
std::string construction_manifest(const ConstructionBundle& b);

}  // namespace degulab
