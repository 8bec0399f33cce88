#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "degulab/common.hpp"

namespace degulab {

/// M x M orientation between two blocks i < j: entry [t][u] is true for the
/// edge X_{i,t} -> X_{j,u} and false for X_{j,u} -> X_{i,t}.
class Orientation {
 public:
  Orientation() = default;
  explicit Orientation(std::size_t m) : m_(m), cells_(m * m, 0) {}

  std::size_t size() const noexcept { return m_; }
  bool forward(std::size_t t, std::size_t u) const noexcept { return cells_[t * m_ + u] != 0; }
  void set(std::size_t t, std::size_t u, bool fwd) noexcept { cells_[t * m_ + u] = fwd ? 1 : 0; }
  void flip(std::size_t t, std::size_t u) noexcept { cells_[t * m_ + u] ^= 1; }

  friend bool operator==(const Orientation&, const Orientation&) = default;

 private:
  std::size_t m_ = 0;
  std::vector<std::uint8_t> cells_;
};

/// Cyclic regular bipartite tournament: with 1-based residues in {1..M},
/// t -> u iff u in {t, t+1, ..., t+M/2-1} (mod M). Indices are 0-based.
/// Throws ArgumentError for odd M or M < 2.
Orientation build_cyclic_tournament(std::size_t m);

/// Orientations between every pair of blocks of one level. Node (i, t) is
/// sub-block t of block i; its global index is i * M + t.
class TournamentLayer {
 public:
  TournamentLayer() = default;
  TournamentLayer(std::size_t blocks, std::size_t sub_blocks);

  std::size_t block_count() const noexcept { return blocks_; }
  std::size_t sub_block_count() const noexcept { return sub_; }
  std::size_t node_count() const noexcept { return blocks_ * sub_; }
  /// (m_prev - 1) * M / 2.
  std::size_t regular_degree() const noexcept { return (blocks_ - 1) * sub_ / 2; }

  Orientation& pair(std::size_t i, std::size_t j);
  const Orientation& pair(std::size_t i, std::size_t j) const;

  /// True iff the edge between nodes a and b (different blocks) points a -> b.
  bool points_to(std::size_t a, std::size_t b) const;

  /// In-neighbours of `node`, sorted by global node index.
  std::vector<std::size_t> in_neighbours(std::size_t node) const;
  std::vector<std::size_t> out_neighbours(std::size_t node) const;

  friend bool operator==(const TournamentLayer&, const TournamentLayer&) = default;

 private:
  std::size_t pair_index(std::size_t i, std::size_t j) const;

  std::size_t blocks_ = 0;
  std::size_t sub_ = 0;
  std::vector<Orientation> pairs_;
};

/// Uses the cyclic tournament for every pair of blocks. Requires m_prev >= 2
/// and M even.
TournamentLayer build_layer(std::size_t m_prev, std::size_t m);

struct LayerDeviation {
  std::size_t node;  // global index
  std::size_t in_degree;
  std::size_t out_degree;
};

struct NonRegularPair {
  std::size_t i, j;
};

struct LayerReport {
  std::size_t expected_degree = 0;
  std::vector<LayerDeviation> deviating_nodes;
  std::vector<NonRegularPair> non_regular_pairs;
  bool pass = false;
};

LayerReport verify_layer(const TournamentLayer& layer);

/// [{"from":[i,t],"to":[j,u]}, ...] with 1-based block and sub-block labels.
std::string layer_to_json(const TournamentLayer& layer);

}  // namespace degulab
