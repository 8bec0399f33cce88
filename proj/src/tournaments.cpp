#include "degulab/tournaments.hpp"

#include "json.hpp"

namespace degulab {

Orientation build_cyclic_tournament(std::size_t m) {
  if (m < 2 || m % 2 != 0) throw ArgumentError("cyclic tournament needs an even M >= 2");
  Orientation o(m);
  for (std::size_t t = 0; t < m; ++t)
    for (std::size_t k = 0; k < m / 2; ++k) o.set(t, (t + k) % m, true);
  return o;
}

TournamentLayer::TournamentLayer(std::size_t blocks, std::size_t sub_blocks)
    : blocks_(blocks), sub_(sub_blocks), pairs_(blocks * (blocks - (blocks > 0)) / 2, Orientation(sub_blocks)) {}

std::size_t TournamentLayer::pair_index(std::size_t i, std::size_t j) const {
  if (i >= j || j >= blocks_) throw ArgumentError("tournament pair needs i < j < m_prev");
  // Row-major index of (i, j) in the strict upper triangle.
  return i * blocks_ - i * (i + 1) / 2 + (j - i - 1);
}

Orientation& TournamentLayer::pair(std::size_t i, std::size_t j) { return pairs_[pair_index(i, j)]; }
const Orientation& TournamentLayer::pair(std::size_t i, std::size_t j) const { return pairs_[pair_index(i, j)]; }

bool TournamentLayer::points_to(std::size_t a, std::size_t b) const {
  const std::size_t ia = a / sub_, ta = a % sub_, ib = b / sub_, tb = b % sub_;
  if (ia == ib) throw ArgumentError("nodes in the same block are not joined");
  return ia < ib ? pair(ia, ib).forward(ta, tb) : !pair(ib, ia).forward(tb, ta);
}

std::vector<std::size_t> TournamentLayer::in_neighbours(std::size_t node) const {
  std::vector<std::size_t> out;
  const std::size_t own = node / sub_;
  for (std::size_t other = 0; other < node_count(); ++other)
    if (other / sub_ != own && points_to(other, node)) out.push_back(other);
  return out;
}

std::vector<std::size_t> TournamentLayer::out_neighbours(std::size_t node) const {
  std::vector<std::size_t> out;
  const std::size_t own = node / sub_;
  for (std::size_t other = 0; other < node_count(); ++other)
    if (other / sub_ != own && points_to(node, other)) out.push_back(other);
  return out;
}

TournamentLayer build_layer(std::size_t m_prev, std::size_t m) {
  if (m_prev < 2) throw ArgumentError("build_layer: m_prev must be >= 2");
  const auto cyclic = build_cyclic_tournament(m);
  TournamentLayer layer(m_prev, m);
  for (std::size_t i = 0; i < m_prev; ++i)
    for (std::size_t j = i + 1; j < m_prev; ++j) layer.pair(i, j) = cyclic;
  return layer;
}

LayerReport verify_layer(const TournamentLayer& layer) {
  LayerReport r;
  const std::size_t m = layer.sub_block_count();
  r.expected_degree = layer.regular_degree();
  std::vector<std::size_t> in(layer.node_count(), 0), out(layer.node_count(), 0);
  for (std::size_t i = 0; i < layer.block_count(); ++i)
    for (std::size_t j = i + 1; j < layer.block_count(); ++j) {
      const auto& o = layer.pair(i, j);
      bool regular = true;
      for (std::size_t t = 0; t < m; ++t) {
        std::size_t row = 0, col = 0;
        for (std::size_t u = 0; u < m; ++u) {
          row += o.forward(t, u);
          col += o.forward(u, t);
          if (o.forward(t, u)) {
            ++out[i * m + t];
            ++in[j * m + u];
          } else {
            ++out[j * m + u];
            ++in[i * m + t];
          }
        }
        if (2 * row != m || 2 * col != m) regular = false;
      }
      if (!regular) r.non_regular_pairs.push_back({i, j});
    }
  for (std::size_t v = 0; v < layer.node_count(); ++v)
    if (in[v] != r.expected_degree || out[v] != r.expected_degree) r.deviating_nodes.push_back({v, in[v], out[v]});
  r.pass = r.deviating_nodes.empty() && r.non_regular_pairs.empty();
  return r;
}

std::string layer_to_json(const TournamentLayer& layer) {
  const std::size_t m = layer.sub_block_count();
  auto edges = nlohmann::json::array();
  for (std::size_t i = 0; i < layer.block_count(); ++i)
    for (std::size_t j = i + 1; j < layer.block_count(); ++j) {
      const auto& o = layer.pair(i, j);
      for (std::size_t t = 0; t < m; ++t)
        for (std::size_t u = 0; u < m; ++u) {
          nlohmann::json e;
          if (o.forward(t, u)) {
            e["from"] = {i + 1, t + 1};
            e["to"] = {j + 1, u + 1};
          } else {
            e["from"] = {j + 1, u + 1};
            e["to"] = {i + 1, t + 1};
          }
          edges.push_back(std::move(e));
        }
    }
  return edges.dump();
}

}  // namespace degulab
