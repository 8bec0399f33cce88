#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "degulab/graph.hpp"

namespace degulab {

enum class GraphFormat { dgl, csv, edge_list };

/// Parses "dgl" | "csv" | "edges"; "auto" is handled by load_graph.
GraphFormat parse_graph_format(std::string_view name);

// Binary layout: "DGL1", n as u32 LE, then the strict upper triangle in
// row-major order as f64 LE. The kind is inferred on load (simple iff every
// weight is 0 or 1).
void write_dgl(std::ostream& out, const WeightedGraph& g);
WeightedGraph read_dgl(std::istream& in);

// CSV: header "u,v,w", one row per nonzero weight with u < v. The order is
// max(n_hint, largest index + 1).
void write_csv(std::ostream& out, const WeightedGraph& g);
WeightedGraph read_csv(std::istream& in, std::size_t n_hint = 0);

// Edge list: "u v" per line, simple graphs only.
void write_edge_list(std::ostream& out, const WeightedGraph& g);
WeightedGraph read_edge_list(std::istream& in, std::size_t n_hint = 0);

void save_graph(const std::string& path, const WeightedGraph& g, GraphFormat format);
/// `format` may be "auto": DGL1 magic, then a "u,v,w" header, else edge list.
WeightedGraph load_graph(const std::string& path, std::string_view format = "auto", std::size_t n_hint = 0);

/// {"n":..., "ell":..., "assign":[...]}
std::string partition_to_json(const Partition& p);
Partition partition_from_json(std::string_view text);
void save_partition(const std::string& path, const Partition& p);
Partition load_partition(const std::string& path);

/// Accepts a JSON array of indices or {"vertices":[...]}.
VertexSet vertex_set_from_json(std::string_view text, std::size_t n);
std::string vertex_set_to_json(const VertexSet& vs);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace degulab
