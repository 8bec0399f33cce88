#include "degulab/graph_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace degulab {

using nlohmann::json;

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "dgl") return GraphFormat::dgl;
  if (name == "csv") return GraphFormat::csv;
  if (name == "edges" || name == "edge-list") return GraphFormat::edge_list;
  throw ArgumentError("unknown graph format '" + std::string(name) + "'");
}

namespace {

constexpr std::array<char, 4> kMagic{'D', 'G', 'L', '1'};

void put_u32(std::ostream& out, std::uint32_t x) {
  std::array<char, 4> b{};
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((x >> (8 * i)) & 0xFF);
  out.write(b.data(), 4);
}

void put_f64(std::ostream& out, double d) {
  const auto x = std::bit_cast<std::uint64_t>(d);
  std::array<char, 8> b{};
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((x >> (8 * i)) & 0xFF);
  out.write(b.data(), 8);
}

std::uint64_t get_le(std::istream& in, int bytes) {
  std::array<unsigned char, 8> b{};
  in.read(reinterpret_cast<char*>(b.data()), bytes);
  if (in.gcount() != bytes) throw IoError("DGL1: truncated input");
  std::uint64_t x = 0;
  for (int i = 0; i < bytes; ++i) x |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return x;
}

Vertex parse_vertex(const std::string& tok, std::size_t line) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(tok, &pos);
    if (pos != tok.size() || v > 0xFFFFFFFFull) throw std::invalid_argument(tok);
    return static_cast<Vertex>(v);
  } catch (const std::exception&) {
    throw IoError("line " + std::to_string(line) + ": bad vertex index '" + tok + "'");
  }
}

struct Triple {
  Vertex u, v;
  double w;
};

WeightedGraph from_triples(const std::vector<Triple>& t, std::size_t n_hint, GraphKind kind) {
  std::size_t n = n_hint;
  for (const auto& e : t) n = std::max<std::size_t>(n, std::max(e.u, e.v) + std::size_t{1});
  WeightedGraph g(n, kind);
  for (const auto& e : t) g.set_weight(e.u, e.v, e.w);
  return g;
}

}  // namespace

void write_dgl(std::ostream& out, const WeightedGraph& g) {
  out.write(kMagic.data(), 4);
  put_u32(out, static_cast<std::uint32_t>(g.order()));
  for (Vertex u = 0; u < g.order(); ++u)
    for (Vertex v = u + 1; v < g.order(); ++v) put_f64(out, g.weight(u, v));
  if (!out) throw IoError("DGL1: write failed");
}

WeightedGraph read_dgl(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), 4);
  if (in.gcount() != 4 || magic != kMagic) throw IoError("DGL1: bad magic");
  const auto n = static_cast<std::size_t>(get_le(in, 4));
  WeightedGraph g(n, GraphKind::weighted);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      const double w = std::bit_cast<double>(get_le(in, 8));
      try {
        g.set_weight(u, v, w);
      } catch (const ArgumentError& e) {
        throw IoError(std::string("DGL1: ") + e.what());
      }
    }
  if (in.peek() != std::char_traits<char>::eof()) throw IoError("DGL1: trailing bytes");
  g.infer_kind();
  return g;
}

void write_csv(std::ostream& out, const WeightedGraph& g) {
  out << "u,v,w\n";
  std::ostringstream line;
  line.precision(17);
  for (Vertex u = 0; u < g.order(); ++u)
    for (Vertex v = u + 1; v < g.order(); ++v) {
      const double w = g.weight(u, v);
      if (w == 0.0) continue;
      line.str({});
      line << u << ',' << v << ',' << w << '\n';
      out << line.str();
    }
  if (!out) throw IoError("CSV: write failed");
}

WeightedGraph read_csv(std::istream& in, std::size_t n_hint) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("CSV: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "u,v,w") throw IoError("CSV: expected header 'u,v,w'");
  std::vector<Triple> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c))
      throw IoError("CSV line " + std::to_string(lineno) + ": expected u,v,w");
    Triple t{parse_vertex(a, lineno), parse_vertex(b, lineno), 0.0};
    try {
      t.w = std::stod(c);
    } catch (const std::exception&) {
      throw IoError("CSV line " + std::to_string(lineno) + ": bad weight");
    }
    if (t.u >= t.v) throw IoError("CSV line " + std::to_string(lineno) + ": rows need u < v");
    rows.push_back(t);
  }
  try {
    auto g = from_triples(rows, n_hint, GraphKind::weighted);
    g.infer_kind();
    return g;
  } catch (const ArgumentError& e) {
    throw IoError(std::string("CSV: ") + e.what());
  }
}

void write_edge_list(std::ostream& out, const WeightedGraph& g) {
  if (!g.is_simple()) throw ArgumentError("edge lists hold simple graphs only");
  for (Vertex u = 0; u < g.order(); ++u)
    for (Vertex v = u + 1; v < g.order(); ++v)
      if (g.weight(u, v) != 0.0) out << u << ' ' << v << '\n';
  if (!out) throw IoError("edge list: write failed");
}

WeightedGraph read_edge_list(std::istream& in, std::size_t n_hint) {
  std::vector<Triple> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::stringstream ss(line);
    std::string a, b, extra;
    if (!(ss >> a)) continue;
    if (a[0] == '#') continue;
    if (!(ss >> b) || (ss >> extra)) throw IoError("edge list line " + std::to_string(lineno) + ": expected 'u v'");
    const Vertex u = parse_vertex(a, lineno), v = parse_vertex(b, lineno);
    if (u == v) throw IoError("edge list line " + std::to_string(lineno) + ": self-loop");
    rows.push_back({u, v, 1.0});
  }
  try {
    return from_triples(rows, n_hint, GraphKind::simple);
  } catch (const ArgumentError& e) {
    throw IoError(std::string("edge list: ") + e.what());
  }
}

void save_graph(const std::string& path, const WeightedGraph& g, GraphFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  switch (format) {
    case GraphFormat::dgl: write_dgl(out, g); break;
    case GraphFormat::csv: write_csv(out, g); break;
    case GraphFormat::edge_list: write_edge_list(out, g); break;
  }
  out.close();
  if (!out) throw IoError("write to '" + path + "' failed");
}

WeightedGraph load_graph(const std::string& path, std::string_view format, std::size_t n_hint) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  GraphFormat f{};
  if (format == "auto") {
    std::array<char, 5> head{};
    in.read(head.data(), 5);
    const auto got = in.gcount();
    in.clear();
    in.seekg(0);
    if (got >= 4 && std::memcmp(head.data(), kMagic.data(), 4) == 0) f = GraphFormat::dgl;
    else if (got == 5 && std::string_view(head.data(), 5) == "u,v,w") f = GraphFormat::csv;
    else f = GraphFormat::edge_list;
  } else {
    f = parse_graph_format(format);
  }
  switch (f) {
    case GraphFormat::dgl: return read_dgl(in);
    case GraphFormat::csv: return read_csv(in, n_hint);
    case GraphFormat::edge_list: return read_edge_list(in, n_hint);
  }
  throw InternalError("unreachable graph format");
}

std::string partition_to_json(const Partition& p) {
  json j;
  j["n"] = p.order();
  j["ell"] = p.cluster_count();
  j["assign"] = p.assignment();
  return j.dump();
}

Partition partition_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
    const auto n = j.at("n").get<std::size_t>();
    const auto ell = j.at("ell").get<std::size_t>();
    auto assign = j.at("assign").get<std::vector<std::uint32_t>>();
    if (assign.size() != n) throw IoError("partition JSON: assign length != n");
    return Partition(std::move(assign), ell);
  } catch (const json::exception& e) {
    throw IoError(std::string("partition JSON: ") + e.what());
  }
}

void save_partition(const std::string& path, const Partition& p) { write_text_file(path, partition_to_json(p) + "\n"); }

Partition load_partition(const std::string& path) { return partition_from_json(read_text_file(path)); }

VertexSet vertex_set_from_json(std::string_view text, std::size_t n) {
  try {
    const json j = json::parse(text);
    const json& arr = j.is_object() ? j.at("vertices") : j;
    return VertexSet::make(arr.get<std::vector<Vertex>>(), n);
  } catch (const json::exception& e) {
    throw IoError(std::string("vertex set JSON: ") + e.what());
  }
}

std::string vertex_set_to_json(const VertexSet& vs) { return json(vs.vertices()).dump(); }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace degulab
