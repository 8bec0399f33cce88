#include "degulab/construction.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "degulab/parallel.hpp"
#include "degulab/rng.hpp"
#include "json.hpp"

namespace degulab {

namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

// Cells of layer G_r live on level 0 for r = 1 and on level r otherwise.
std::size_t cell_level(std::size_t r) { return r == 1 ? 0 : r; }

}  // namespace

// ---------------------------------------------------------------------------
// Schedule and levels

std::vector<std::uint64_t> LevelSchedule::separator_degrees() const {
  if (s < 2) return {};
  return {d.begin() + 1, d.begin() + static_cast<std::ptrdiff_t>(s)};
}

double LevelSchedule::tower_base() const { return std::exp2(1.0 / (4.0 * static_cast<double>(c_exp))); }

LevelSchedule compute_schedule(std::size_t s, std::uint64_t c_exp, std::uint64_t cap) {
  if (s < 1) throw ArgumentError("schedule: s must be >= 1");
  if (c_exp < 1) throw ArgumentError("schedule: c_exp must be >= 1");
  LevelSchedule out;
  out.s = s;
  out.c_exp = c_exp;
  out.m = {2};
  out.big_m = {0};
  out.d = {0};
  out.d_odd = {false};
  for (std::size_t r = 1; r <= s; ++r) {
    const std::uint64_t prev = out.m.back();
    const std::uint64_t e = ceil_div(prev, 4 * c_exp);
    if (e >= 63 || (prev << e) >> e != prev || (prev << e) > cap)
      throw SizeError("schedule: m_" + std::to_string(r) + " exceeds the cap " + std::to_string(cap));
    const std::uint64_t big = std::uint64_t{1} << e;
    out.big_m.push_back(big);
    out.m.push_back(prev * big);
    out.d.push_back((prev - 1) * big / 2);
    out.d_odd.push_back(out.d.back() % 2 == 1);
  }
  return out;
}

LevelStructure::LevelStructure(std::size_t n, const LevelSchedule& schedule) : n_(n) {
  const std::uint64_t ms = schedule.m.back();
  if (n == 0 || n % ms != 0)
    throw ArgumentError("construction needs m_s | n (m_s = " + std::to_string(ms) + ", n = " + std::to_string(n) + ")");
  for (std::size_t r = 0; r <= schedule.s; ++r) {
    cell_count_.push_back(static_cast<std::size_t>(schedule.m[r]));
    sub_count_.push_back(r == 0 ? 2 : static_cast<std::size_t>(schedule.big_m[r]));
  }
}

VertexSet LevelStructure::cell(std::size_t r, std::size_t index) const {
  if (index >= cell_count(r)) throw ArgumentError("cell index out of range");
  const std::size_t sz = cell_size(r);
  return VertexSet::range(static_cast<Vertex>(index * sz), static_cast<Vertex>((index + 1) * sz));
}

VertexSet LevelStructure::cell(std::size_t r, std::size_t i, std::size_t t) const {
  if (r == 0) throw ArgumentError("level 0 cells have no parent block");
  if (t >= sub_count_.at(r)) throw ArgumentError("sub-interval index out of range");
  return cell(r, i * sub_count_[r] + t);
}

Partition LevelStructure::partition(std::size_t r) const { return Partition::intervals(n_, cell_count(r)); }

// ---------------------------------------------------------------------------
// Bundle

bool LevelWiring::selects(std::size_t j, std::size_t i, std::size_t t) const {
  const std::size_t m = tournament.node_count();
  const std::int32_t row = row_of[j * m + i];
  if (row < 0) return false;
  return separator_for(j).in_a(static_cast<std::size_t>(row), t);
}

double ConstructionBundle::layer_weight(std::size_t r, Vertex x, Vertex y) const {
  if (r < 1 || r > params.s) throw ArgumentError("layer index out of range");
  if (x == y) return 0.0;
  const std::size_t lv = cell_level(r);
  const std::size_t m = levels.cell_count(lv);
  return cell_weights_[r - 1][levels.cell_of(lv, x) * m + levels.cell_of(lv, y)];
}

WeightedGraph ConstructionBundle::layer_graph(std::size_t r) const {
  if (r < 1 || r > params.s) throw ArgumentError("layer index out of range");
  if (has_layers()) return layers_[r - 1];
  WeightedGraph g(params.n, GraphKind::weighted);
  for (Vertex u = 0; u < params.n; ++u)
    for (Vertex v = u + 1; v < params.n; ++v) g.set_weight(u, v, layer_weight(r, u, v));
  return g;
}

WeightedGraph& ConstructionBundle::stored_layer(std::size_t r) {
  if (!has_layers()) throw PreconditionError("layers are not materialized");
  return layers_.at(r - 1);
}

const WeightedGraph& ConstructionBundle::stored_layer(std::size_t r) const {
  if (!has_layers()) throw PreconditionError("layers are not materialized");
  return layers_.at(r - 1);
}

bool ConstructionBundle::exact_from(std::size_t r) const {
  // Layer G_{r'} uses the (M_{r'}, D_{r'-1}) separator.
  for (std::size_t rp = r + 1; rp <= params.s; ++rp)
    if (schedule.d[rp - 1] % 2 != 0) return false;
  return true;
}

ConstructionBundle build_construction(std::size_t n, std::size_t s, double delta, std::uint64_t c_exp,
                                      std::uint64_t seed, const ConstructionOptions& options) {
  if (!(delta > 0.0 && delta < 0.5)) throw ArgumentError("construction needs 0 < delta < 1/2");
  ConstructionBundle b;
  b.params = {n, s, delta, c_exp, seed};
  b.options = options;
  b.schedule = compute_schedule(s, c_exp, options.schedule_cap);
  b.levels = LevelStructure(n, b.schedule);
  if (0.9 + static_cast<double>(s - 1) * delta > 1.0 + 1e-12)
    throw ArgumentError("weights would exceed 1: 0.9 + (s - 1) delta > 1");
  if (static_cast<double>(s) * delta > 0.1 + 1e-12)
    b.warnings.push_back("s * delta = " + std::to_string(static_cast<double>(s) * delta) + " exceeds 0.1");

  for (std::size_t r = 1; r + 1 <= s; ++r) {
    LevelWiring w;
    w.r = r;
    const auto mprev = static_cast<std::size_t>(b.schedule.m[r - 1]);
    const auto big = static_cast<std::size_t>(b.schedule.big_m[r]);
    const auto sep_m = static_cast<std::size_t>(b.schedule.big_m[r + 1]);
    const auto sep_d = static_cast<std::size_t>(b.schedule.d[r]);
    w.tournament = build_layer(mprev, big);
    const std::size_t m = w.tournament.node_count();

    const std::size_t count = options.sharing == SeparatorSharing::shared_per_level ? 1 : m;
    w.separators.resize(count);
    w.separator_info.resize(count);
    w.separator_seeds.resize(count);
    for (std::size_t j = 0; j < count; ++j)
      w.separator_seeds[j] = options.sharing == SeparatorSharing::shared_per_level
                                 ? derive_seed(seed, Stream::separator, {r})
                                 : derive_seed(seed, Stream::separator, {r, j});
    parallel_for(count, [&](std::size_t j) {
      w.separators[j] = build_separator(sep_m, sep_d, c_exp, w.separator_seeds[j], options.separator,
                                        &w.separator_info[j]);
    });

    w.in_neighbours.resize(m);
    w.row_of.assign(m * m, -1);
    for (std::size_t j = 0; j < m; ++j) {
      const auto in = w.tournament.in_neighbours(j);
      if (in.size() != sep_d) throw InternalError("in-degree differs from D_r");
      for (std::size_t l = 0; l < in.size(); ++l) {
        w.in_neighbours[j].push_back(static_cast<std::uint32_t>(in[l]));
        w.row_of[j * m + in[l]] = static_cast<std::int32_t>(l);
      }
    }
    b.wiring.push_back(std::move(w));
  }

  // Cell-level weights of every layer.
  b.cell_weights_.resize(s);
  b.cell_weights_[0] = {0.1, 0.0, 0.0, 0.9};
  for (std::size_t r = 1; r + 1 <= s; ++r) {
    const LevelWiring& w = b.wiring[r - 1];
    const std::size_t m = w.tournament.node_count();
    const std::size_t sub = static_cast<std::size_t>(b.schedule.big_m[r + 1]);
    const std::size_t mm = m * sub;
    auto& cw = b.cell_weights_[r];
    cw.assign(mm * mm, 0.0);
    const std::size_t block = w.tournament.sub_block_count();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (i / block == j / block || !w.tournament.points_to(i, j)) continue;
        // x in X_i, y in the selected sub-cells of X_j.
        for (std::size_t t = 0; t < sub; ++t) {
          if (!w.selects(j, i, t)) continue;
          const std::size_t cy = j * sub + t;
          for (std::size_t u = 0; u < sub; ++u) {
            const std::size_t cx = i * sub + u;
            cw[cx * mm + cy] = delta;
            cw[cy * mm + cx] = delta;
          }
        }
      }
  }

  if (options.materialize_layers) {
    b.layers_.reserve(s);
    for (std::size_t r = 1; r <= s; ++r) {
      WeightedGraph g(n, GraphKind::weighted);
      parallel_for(n, [&](std::size_t u) {
        for (Vertex v = static_cast<Vertex>(u) + 1; v < n; ++v)
          g.set_weight(static_cast<Vertex>(u), v, b.layer_weight(r, static_cast<Vertex>(u), v));
      }, 16);
      b.layers_.push_back(std::move(g));
    }
  }

  // Summed in order r = 1..s so that identical layer terms give identical totals.
  b.total = WeightedGraph(n, GraphKind::weighted);
  parallel_for(n, [&](std::size_t u) {
    for (Vertex v = static_cast<Vertex>(u) + 1; v < n; ++v) {
      double sum = 0.0;
      for (std::size_t r = 1; r <= s; ++r) sum += b.layer_weight(r, static_cast<Vertex>(u), v);
      b.total.set_weight(static_cast<Vertex>(u), v, sum);
    }
  }, 16);
  return b;
}

// ---------------------------------------------------------------------------
// Audits

HomogeneityReport verify_homogeneity(const ConstructionBundle& b) {
  HomogeneityReport rep;
  const std::size_t n = b.params.n;
  const std::size_t s = b.params.s;
  const double delta = b.params.delta;
  auto note = [&](std::size_t layer, std::size_t level, std::size_t ca, std::size_t cb, std::string why) {
    ++rep.violation_count;
    if (rep.violations.size() < 100) rep.violations.push_back({layer, level, ca, cb, std::move(why)});
  };
  auto weight = [&](std::size_t r, Vertex x, Vertex y) {
    return b.has_layers() ? b.stored_layer(r).weight(x, y) : b.layer_weight(r, x, y);
  };

  for (std::size_t r = 1; r <= s; ++r) {
    ++rep.layers_checked;
    const std::size_t lv = cell_level(r);
    const std::size_t m = b.levels.cell_count(lv);
    const std::size_t sz = b.levels.cell_size(lv);
    for (std::size_t ca = 0; ca < m; ++ca)
      for (std::size_t cb = ca; cb < m; ++cb) {
        if (r > 1 && ca == cb) continue;
        ++rep.cell_pairs_checked;
        double expect = 0.0;
        if (r == 1) {
          expect = ca != cb ? 0.0 : (ca == 0 ? 0.1 : 0.9);
        } else {
          expect = weight(r, static_cast<Vertex>(ca * sz), static_cast<Vertex>(cb * sz));
          if (expect != 0.0 && expect != delta) {
            note(r, lv, ca, cb, "weight outside {0, delta}");
            continue;
          }
        }
        bool ok = true;
        for (std::size_t x = ca * sz; x < (ca + 1) * sz && ok; ++x)
          for (std::size_t y = cb * sz; y < (cb + 1) * sz; ++y) {
            if (x == y) continue;
            if (weight(r, static_cast<Vertex>(x), static_cast<Vertex>(y)) != expect) {
              ok = false;
              break;
            }
          }
        if (!ok) note(r, lv, ca, cb, r == 1 ? "first layer differs from 0.1 / 0.9 / 0 pattern" : "non-constant block");
      }
  }

  if (b.has_layers()) {
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) {
        double sum = 0.0;
        for (std::size_t r = 1; r <= s; ++r) sum += b.stored_layer(r).weight(u, v);
        rep.max_sum_error = std::max(rep.max_sum_error, std::abs(sum - b.total.weight(u, v)));
      }
    rep.sum_decomposition_ok = rep.max_sum_error <= 1e-12;
  }

  const std::size_t ms = b.levels.cell_count(s);
  const std::size_t sz = b.levels.cell_size(s);
  for (std::size_t ca = 0; ca < ms && rep.top_level_constant; ++ca)
    for (std::size_t cb = ca + 1; cb < ms && rep.top_level_constant; ++cb) {
      const double expect = b.total.weight(static_cast<Vertex>(ca * sz), static_cast<Vertex>(cb * sz));
      for (std::size_t x = ca * sz; x < (ca + 1) * sz && rep.top_level_constant; ++x)
        for (std::size_t y = cb * sz; y < (cb + 1) * sz; ++y)
          if (b.total.weight(static_cast<Vertex>(x), static_cast<Vertex>(y)) != expect) {
            rep.top_level_constant = false;
            break;
          }
    }

  rep.pass = rep.violation_count == 0 && rep.sum_decomposition_ok && rep.top_level_constant;
  return rep;
}

DegreeSumReport audit_degree_sums(const ConstructionBundle& b, std::size_t r) {
  const std::size_t s = b.params.s;
  if (r < 1 || r > s) throw ArgumentError("audit_degree_sums needs 1 <= r <= s");
  const std::size_t n = b.params.n;
  const double delta = b.params.delta;
  DegreeSumReport rep;
  rep.r = r;
  rep.target = 0.5 * delta * static_cast<double>(s - r);
  rep.deviation_bound = 0.25 * delta * static_cast<double>(s - r);
  rep.mode = r == s ? "vacuous" : (b.exact_from(r) ? "exact" : "generalized");
  rep.asserted = rep.mode != "generalized";

  const std::size_t cells = b.levels.cell_count(r - 1);
  const std::size_t csize = b.levels.cell_size(r - 1);
  std::vector<double> dev(n * cells, 0.0);
  parallel_for(n, [&](std::size_t x) {
    std::vector<double> sum(cells, 0.0);
    for (std::size_t rp = r + 1; rp <= s; ++rp) {
      std::vector<double> bucket(cells, 0.0);
      if (b.has_layers()) {
        const auto row = b.stored_layer(rp).row(static_cast<Vertex>(x));
        for (std::size_t y = 0; y < n; ++y) bucket[y / csize] += row[y];
      } else {
        for (std::size_t y = 0; y < n; ++y)
          bucket[y / csize] += b.layer_weight(rp, static_cast<Vertex>(x), static_cast<Vertex>(y));
      }
      for (std::size_t c = 0; c < cells; ++c) sum[c] += bucket[c] / static_cast<double>(csize);
    }
    const std::size_t own = x / csize;
    for (std::size_t c = 0; c < cells; ++c)
      dev[x * cells + c] = c == own ? -1.0 : std::abs(sum[c] - rep.target);
  }, 8);

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t c = 0; c < cells; ++c) {
      const double d = dev[x * cells + c];
      if (d < 0.0) continue;
      ++rep.pairs_checked;
      if (d > rep.max_abs_deviation) {
        rep.max_abs_deviation = d;
        rep.worst_vertex = x;
        rep.worst_cell = c;
      }
    }

  constexpr std::size_t kBins = 10;
  const double top = std::max(rep.deviation_bound, rep.max_abs_deviation);
  rep.deviation_histogram.assign(kBins, 0);
  for (std::size_t k = 0; k <= kBins; ++k)
    rep.deviation_histogram_edges.push_back(top * static_cast<double>(k) / kBins);
  for (double d : dev) {
    if (d < 0.0) continue;
    std::size_t bin = top > 0.0 ? static_cast<std::size_t>(d / top * kBins) : 0;
    rep.deviation_histogram[std::min(bin, kBins - 1)]++;
  }

  rep.pass = rep.asserted ? rep.max_abs_deviation <= kTol : true;
  return rep;
}

// ---------------------------------------------------------------------------
// Tower function

namespace {

// A positive value tracked as (value, log10 value, log10 log10 value), each of
// which may overflow to +inf independently.
struct LogTriple {
  double val, lg, lglg;
};

LogTriple power_of(double base, const LogTriple& e) {
  const double c = std::log10(base);
  LogTriple out{};
  out.lg = e.val * c;
  out.lglg = e.lg + std::log10(c);
  out.val = std::pow(base, e.val);
  return out;
}

}  // namespace

TowerValue tower_value(double a, double x, TowerVariant variant) {
  if (!(a > 1.0) || !std::isfinite(a)) throw ArgumentError("tower base must be a finite a > 1");
  if (!(x >= 0.0) || !std::isfinite(x)) throw ArgumentError("tower argument must be a finite x >= 0");
  TowerValue out;
  out.base = a;
  out.x = x;
  out.variant = variant;
  out.height = x < 1.0 ? 0 : static_cast<std::uint64_t>(std::floor(x));
  out.top_exponent = 1.0;

  LogTriple v{1.0, 0.0, -std::numeric_limits<double>::infinity()};
  for (std::uint64_t k = 0; k < out.height; ++k) {
    const bool last = k + 1 == out.height;
    const double b = variant == TowerVariant::self_referential || last ? a : 2.0;
    v = power_of(b, v);
    if (std::isinf(v.lglg) && v.lglg > 0) break;
  }
  out.approx = v.val;
  out.log10_value = v.lg;
  out.log10_log10_value = v.lglg;

  if (a == 2.0) {
    // 2^^h has 2^^(h-1) + 1 bits; 2^^5 is the last one within 2^20 bits.
    constexpr std::uint64_t kMaxExactHeight = 5;
    if (out.height <= kMaxExactHeight) {
      mpz_class value = 1;
      for (std::uint64_t k = 0; k < out.height; ++k) {
        mpz_class next;
        mpz_ui_pow_ui(next.get_mpz_t(), 2, value.get_ui());
        value = next;
      }
      out.exact = value.get_str(10);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Manifest

std::string construction_manifest(const ConstructionBundle& b) {
  using nlohmann::json;
  json j;
  j["tool"] = "degulab";
  j["version"] = kVersion;
  j["params"] = {{"n", b.params.n},
                 {"s", b.params.s},
                 {"delta", b.params.delta},
                 {"c_exp", b.params.c_exp},
                 {"seed", b.params.seed}};
  j["options"] = {{"separator_sharing",
                   b.options.sharing == SeparatorSharing::shared_per_level ? "shared-per-level" : "per-target"},
                  {"materialize_layers", b.options.materialize_layers},
                  {"separator_retry_cap", b.options.separator.retry_cap}};
  const auto& sc = b.schedule;
  j["schedule"] = {{"m", sc.m},
                   {"M", std::vector<std::uint64_t>(sc.big_m.begin() + 1, sc.big_m.end())},
                   {"D", std::vector<std::uint64_t>(sc.d.begin() + 1, sc.d.end())},
                   {"D_used", sc.separator_degrees()},
                   {"tower_base", sc.tower_base()}};
  json parity = json::array();
  for (std::size_t r = 1; r <= sc.s; ++r) parity.push_back({{"r", r}, {"D", sc.d[r]}, {"odd", static_cast<bool>(sc.d_odd[r])}});
  j["schedule"]["parity"] = parity;

  json seps = json::array();
  for (const auto& w : b.wiring) {
    json lvl;
    lvl["r"] = w.r;
    lvl["layer"] = w.r + 1;
    lvl["M"] = sc.big_m[w.r + 1];
    lvl["D"] = sc.d[w.r];
    json items = json::array();
    for (std::size_t k = 0; k < w.separators.size(); ++k) {
      const auto& info = w.separator_info[k];
      items.push_back({{"target", w.separators.size() == 1 ? json("all") : json(k)},
                       {"seed", w.separator_seeds[k]},
                       {"mode", to_string(info.mode)},
                       {"stage", info.stage},
                       {"attempts", info.attempts}});
    }
    lvl["separators"] = items;
    seps.push_back(lvl);
  }
  j["separators"] = seps;
  const auto tow = tower_value(sc.tower_base(), static_cast<double>(sc.s),
                               b.options.self_referential_tower ? TowerVariant::self_referential : TowerVariant::literal);
  j["tower"] = {{"base", tow.base},
                {"x", tow.x},
                {"variant", b.options.self_referential_tower ? "self-referential" : "literal"},
                {"log10_value", std::isfinite(tow.log10_value) ? json(tow.log10_value) : json(nullptr)}};
  j["warnings"] = b.warnings;
  return j.dump(2);
}

}  // namespace degulab
