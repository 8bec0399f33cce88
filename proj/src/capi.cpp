#include "degulab/degulab.h"

#include <exception>
#include <new>
#include <string>
#include <vector>

#include "degulab/construction.hpp"
#include "degulab/graph_io.hpp"
#include "degulab/pair_analysis.hpp"
#include "degulab/partition_toolkit.hpp"
#include "degulab/regular_hosts.hpp"
#include "degulab/reports.hpp"
#include "degulab/rounding.hpp"
#include "degulab/separators.hpp"

using nlohmann::json;
namespace dl = degulab;

struct dgl_graph {
  dl::WeightedGraph g;
};
struct dgl_partition {
  dl::Partition p;
};
struct dgl_separator {
  dl::BipartitionSystem sys;
  std::optional<dl::SeparatorBuildInfo> info;
  json params = json::object();
};
struct dgl_bundle {
  dl::ConstructionBundle b;
};
struct dgl_report {
  dl::Report r;
  mutable std::string json_cache;
  mutable std::string csv_cache;
};

namespace {

thread_local std::string g_last_error;

template <class F>
dgl_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return DGL_OK;
  } catch (const dl::Error& e) {
    g_last_error = e.what();
    return static_cast<dgl_status>(static_cast<int>(e.code()));
  } catch (const json::exception& e) {
    g_last_error = std::string("malformed JSON: ") + e.what();
    return DGL_E_IO;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return DGL_E_SIZE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DGL_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return DGL_E_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw dl::ArgumentError(std::string(what) + " must not be NULL");
}

dl::VertexSet to_set(const uint32_t* xs, size_t count, size_t n, const char* what) {
  if (count > 0) require(xs, what);
  return dl::VertexSet::make(std::vector<dl::Vertex>(xs, xs + count), n);
}

dgl_report* wrap(dl::Report r) { return new dgl_report{std::move(r), {}, {}}; }

json set_json(const dl::VertexSet& v) { return dl::to_json(v); }

}  // namespace

extern "C" {

const char* dgl_version(void) { return dl::kVersion; }

const char* dgl_status_name(dgl_status status) {
  if (status == DGL_OK) return "ok";
  if (status >= DGL_E_ARGUMENT && status <= DGL_E_INTERNAL) return dl::error_code_name(static_cast<dl::ErrorCode>(status));
  return "unknown";
}

const char* dgl_last_error(void) { return g_last_error.c_str(); }

// ---- graphs

dgl_status dgl_graph_create(size_t n, int simple, dgl_graph** out) {
  return guarded([&] {
    require(out, "out");
    *out = new dgl_graph{dl::WeightedGraph(n, simple ? dl::GraphKind::simple : dl::GraphKind::weighted)};
  });
}

dgl_status dgl_graph_generate(const char* kind, size_t n, double p, const size_t* offsets, size_t offset_count,
                              uint64_t seed, dgl_graph** out) {
  return guarded([&] {
    require(kind, "kind");
    require(out, "out");
    const std::string k = kind;
    dl::WeightedGraph g;
    if (k == "edgeless") {
      g = dl::make_edgeless(n);
    } else if (k == "complete") {
      g = dl::make_complete(n);
    } else if (k == "circulant") {
      if (offset_count > 0) require(offsets, "offsets");
      g = dl::make_circulant(n, std::span<const std::size_t>(offsets, offset_count));
    } else if (k == "random-simple") {
      if (!(p >= 0.0 && p <= 1.0)) throw dl::ArgumentError("p must lie in [0, 1]");
      g = dl::make_random_simple(n, p, seed);
    } else if (k == "random-weighted") {
      g = dl::make_random_weighted(n, seed);
    } else {
      throw dl::ArgumentError("unknown graph kind '" + k + "'");
    }
    *out = new dgl_graph{std::move(g)};
  });
}

dgl_status dgl_graph_load(const char* path, const char* format, size_t n_hint, dgl_graph** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new dgl_graph{dl::load_graph(path, format ? format : "auto", n_hint)};
  });
}

dgl_status dgl_graph_save(const dgl_graph* g, const char* path, const char* format) {
  return guarded([&] {
    require(g, "graph");
    require(path, "path");
    dl::save_graph(path, g->g, dl::parse_graph_format(format ? format : "dgl"));
  });
}

size_t dgl_graph_order(const dgl_graph* g) { return g ? g->g.order() : 0; }
int dgl_graph_is_simple(const dgl_graph* g) { return g && g->g.is_simple() ? 1 : 0; }

double dgl_graph_weight(const dgl_graph* g, uint32_t u, uint32_t v) {
  if (!g || u >= g->g.order() || v >= g->g.order()) return 0.0;
  return g->g.weight(u, v);
}

dgl_status dgl_graph_set_weight(dgl_graph* g, uint32_t u, uint32_t v, double w) {
  return guarded([&] {
    require(g, "graph");
    if (u >= g->g.order() || v >= g->g.order()) throw dl::ArgumentError("vertex index out of range");
    g->g.set_weight(u, v, w);
  });
}

void dgl_graph_free(dgl_graph* g) { delete g; }

// ---- partitions

dgl_status dgl_partition_create(const uint32_t* assign, size_t n, size_t ell, dgl_partition** out) {
  return guarded([&] {
    require(out, "out");
    if (n > 0) require(assign, "assign");
    std::vector<std::uint32_t> a(assign, assign + n);
    *out = new dgl_partition{ell == 0 ? dl::Partition::from_assignment(std::move(a)) : dl::Partition(std::move(a), ell)};
  });
}

dgl_status dgl_partition_load(const char* path, dgl_partition** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new dgl_partition{dl::load_partition(path)};
  });
}

dgl_status dgl_partition_save(const dgl_partition* p, const char* path) {
  return guarded([&] {
    require(p, "partition");
    require(path, "path");
    dl::save_partition(path, p->p);
  });
}

size_t dgl_partition_order(const dgl_partition* p) { return p ? p->p.order() : 0; }
size_t dgl_partition_cluster_count(const dgl_partition* p) { return p ? p->p.cluster_count() : 0; }
uint32_t dgl_partition_cluster_of(const dgl_partition* p, uint32_t v) {
  return p && v < p->p.order() ? p->p.cluster_of(v) : UINT32_MAX;
}
void dgl_partition_free(dgl_partition* p) { delete p; }

// ---- reports

const char* dgl_report_json(const dgl_report* r) {
  if (!r) return "";
  r->json_cache = r->r.json_text();
  return r->json_cache.c_str();
}

const char* dgl_report_csv(const dgl_report* r) {
  if (!r) return "";
  r->csv_cache = r->r.csv_text();
  return r->csv_cache.c_str();
}

int dgl_report_passed(const dgl_report* r) { return r && r->r.passed() ? 1 : 0; }

void dgl_report_set_passed(dgl_report* r, int passed) {
  if (r) r->r.set_passed(passed != 0);
}

dgl_status dgl_report_annotate(dgl_report* r, const char* key, const char* json_value) {
  return guarded([&] {
    require(r, "report");
    require(key, "key");
    require(json_value, "json_value");
    r->r.doc()[key] = json::parse(json_value);
  });
}

dgl_status dgl_report_write(const dgl_report* r, const char* json_path, const char* csv_path) {
  return guarded([&] {
    require(r, "report");
    r->r.write(json_path ? json_path : "", csv_path ? csv_path : "");
  });
}

dgl_status dgl_report_parse(const char* json_text, dgl_report** out) {
  return guarded([&] {
    require(json_text, "json_text");
    require(out, "out");
    *out = wrap(dl::Report::parse(json_text));
  });
}

void dgl_report_free(dgl_report* r) { delete r; }

// ---- separators and schedule

dgl_status dgl_separator_build(size_t m, size_t d, uint64_t c_exp, uint64_t seed, size_t retry_cap,
                               dgl_separator** out) {
  return guarded([&] {
    require(out, "out");
    dl::SeparatorBuildOptions opt;
    if (retry_cap > 0) opt.retry_cap = retry_cap;
    dl::SeparatorBuildInfo info;
    auto sys = dl::build_separator(m, d, c_exp, seed, opt, &info);
    *out = new dgl_separator{std::move(sys), info,
                             {{"M", m}, {"D", d}, {"c_exp", c_exp}, {"seed", seed}, {"retry_cap", opt.retry_cap}}};
  });
}

dgl_status dgl_separator_from_json(const char* text, dgl_separator** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new dgl_separator{dl::separator_from_json(text), std::nullopt, json::object()};
  });
}

dgl_status dgl_separator_save(const dgl_separator* s, const char* path) {
  return guarded([&] {
    require(s, "separator");
    require(path, "path");
    dl::write_text_file(path, dl::separator_to_json(s->sys));
  });
}

dgl_status dgl_separator_verify(const dgl_separator* s, double c_bal, dgl_report** out) {
  return guarded([&] {
    require(s, "separator");
    require(out, "out");
    const auto rep = dl::verify_separator(s->sys, c_bal);
    auto report = dl::separator_report(s->sys, rep, s->info ? &*s->info : nullptr);
    for (auto it = s->params.begin(); it != s->params.end(); ++it) report.doc()["params"][it.key()] = it.value();
    *out = wrap(std::move(report));
  });
}

dgl_status dgl_mass_split_count(const dgl_separator* s, const double* lambda, size_t m, double zeta, size_t* count) {
  return guarded([&] {
    require(s, "separator");
    require(count, "count");
    if (m > 0) require(lambda, "lambda");
    if (m != s->sys.ground_size()) throw dl::ArgumentError("lambda length differs from the ground set size");
    *count = dl::mass_split_count(s->sys, dl::MassVector(std::vector<double>(lambda, lambda + m)), zeta);
  });
}

void dgl_separator_free(dgl_separator* s) { delete s; }

dgl_status dgl_schedule(size_t s, uint64_t c_exp, uint64_t cap, dgl_report** out) {
  return guarded([&] {
    require(out, "out");
    *out = wrap(dl::schedule_report(dl::compute_schedule(s, c_exp, cap == 0 ? (uint64_t{1} << 24) : cap)));
  });
}

dgl_status dgl_tower(double a, double x, int self_referential, dgl_report** out) {
  return guarded([&] {
    require(out, "out");
    *out = wrap(dl::tower_report(
        dl::tower_value(a, x, self_referential ? dl::TowerVariant::self_referential : dl::TowerVariant::literal)));
  });
}

// ---- construction

void dgl_construct_options_init(dgl_construct_options* o) {
  if (!o) return;
  o->per_target_separators = 0;
  o->total_only = 0;
  o->separator_retry_cap = dl::SeparatorBuildOptions{}.retry_cap;
  o->schedule_cap = 0;
}

dgl_status dgl_bundle_build(size_t n, size_t s, double delta, uint64_t c_exp, uint64_t seed,
                            const dgl_construct_options* options, dgl_bundle** out) {
  return guarded([&] {
    require(out, "out");
    dl::ConstructionOptions opt;
    if (options) {
      opt.sharing = options->per_target_separators ? dl::SeparatorSharing::per_target
                                                   : dl::SeparatorSharing::shared_per_level;
      opt.materialize_layers = options->total_only == 0;
      if (options->separator_retry_cap > 0) opt.separator.retry_cap = options->separator_retry_cap;
      if (options->schedule_cap > 0) opt.schedule_cap = options->schedule_cap;
    }
    *out = new dgl_bundle{dl::build_construction(n, s, delta, c_exp, seed, opt)};
  });
}

size_t dgl_bundle_depth(const dgl_bundle* b) { return b ? b->b.params.s : 0; }

dgl_status dgl_bundle_total(const dgl_bundle* b, dgl_graph** out) {
  return guarded([&] {
    require(b, "bundle");
    require(out, "out");
    *out = new dgl_graph{b->b.total};
  });
}

dgl_status dgl_bundle_layer(const dgl_bundle* b, size_t r, dgl_graph** out) {
  return guarded([&] {
    require(b, "bundle");
    require(out, "out");
    if (r < 1 || r > b->b.params.s) throw dl::ArgumentError("layer index must lie in [1, s]");
    *out = new dgl_graph{b->b.layer_graph(r)};
  });
}

dgl_status dgl_bundle_level_partition(const dgl_bundle* b, size_t r, dgl_partition** out) {
  return guarded([&] {
    require(b, "bundle");
    require(out, "out");
    if (r > b->b.params.s) throw dl::ArgumentError("level index must lie in [0, s]");
    *out = new dgl_partition{b->b.levels.partition(r)};
  });
}

dgl_status dgl_bundle_manifest(const dgl_bundle* b, dgl_report** out) {
  return guarded([&] {
    require(b, "bundle");
    require(out, "out");
    const json m = json::parse(dl::construction_manifest(b->b));
    dl::CsvTable t;
    t.header = {"r", "m", "M", "D"};
    const auto& sc = b->b.schedule;
    for (std::size_t r = 1; r <= sc.s; ++r) t.rows.push_back({r, sc.m[r], sc.big_m[r], sc.d[r]});
    dl::Report rep("manifest", m.value("params", json::object()), m, std::move(t), true);
    *out = wrap(std::move(rep));
  });
}

dgl_status dgl_bundle_verify_homogeneity(const dgl_bundle* b, dgl_report** out) {
  return guarded([&] {
    require(b, "bundle");
    require(out, "out");
    *out = wrap(dl::homogeneity_report(b->b, dl::verify_homogeneity(b->b)));
  });
}

dgl_status dgl_bundle_audit_degree_sums(const dgl_bundle* b, size_t r, dgl_report** out) {
  return guarded([&] {
    require(b, "bundle");
    require(out, "out");
    const std::size_t s = b->b.params.s;
    if (r > s) throw dl::ArgumentError("level index must lie in [0, s]");
    std::vector<dl::DegreeSumReport> rs;
    for (std::size_t k = (r == 0 ? 1 : r); k <= (r == 0 ? s : r); ++k) rs.push_back(dl::audit_degree_sums(b->b, k));
    *out = wrap(dl::degree_sum_report(b->b, rs));
  });
}

dgl_status dgl_bundle_tournament(const dgl_bundle* b, size_t r, dgl_report** out) {
  return guarded([&] {
    require(b, "bundle");
    require(out, "out");
    if (r < 1 || r >= b->b.params.s) throw dl::ArgumentError("tournament index must lie in [1, s - 1]");
    const auto& layer = b->b.wiring.at(r - 1).tournament;
    const auto rep = dl::verify_layer(layer);
    json result = dl::to_json(rep);
    result["edges"] = json::parse(dl::layer_to_json(layer));
    dl::CsvTable t;
    t.header = {"from_block", "from_sub", "to_block", "to_sub"};
    for (const auto& e : result["edges"])
      t.rows.push_back({e["from"][0], e["from"][1], e["to"][0], e["to"][1]});
    *out = wrap(dl::Report("tournament",
                           {{"r", r}, {"blocks", layer.block_count()}, {"sub_blocks", layer.sub_block_count()}},
                           std::move(result), std::move(t), rep.pass));
  });
}

void dgl_bundle_free(dgl_bundle* b) { delete b; }

// ---- pairs and partitions

dgl_status dgl_check_pair(const dgl_graph* g, const uint32_t* a, size_t na, const uint32_t* b, size_t nb, double eps,
                          dgl_pair_mode mode, dgl_report** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    const auto n = g->g.order();
    const auto sa = to_set(a, na, n, "a");
    const auto sb = to_set(b, nb, n, "b");
    const auto d = dl::check_degular(g->g, sa, sb, eps);
    const char* mode_name = mode == DGL_PAIR_EXHAUSTIVE ? "exhaustive" : mode == DGL_PAIR_WITNESS ? "witness" : "degular";
    const json params = {{"eps", eps}, {"mode", mode_name}, {"a", set_json(sa)}, {"b", set_json(sb)}};
    if (mode == DGL_PAIR_EXHAUSTIVE) {
      const auto reg = dl::check_regular_exhaustive(g->g, sa, sb, eps);
      *out = wrap(dl::pair_report(params, d, &reg, nullptr));
    } else if (mode == DGL_PAIR_WITNESS) {
      const auto w = dl::degree_witness_irregularity(g->g, sa, sb, eps);
      *out = wrap(dl::pair_report(params, d, nullptr, &w));
    } else {
      *out = wrap(dl::pair_report(params, d, nullptr, nullptr));
    }
  });
}

dgl_status dgl_subset_density_check(const dgl_graph* g, const uint32_t* a, size_t na, const uint32_t* b, size_t nb,
                                    const uint32_t* x, size_t nx, double eps, dgl_report** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    const auto n = g->g.order();
    const auto sa = to_set(a, na, n, "a");
    const auto sb = to_set(b, nb, n, "b");
    const auto sx = to_set(x, nx, n, "x");
    const auto rep = dl::subset_density_bound_check(g->g, sa, sb, sx, eps);
    dl::CsvTable t;
    t.header = {"density_sub", "density_full", "lhs", "bound", "holds"};
    t.rows.push_back({rep.density_sub, rep.density_full, rep.lhs, rep.bound, rep.holds});
    *out = wrap(dl::Report("subset-density", {{"eps", eps}, {"a", set_json(sa)}, {"b", set_json(sb)}, {"x", set_json(sx)}},
                           dl::to_json(rep), std::move(t), rep.holds));
  });
}

dgl_status dgl_check_partition(const dgl_graph* g, const dgl_partition* p, double eps, dgl_report** out) {
  return guarded([&] {
    require(g, "graph");
    require(p, "partition");
    require(out, "out");
    const auto v = dl::check_degular_partition(g->g, p->p, eps);
    *out = wrap(dl::partition_report({{"eps", eps}, {"n", g->g.order()}, {"ell", p->p.cluster_count()}}, v));
  });
}

dgl_status dgl_aggregate_to_degree_form(const dgl_graph* g, const dgl_partition* p, double eps, dgl_partition** out) {
  return guarded([&] {
    require(g, "graph");
    require(p, "partition");
    require(out, "out");
    *out = new dgl_partition{dl::aggregate_to_degree_form(g->g, p->p, eps)};
  });
}

dgl_status dgl_equalize_partition(const dgl_graph* g, const dgl_partition* p, double eps, uint64_t seed,
                                  dgl_partition** out, dgl_report** report) {
  return guarded([&] {
    require(g, "graph");
    require(p, "partition");
    require(out, "out");
    auto res = dl::equalize_partition(g->g, p->p, eps, seed);
    if (report) {
      auto rep = dl::partition_report({{"eps", eps}, {"seed", seed}, {"n", g->g.order()}}, res.verdict);
      rep.doc()["kind"] = "equalize";
      rep.doc()["result"]["piece_size"] = res.piece_size;
      rep.doc()["result"]["pieces"] = res.pieces;
      rep.doc()["result"]["leftovers"] = res.leftovers;
      rep.doc()["result"]["transformed"] = res.transformed;
      *report = wrap(std::move(rep));
    }
    *out = new dgl_partition{std::move(res.partition)};
  });
}

dgl_status dgl_refinement_beta(const dgl_partition* p, const dgl_partition* q, dgl_report** out) {
  return guarded([&] {
    require(p, "p");
    require(q, "q");
    require(out, "out");
    *out = wrap(dl::refinement_report(dl::refinement_beta(p->p, q->p)));
  });
}

void dgl_search_options_init(dgl_search_options* o) {
  if (!o) return;
  const dl::SearchOptions d;
  o->budget = d.budget;
  o->restarts = d.restarts;
  o->max_ell = d.max_ell;
  o->initial = nullptr;
}

dgl_status dgl_search(const dgl_graph* g, double eps, int local_search, uint64_t seed,
                      const dgl_search_options* options, dgl_partition** out, dgl_report** report) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    dl::SearchOptions opt;
    if (options) {
      opt.budget = options->budget;
      opt.restarts = options->restarts;
      opt.max_ell = options->max_ell;
      if (options->initial) opt.initial = options->initial->p;
    }
    const auto mode = local_search ? dl::SearchMode::local_search : dl::SearchMode::exhaustive;
    auto res = dl::min_complexity_search(g->g, eps, mode, seed, opt);
    if (report) {
      *report = wrap(dl::search_report({{"eps", eps},
                                        {"mode", local_search ? "local-search" : "exhaustive"},
                                        {"seed", seed},
                                        {"budget", opt.budget},
                                        {"restarts", opt.restarts},
                                        {"max_ell", opt.max_ell},
                                        {"n", g->g.order()}},
                                       res));
    }
    *out = res.partition ? new dgl_partition{std::move(*res.partition)} : nullptr;
  });
}

dgl_status dgl_cascade_audit(const dgl_bundle* b, const dgl_partition* z, double eps, double beta, double mu,
                             size_t n_floor, dgl_report** out) {
  return guarded([&] {
    require(b, "bundle");
    require(z, "partition");
    require(out, "out");
    dl::CascadeOptions opt;
    if (n_floor > 0) opt.n_floor = n_floor;
    const auto rep = dl::cascade_audit(b->b, z->p, eps, beta, mu, opt);
    *out = wrap(dl::cascade_report(
        {{"eps", eps}, {"beta", beta}, {"mu", mu}, {"n_floor", opt.n_floor}, {"n", b->b.params.n}, {"s", b->b.params.s},
         {"delta", b->b.params.delta}, {"c_exp", b->b.params.c_exp}, {"seed", b->b.params.seed}},
        rep));
  });
}

// ---- rounding

void dgl_audit_options_init(dgl_audit_options* o) {
  if (!o) return;
  const dl::RoundingAuditOptions d;
  o->samples = d.samples;
  o->min_size = d.min_size;
  o->log_base = d.log_base;
}

namespace {
dl::RoundingAuditOptions audit_options(const dgl_audit_options* o) {
  dl::RoundingAuditOptions opt;
  if (o) {
    opt.samples = o->samples;
    opt.min_size = o->min_size;
    opt.log_base = o->log_base;
  }
  return opt;
}
json audit_params(const dl::RoundingAuditOptions& opt, double zeta, uint64_t seed) {
  return {{"zeta", zeta}, {"seed", seed}, {"samples", opt.samples}, {"min_size", opt.min_size}, {"log_base", opt.log_base}};
}
}  // namespace

dgl_status dgl_round(const dgl_graph* gw, uint64_t seed, dgl_graph** out) {
  return guarded([&] {
    require(gw, "graph");
    require(out, "out");
    *out = new dgl_graph{dl::round_to_simple(gw->g, seed)};
  });
}

dgl_status dgl_audit_rounding(const dgl_graph* gw, const dgl_graph* gs, double zeta, uint64_t seed,
                              const dgl_audit_options* options, dgl_report** out) {
  return guarded([&] {
    require(gw, "weighted graph");
    require(gs, "simple graph");
    require(out, "out");
    const auto opt = audit_options(options);
    *out = wrap(dl::rounding_audit_report(audit_params(opt, zeta, seed), dl::audit_rounding(gw->g, gs->g, zeta, seed, opt)));
  });
}

dgl_status dgl_round_until_pass(const dgl_graph* gw, double zeta, uint64_t seed, const dgl_audit_options* options,
                                size_t max_attempts, dgl_graph** out, dgl_report** report) {
  return guarded([&] {
    require(gw, "graph");
    require(out, "out");
    if (max_attempts < 1) throw dl::ArgumentError("max_attempts must be at least 1");
    const auto opt = audit_options(options);
    auto res = dl::round_until_audit_passes(gw->g, zeta, seed, opt, max_attempts);
    if (report) {
      auto params = audit_params(opt, zeta, seed);
      params["max_attempts"] = max_attempts;
      auto rep = dl::rounding_audit_report(params, res.audit);
      rep.doc()["result"]["seed_used"] = res.seed_used;
      rep.doc()["result"]["retries"] = res.retries;
      *report = wrap(std::move(rep));
    }
    *out = new dgl_graph{std::move(res.simple)};
  });
}

dgl_status dgl_transfer_check(const dgl_graph* gw, const dgl_graph* gs, const uint32_t* a, size_t na,
                              const uint32_t* b, size_t nb, double eps_prime, double zeta, dgl_report** out) {
  return guarded([&] {
    require(gw, "weighted graph");
    require(gs, "simple graph");
    require(out, "out");
    const auto n = gw->g.order();
    const auto sa = to_set(a, na, n, "a");
    const auto sb = to_set(b, nb, n, "b");
    *out = wrap(dl::transfer_report({{"eps_prime", eps_prime}, {"zeta", zeta}, {"a", set_json(sa)}, {"b", set_json(sb)}},
                                    dl::degularity_transfer_check(gw->g, gs->g, sa, sb, eps_prime, zeta)));
  });
}

// ---- regular hosts

dgl_status dgl_equipartition(const dgl_graph* g, size_t parts, double eps, uint64_t seed, dgl_partition** out,
                             dgl_report** report) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    auto res = dl::random_equipartition_degularity(g->g, parts, eps, seed);
    if (report)
      *report = wrap(dl::equipartition_report({{"L", parts}, {"eps", eps}, {"seed", seed}, {"n", g->g.order()}}, res));
    *out = new dgl_partition{std::move(res.partition)};
  });
}

dgl_status dgl_embed(const dgl_graph* g, dgl_graph** out, dgl_report** report) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    auto res = dl::embed_into_almost_regular(g->g);
    if (report) *report = wrap(dl::embed_report({{"n", g->g.order()}}, res));
    *out = new dgl_graph{std::move(res.host)};
  });
}

dgl_status dgl_realize_degree_sequence(const size_t* degrees, size_t n, dgl_graph** out, dgl_report** report) {
  return guarded([&] {
    require(out, "out");
    if (n > 0) require(degrees, "degrees");
    std::vector<std::size_t> seq(degrees, degrees + n);
    auto res = dl::realize_degree_sequence(seq);
    if (report) {
      dl::CsvTable t;
      t.header = {"graphic", "odd_sum", "violated_k"};
      t.rows.push_back({res.graphic, res.odd_sum, res.violated_k ? json(*res.violated_k) : json(nullptr)});
      *report = wrap(dl::Report("degree-sequence", {{"degrees", seq}}, dl::to_json(res), std::move(t), res.graphic));
    }
    *out = res.graph ? new dgl_graph{std::move(*res.graph)} : nullptr;
  });
}

}  // extern "C"
