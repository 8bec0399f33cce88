// degulab command-line front end. Talks to the library only through the C API.
// Exit codes: 0 pass or produced, 2 a check ran and failed, 1 usage or runtime error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "degulab/degulab.h"
#include "json.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitFail = 2;

struct Failure {
  std::string message;
};

void check(dgl_status st, const std::string& what) {
  if (st != DGL_OK) throw Failure{what + ": " + dgl_status_name(st) + ": " + dgl_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Graph = std::unique_ptr<dgl_graph, Deleter<dgl_graph, dgl_graph_free>>;
using Part = std::unique_ptr<dgl_partition, Deleter<dgl_partition, dgl_partition_free>>;
using Bundle = std::unique_ptr<dgl_bundle, Deleter<dgl_bundle, dgl_bundle_free>>;
using Sep = std::unique_ptr<dgl_separator, Deleter<dgl_separator, dgl_separator_free>>;
using Rep = std::unique_ptr<dgl_report, Deleter<dgl_report, dgl_report_free>>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{"cannot write '" + path + "'"};
}

Graph load_graph(const std::string& path, const std::string& format) {
  dgl_graph* g = nullptr;
  check(dgl_graph_load(path.c_str(), format.c_str(), 0, &g), "loading graph '" + path + "'");
  return Graph(g);
}

Part load_partition(const std::string& path) {
  dgl_partition* p = nullptr;
  check(dgl_partition_load(path.c_str(), &p), "loading partition '" + path + "'");
  return Part(p);
}

// A vertex set given inline as a JSON array or as a file holding an array or {"vertices": [...]}.
std::vector<uint32_t> load_vertex_set(const std::string& arg) {
  const std::string text = (!arg.empty() && arg.front() == '[') ? arg : read_file(arg);
  json j;
  try {
    j = json::parse(text);
    if (j.is_object()) j = j.at("vertices");
    return j.get<std::vector<uint32_t>>();
  } catch (const json::exception& e) {
    throw Failure{"vertex set '" + arg + "' is not a JSON index array: " + e.what()};
  }
}

std::string stem_of(const std::string& path) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
  return path.substr(0, dot);
}

struct Output {
  std::string out;
  std::string format = "json";
  std::string csv_out;
};

void add_output(CLI::App* cmd, Output& o, bool out_is_report = true) {
  if (out_is_report) cmd->add_option("--out", o.out, "Report file (default: stdout)");
  cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--csv-out", o.csv_out, "Also write the CSV table to this file");
}

// Annotates the report with the invocation, emits it and maps pass/fail to the exit code.
int emit(dgl_report* r, const Output& o, const json& invocation) {
  check(dgl_report_annotate(r, "invocation", invocation.dump().c_str()), "annotating report");
  const std::string text = o.format == "csv" ? dgl_report_csv(r) : std::string(dgl_report_json(r)) + "\n";
  if (o.out.empty())
    std::cout << text;
  else
    write_file(o.out, text);
  if (!o.csv_out.empty()) write_file(o.csv_out, dgl_report_csv(r));
  return dgl_report_passed(r) ? kExitOk : kExitFail;
}

struct BundleArgs {
  std::size_t n = 0;
  std::size_t s = 0;
  double delta = 0.0;
  uint64_t c_exp = 9999;
  uint64_t seed = 0;
  bool per_target = false;
  bool total_only = false;
  std::size_t retry_cap = 0;
  uint64_t schedule_cap = 0;
  std::string manifest;
};

void add_bundle_options(CLI::App* cmd, BundleArgs& b, bool required) {
  auto* n = cmd->add_option("--n", b.n, "Number of vertices");
  auto* s = cmd->add_option("--s", b.s, "Number of levels");
  auto* d = cmd->add_option("--delta", b.delta, "Layer weight delta");
  cmd->add_option("--c-exp", b.c_exp, "Schedule constant c")->capture_default_str();
  cmd->add_option("--seed", b.seed, "Global seed")->capture_default_str();
  cmd->add_flag("--per-target", b.per_target, "One separator per target cell instead of one per level");
  cmd->add_option("--retry-cap", b.retry_cap, "Separator retry cap");
  cmd->add_option("--schedule-cap", b.schedule_cap, "Largest admissible m_r");
  if (required) {
    n->required();
    s->required();
    d->required();
  } else {
    cmd->add_option("--manifest", b.manifest, "Take the bundle parameters from a construct manifest");
  }
}

json bundle_params(const BundleArgs& b) {
  return {{"n", b.n},     {"s", b.s},         {"delta", b.delta},         {"c_exp", b.c_exp},
          {"seed", b.seed}, {"per_target", b.per_target}, {"total_only", b.total_only}};
}

Bundle build_bundle(BundleArgs b) {
  if (!b.manifest.empty()) {
    const json m = json::parse(read_file(b.manifest));
    const json& p = m.at("params");
    b.n = p.at("n").get<std::size_t>();
    b.s = p.at("s").get<std::size_t>();
    b.delta = p.at("delta").get<double>();
    b.c_exp = p.at("c_exp").get<uint64_t>();
    b.seed = p.at("seed").get<uint64_t>();
    if (m.contains("options")) b.per_target = m["options"].value("separator_sharing", "") == "per-target";
  }
  if (b.n == 0 || b.s == 0 || b.delta == 0.0) throw Failure{"bundle parameters --n, --s and --delta are required"};
  dgl_construct_options opt;
  dgl_construct_options_init(&opt);
  opt.per_target_separators = b.per_target ? 1 : 0;
  opt.total_only = b.total_only ? 1 : 0;
  if (b.retry_cap) opt.separator_retry_cap = b.retry_cap;
  opt.schedule_cap = b.schedule_cap;
  dgl_bundle* out = nullptr;
  check(dgl_bundle_build(b.n, b.s, b.delta, b.c_exp, b.seed, &opt, &out), "construction");
  return Bundle(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"degulab: degular partitions, tower constructions and audits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", dgl_version());
  json invocation = {{"tool", "degulab"}, {"version", dgl_version()}};
  {
    json argv_json = json::array();
    for (int i = 0; i < argc; ++i) argv_json.push_back(argv[i]);
    invocation["argv"] = argv_json;
  }

  // construct
  BundleArgs cons;
  std::string cons_out = "g.dgl";
  bool cons_layers = false;
  auto* construct = app.add_subcommand("construct", "Build G(n, s, delta) and write the graph and its manifest");
  add_bundle_options(construct, cons, true);
  construct->add_option("--out", cons_out, "Graph file (DGL1); the manifest goes next to it")->capture_default_str();
  construct->add_flag("--layers", cons_layers, "Also write every layer graph");
  construct->add_flag("--total-only", cons.total_only, "Keep only the total graph in memory");

  // verify
  BundleArgs ver;
  Output ver_o;
  std::string ver_what = "all";
  double ver_eps = 0.0;
  auto* verify = app.add_subcommand("verify", "Homogeneity, degree-sum and top-level partition audits of a bundle");
  add_bundle_options(verify, ver, false);
  verify->add_option("--mode", ver_what, "Which audits to run")
      ->check(CLI::IsMember({"all", "homogeneity", "degree-sums", "top-level"}))
      ->capture_default_str();
  verify->add_option("--eps", ver_eps, "eps of the top-level partition check")->capture_default_str();
  add_output(verify, ver_o);

  // check-pair
  std::string cp_graph, cp_a, cp_b, cp_mode = "degular", cp_gfmt = "auto";
  double cp_eps = 0.0;
  Output cp_o;
  auto* check_pair = app.add_subcommand("check-pair", "Degularity or regularity verdict for one pair (A, B)");
  check_pair->add_option("--graph", cp_graph, "Graph file")->required();
  check_pair->add_option("--graph-format", cp_gfmt, "auto, dgl, csv or edges")->capture_default_str();
  check_pair->add_option("--a", cp_a, "Vertex set A (JSON file or inline array)")->required();
  check_pair->add_option("--b", cp_b, "Vertex set B (JSON file or inline array)")->required();
  check_pair->add_option("--eps", cp_eps, "eps")->required();
  check_pair->add_option("--mode", cp_mode, "degular, exhaustive or witness")
      ->check(CLI::IsMember({"degular", "exhaustive", "witness"}))
      ->capture_default_str();
  add_output(check_pair, cp_o);

  // check-partition
  std::string cpt_graph, cpt_part, cpt_gfmt = "auto";
  double cpt_eps = 0.0;
  Output cpt_o;
  auto* check_partition = app.add_subcommand("check-partition", "eps-degular partition verdict");
  check_partition->add_option("--graph", cpt_graph, "Graph file")->required();
  check_partition->add_option("--graph-format", cpt_gfmt, "auto, dgl, csv or edges")->capture_default_str();
  check_partition->add_option("--partition", cpt_part, "Partition JSON")->required();
  check_partition->add_option("--eps", cpt_eps, "eps")->required();
  add_output(check_partition, cpt_o);

  // search
  std::string se_graph, se_mode = "exhaustive", se_part_out, se_init, se_gfmt = "auto";
  double se_eps = 0.0;
  uint64_t se_seed = 0, se_budget = 0;
  std::size_t se_restarts = 4, se_max_ell = 0;
  Output se_o;
  auto* search = app.add_subcommand("search", "Smallest complexity of an eps-degular partition");
  search->add_option("--graph", se_graph, "Graph file")->required();
  search->add_option("--graph-format", se_gfmt, "auto, dgl, csv or edges")->capture_default_str();
  search->add_option("--eps", se_eps, "eps")->required();
  search->add_option("--mode", se_mode, "exhaustive or local")
      ->check(CLI::IsMember({"exhaustive", "local"}))
      ->capture_default_str();
  search->add_option("--seed", se_seed, "Seed")->capture_default_str();
  search->add_option("--budget", se_budget, "Partition cap (exhaustive) or steps per restart (local)");
  search->add_option("--restarts", se_restarts, "Local-search restarts per ell")->capture_default_str();
  search->add_option("--max-ell", se_max_ell, "Largest ell tried");
  search->add_option("--initial", se_init, "Starting partition for local search");
  search->add_option("--partition-out", se_part_out, "Write the partition found");
  add_output(search, se_o);

  // cascade-audit
  BundleArgs ca;
  std::string ca_part;
  long ca_level = -1;
  double ca_eps = 0.1, ca_beta = 0.0, ca_mu = 0.01;
  std::size_t ca_floor = 0;
  Output ca_o;
  auto* cascade = app.add_subcommand("cascade-audit", "Refinement cascade of a partition Z against the levels");
  add_bundle_options(cascade, ca, false);
  auto* ca_part_opt = cascade->add_option("--partition", ca_part, "Partition Z");
  cascade->add_option("--z-level", ca_level, "Use the level partition X_r as Z")->excludes(ca_part_opt);
  cascade->add_option("--eps", ca_eps, "eps")->capture_default_str();
  cascade->add_option("--beta", ca_beta, "beta")->capture_default_str();
  cascade->add_option("--mu", ca_mu, "mu")->capture_default_str();
  cascade->add_option("--n-floor", ca_floor, "Smallest n at which the contradiction count is asserted");
  add_output(cascade, ca_o);

  // round
  std::string ro_graph, ro_out = "simple.dgl", ro_gfmt = "auto";
  uint64_t ro_seed = 0;
  double ro_zeta = 0.0;
  std::size_t ro_attempts = 16, ro_samples = 1000, ro_min = 0;
  auto* round = app.add_subcommand("round", "Round a weighted graph to a simple graph");
  round->add_option("--graph", ro_graph, "Weighted graph file")->required();
  round->add_option("--graph-format", ro_gfmt, "auto, dgl, csv or edges")->capture_default_str();
  round->add_option("--seed", ro_seed, "Seed")->capture_default_str();
  round->add_option("--out", ro_out, "Simple graph file (DGL1); the manifest goes next to it")->capture_default_str();
  round->add_option("--zeta", ro_zeta, "Retry until a sampled audit at zeta passes (0: single draw)");
  round->add_option("--max-attempts", ro_attempts, "Retry cap")->capture_default_str();
  round->add_option("--samples", ro_samples, "Audit samples per attempt")->capture_default_str();
  round->add_option("--min-size", ro_min, "Audit set-size floor (0: ceil(20 zeta^-2 ln n))");

  // audit-round
  std::string ar_w, ar_s;
  double ar_zeta = 0.1, ar_log_base = 0.0;
  uint64_t ar_seed = 0;
  std::size_t ar_samples = 1000, ar_min = 0;
  Output ar_o;
  auto* audit_round = app.add_subcommand("audit-round", "Sampled density audit of a rounding");
  audit_round->add_option("--weighted", ar_w, "Weighted graph")->required();
  audit_round->add_option("--simple", ar_s, "Rounded simple graph")->required();
  audit_round->add_option("--zeta", ar_zeta, "Deviation threshold")->capture_default_str();
  audit_round->add_option("--seed", ar_seed, "Sampling seed")->capture_default_str();
  audit_round->add_option("--samples", ar_samples, "Number of sampled set pairs")->capture_default_str();
  audit_round->add_option("--min-size", ar_min, "Set-size floor (0: ceil(20 zeta^-2 log n))");
  audit_round->add_option("--log-base", ar_log_base, "Base of the floor's logarithm (0: e)");
  add_output(audit_round, ar_o);

  // embed
  std::string em_graph, em_out = "host.dgl", em_gfmt = "auto";
  Output em_o;
  auto* embed = app.add_subcommand("embed", "Embed a simple graph into an almost-regular graph on 2n vertices");
  embed->add_option("--graph", em_graph, "Simple graph file")->required();
  embed->add_option("--graph-format", em_gfmt, "auto, dgl, csv or edges")->capture_default_str();
  embed->add_option("--out", em_out, "Host graph file")->capture_default_str();
  embed->add_option("--report", em_o.out, "Report file (default: stdout)");
  add_output(embed, em_o, false);

  // equipartition
  std::string eq_graph, eq_part_out, eq_gfmt = "auto";
  std::size_t eq_l = 0;
  double eq_eps = 0.1;
  uint64_t eq_seed = 0;
  Output eq_o;
  auto* equip = app.add_subcommand("equipartition", "Random equipartition and its pairwise degularity");
  equip->add_option("--graph", eq_graph, "Graph file")->required();
  equip->add_option("--graph-format", eq_gfmt, "auto, dgl, csv or edges")->capture_default_str();
  equip->add_option("--L", eq_l, "Number of clusters")->required();
  equip->add_option("--eps", eq_eps, "eps")->capture_default_str();
  equip->add_option("--seed", eq_seed, "Seed")->capture_default_str();
  equip->add_option("--partition-out", eq_part_out, "Write the partition");
  add_output(equip, eq_o);

  // separator
  std::size_t sp_m = 0, sp_d = 0, sp_retry = 0;
  uint64_t sp_c = 9999, sp_seed = 0;
  double sp_cbal = 0.2;
  std::string sp_system_out, sp_in;
  Output sp_o;
  auto* separator = app.add_subcommand("separator", "Build or verify an (M, D)-separator");
  auto* sp_in_opt = separator->add_option("--in", sp_in, "Verify an existing system (JSON) instead of building one");
  separator->add_option("--M", sp_m, "Ground set size")->excludes(sp_in_opt);
  separator->add_option("--D", sp_d, "Number of bipartitions")->excludes(sp_in_opt);
  separator->add_option("--c-exp", sp_c, "Constant c")->capture_default_str();
  separator->add_option("--seed", sp_seed, "Seed")->capture_default_str();
  separator->add_option("--retry-cap", sp_retry, "Retry cap");
  separator->add_option("--c-bal", sp_cbal, "Balance constant of the verification")->capture_default_str();
  separator->add_option("--system-out", sp_system_out, "Write the system JSON");
  add_output(separator, sp_o);

  // schedule
  std::size_t sc_s = 0;
  uint64_t sc_c = 9999, sc_cap = 0;
  Output sc_o;
  auto* schedule = app.add_subcommand("schedule", "Level schedule m_r, M_r, D_r");
  schedule->add_option("--s", sc_s, "Number of levels")->required();
  schedule->add_option("--c-exp", sc_c, "Constant c")->capture_default_str();
  schedule->add_option("--cap", sc_cap, "Largest admissible m_r");
  add_output(schedule, sc_o);

  // report
  std::string rp_in;
  Output rp_o;
  auto* report = app.add_subcommand("report", "Re-render a saved JSON report (e.g. as CSV)");
  report->add_option("--in", rp_in, "Report JSON")->required();
  add_output(report, rp_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*construct) {
      auto b = build_bundle(cons);
      dgl_graph* total = nullptr;
      check(dgl_bundle_total(b.get(), &total), "total graph");
      Graph g(total);
      check(dgl_graph_save(g.get(), cons_out.c_str(), "dgl"), "writing graph");
      const std::string stem = stem_of(cons_out);
      json layer_files = json::array();
      if (cons_layers) {
        for (std::size_t r = 1; r <= cons.s; ++r) {
          dgl_graph* layer = nullptr;
          check(dgl_bundle_layer(b.get(), r, &layer), "layer graph");
          Graph lg(layer);
          const std::string path = stem + ".layer" + std::to_string(r) + ".dgl";
          check(dgl_graph_save(lg.get(), path.c_str(), "dgl"), "writing layer");
          layer_files.push_back(path);
        }
      }
      dgl_report* m = nullptr;
      check(dgl_bundle_manifest(b.get(), &m), "manifest");
      Rep manifest(m);
      json doc = json::parse(dgl_report_json(manifest.get()));
      json out = doc.at("result");
      out["files"] = {{"graph", cons_out}, {"layers", layer_files}};
      const std::string manifest_path = stem + ".manifest.json";
      write_file(manifest_path, out.dump(2) + "\n");
      std::cout << json{{"graph", cons_out}, {"manifest", manifest_path}, {"layers", layer_files}}.dump() << "\n";
      return kExitOk;
    }

    if (*verify) {
      auto b = build_bundle(ver);
      json result = json::object();
      bool pass = true;
      json table_rows = json::array();
      auto run = [&](dgl_status st, dgl_report* r, const char* key) {
        check(st, key);
        Rep rep(r);
        json d = json::parse(dgl_report_json(rep.get()));
        result[key] = d.at("result");
        bool ok = d.at("pass").get<bool>();
        // X_s is audited as equitable with every cluster pair eps-degular; the
        // degree form cannot hold at eps < 1/ell and stays informational.
        if (std::string(key) == "top_level_partition") {
          const json& v = d.at("result");
          ok = v.at("equitable").get<bool>() && v.at("bad_pairs").empty();
          result[key]["all_pairs_degular"] = ok;
        }
        pass = pass && ok;
        table_rows.push_back({key, ok});
      };
      if (ver_what == "all" || ver_what == "homogeneity") {
        dgl_report* r = nullptr;
        const auto st = dgl_bundle_verify_homogeneity(b.get(), &r);
        run(st, r, "homogeneity");
      }
      if (ver_what == "all" || ver_what == "degree-sums") {
        dgl_report* r = nullptr;
        const auto st = dgl_bundle_audit_degree_sums(b.get(), 0, &r);
        run(st, r, "degree_sums");
      }
      if (ver_what == "all" || ver_what == "top-level") {
        dgl_graph* g = nullptr;
        check(dgl_bundle_total(b.get(), &g), "total graph");
        Graph total(g);
        dgl_partition* p = nullptr;
        check(dgl_bundle_level_partition(b.get(), dgl_bundle_depth(b.get()), &p), "level partition");
        Part xs(p);
        dgl_report* r = nullptr;
        const auto st = dgl_check_partition(total.get(), xs.get(), ver_eps, &r);
        run(st, r, "top_level_partition");
      }
      json doc = {{"tool", "degulab"}, {"version", dgl_version()}, {"kind", "verify"}, {"pass", pass},
                  {"params", bundle_params(ver)}, {"result", result},
                  {"table", {{"header", {"audit", "pass"}}, {"rows", table_rows}}}};
      doc["params"]["eps"] = ver_eps;
      doc["params"]["mode"] = ver_what;
      dgl_report* r = nullptr;
      check(dgl_report_parse(doc.dump().c_str(), &r), "assembling report");
      Rep rep(r);
      return emit(rep.get(), ver_o, invocation);
    }

    if (*check_pair) {
      auto g = load_graph(cp_graph, cp_gfmt);
      const auto a = load_vertex_set(cp_a);
      const auto bset = load_vertex_set(cp_b);
      const dgl_pair_mode mode =
          cp_mode == "exhaustive" ? DGL_PAIR_EXHAUSTIVE : cp_mode == "witness" ? DGL_PAIR_WITNESS : DGL_PAIR_DEGULAR;
      dgl_report* r = nullptr;
      check(dgl_check_pair(g.get(), a.data(), a.size(), bset.data(), bset.size(), cp_eps, mode, &r), "check-pair");
      Rep rep(r);
      check(dgl_report_annotate(rep.get(), "graph", json(cp_graph).dump().c_str()), "annotating report");
      return emit(rep.get(), cp_o, invocation);
    }

    if (*check_partition) {
      auto g = load_graph(cpt_graph, cpt_gfmt);
      auto p = load_partition(cpt_part);
      dgl_report* r = nullptr;
      check(dgl_check_partition(g.get(), p.get(), cpt_eps, &r), "check-partition");
      Rep rep(r);
      return emit(rep.get(), cpt_o, invocation);
    }

    if (*search) {
      auto g = load_graph(se_graph, se_gfmt);
      Part init;
      dgl_search_options opt;
      dgl_search_options_init(&opt);
      if (se_budget) opt.budget = se_budget;
      opt.restarts = se_restarts;
      opt.max_ell = se_max_ell;
      if (!se_init.empty()) {
        init = load_partition(se_init);
        opt.initial = init.get();
      }
      dgl_partition* p = nullptr;
      dgl_report* r = nullptr;
      check(dgl_search(g.get(), se_eps, se_mode == "local" ? 1 : 0, se_seed, &opt, &p, &r), "search");
      Part found(p);
      Rep rep(r);
      if (found && !se_part_out.empty()) check(dgl_partition_save(found.get(), se_part_out.c_str()), "writing partition");
      return emit(rep.get(), se_o, invocation);
    }

    if (*cascade) {
      auto b = build_bundle(ca);
      Part z;
      if (!ca_part.empty()) {
        z = load_partition(ca_part);
      } else {
        if (ca_level < 0) throw Failure{"cascade-audit needs --partition or --z-level"};
        dgl_partition* p = nullptr;
        check(dgl_bundle_level_partition(b.get(), static_cast<std::size_t>(ca_level), &p), "level partition");
        z = Part(p);
      }
      dgl_report* r = nullptr;
      check(dgl_cascade_audit(b.get(), z.get(), ca_eps, ca_beta, ca_mu, ca_floor, &r), "cascade-audit");
      Rep rep(r);
      json z_desc = ca_part.empty() ? json{{"level", ca_level}} : json{{"file", ca_part}};
      check(dgl_report_annotate(rep.get(), "z", z_desc.dump().c_str()), "annotating report");
      return emit(rep.get(), ca_o, invocation);
    }

    if (*round) {
      auto gw = load_graph(ro_graph, ro_gfmt);
      json manifest = {{"tool", "degulab"}, {"version", dgl_version()}, {"kind", "round"},
                       {"params", {{"graph", ro_graph}, {"seed", ro_seed}, {"zeta", ro_zeta}}}};
      dgl_graph* out = nullptr;
      if (ro_zeta > 0.0) {
        dgl_audit_options ao;
        dgl_audit_options_init(&ao);
        ao.samples = ro_samples;
        ao.min_size = ro_min;
        dgl_report* r = nullptr;
        check(dgl_round_until_pass(gw.get(), ro_zeta, ro_seed, &ao, ro_attempts, &out, &r), "round");
        Rep rep(r);
        const json d = json::parse(dgl_report_json(rep.get()));
        manifest["params"]["max_attempts"] = ro_attempts;
        manifest["params"]["samples"] = ro_samples;
        manifest["params"]["min_size"] = ro_min;
        manifest["audit"] = d.at("result");
        manifest["audit"].erase("deviations");
      } else {
        check(dgl_round(gw.get(), ro_seed, &out), "round");
        manifest["seed_used"] = ro_seed;
      }
      Graph gs(out);
      check(dgl_graph_save(gs.get(), ro_out.c_str(), "dgl"), "writing graph");
      std::size_t edges = 0;
      const std::size_t n = dgl_graph_order(gs.get());
      for (uint32_t u = 0; u < n; ++u)
        for (uint32_t v = u + 1; v < n; ++v) edges += dgl_graph_weight(gs.get(), u, v) != 0.0;
      manifest["n"] = n;
      manifest["edges"] = edges;
      manifest["graph"] = ro_out;
      const std::string manifest_path = stem_of(ro_out) + ".manifest.json";
      write_file(manifest_path, manifest.dump(2) + "\n");
      std::cout << json{{"graph", ro_out}, {"manifest", manifest_path}, {"edges", edges}}.dump() << "\n";
      return kExitOk;
    }

    if (*audit_round) {
      auto gw = load_graph(ar_w, "auto");
      auto gs = load_graph(ar_s, "auto");
      dgl_audit_options ao;
      dgl_audit_options_init(&ao);
      ao.samples = ar_samples;
      ao.min_size = ar_min;
      ao.log_base = ar_log_base;
      dgl_report* r = nullptr;
      check(dgl_audit_rounding(gw.get(), gs.get(), ar_zeta, ar_seed, &ao, &r), "audit-round");
      Rep rep(r);
      return emit(rep.get(), ar_o, invocation);
    }

    if (*embed) {
      auto g = load_graph(em_graph, em_gfmt);
      dgl_graph* h = nullptr;
      dgl_report* r = nullptr;
      check(dgl_embed(g.get(), &h, &r), "embed");
      Graph host(h);
      Rep rep(r);
      check(dgl_graph_save(host.get(), em_out.c_str(), "dgl"), "writing host graph");
      return emit(rep.get(), em_o, invocation);
    }

    if (*equip) {
      auto g = load_graph(eq_graph, eq_gfmt);
      dgl_partition* p = nullptr;
      dgl_report* r = nullptr;
      check(dgl_equipartition(g.get(), eq_l, eq_eps, eq_seed, &p, &r), "equipartition");
      Part part(p);
      Rep rep(r);
      if (!eq_part_out.empty()) check(dgl_partition_save(part.get(), eq_part_out.c_str()), "writing partition");
      return emit(rep.get(), eq_o, invocation);
    }

    if (*separator) {
      dgl_separator* s = nullptr;
      if (!sp_in.empty()) {
        check(dgl_separator_from_json(read_file(sp_in).c_str(), &s), "reading separator");
      } else {
        if (sp_m == 0 || sp_d == 0) throw Failure{"separator needs --M and --D (or --in)"};
        check(dgl_separator_build(sp_m, sp_d, sp_c, sp_seed, sp_retry, &s), "building separator");
      }
      Sep sep(s);
      if (!sp_system_out.empty()) check(dgl_separator_save(sep.get(), sp_system_out.c_str()), "writing separator");
      dgl_report* r = nullptr;
      check(dgl_separator_verify(sep.get(), sp_cbal, &r), "verifying separator");
      Rep rep(r);
      return emit(rep.get(), sp_o, invocation);
    }

    if (*schedule) {
      dgl_report* r = nullptr;
      check(dgl_schedule(sc_s, sc_c, sc_cap, &r), "schedule");
      Rep rep(r);
      return emit(rep.get(), sc_o, invocation);
    }

    if (*report) {
      dgl_report* r = nullptr;
      check(dgl_report_parse(read_file(rp_in).c_str(), &r), "reading report");
      Rep rep(r);
      const std::string text = rp_o.format == "csv" ? dgl_report_csv(rep.get()) : std::string(dgl_report_json(rep.get())) + "\n";
      if (rp_o.out.empty())
        std::cout << text;
      else
        write_file(rp_o.out, text);
      if (!rp_o.csv_out.empty()) write_file(rp_o.csv_out, dgl_report_csv(rep.get()));
      return kExitOk;
    }
  } catch (const Failure& f) {
    std::cerr << "degulab: " << f.message << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "degulab: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
