#include "degulab/reports.hpp"

#include <cmath>

#include "degulab/graph_io.hpp"

namespace degulab {

using nlohmann::json;

namespace {

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string csv_cell(const json& c) {
  if (c.is_null()) return "";
  if (c.is_string()) {
    const auto s = c.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  }
  return c.dump();
}

json witness_or_null(const std::optional<RegularityWitness>& w) { return w ? to_json(*w) : json(nullptr); }

}  // namespace

// ---------------------------------------------------------------------------
// Tables and reports

std::string CsvTable::render() const {
  std::string out;
  for (std::size_t k = 0; k < header.size(); ++k) out += (k ? "," : "") + csv_cell(header[k]);
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out += (k ? "," : "") + csv_cell(row[k]);
    out += "\n";
  }
  return out;
}

json CsvTable::to_json() const { return {{"header", header}, {"rows", rows}}; }

CsvTable CsvTable::from_json(const json& j) {
  CsvTable t;
  t.header = j.at("header").get<std::vector<std::string>>();
  for (const auto& r : j.at("rows")) t.rows.push_back(r.get<std::vector<json>>());
  return t;
}

Report::Report(std::string kind, json params, json result, CsvTable table, bool pass) {
  doc_ = {{"tool", "degulab"},
          {"version", kVersion},
          {"kind", std::move(kind)},
          {"pass", pass},
          {"params", std::move(params)},
          {"result", std::move(result)},
          {"table", table.to_json()}};
}

Report Report::parse(const std::string& text) {
  Report r;
  try {
    r.doc_ = json::parse(text);
    if (!r.doc_.is_object() || !r.doc_.contains("kind") || !r.doc_.contains("pass") || !r.doc_.contains("table"))
      throw IoError("not a report document");
    CsvTable::from_json(r.doc_.at("table"));
  } catch (const json::exception& e) {
    throw IoError(std::string("report JSON: ") + e.what());
  }
  return r;
}

std::string Report::csv_text() const { return CsvTable::from_json(doc_.at("table")).render(); }

void Report::write(const std::string& json_path, const std::string& csv_path) const {
  if (!json_path.empty()) write_text_file(json_path, json_text() + "\n");
  if (!csv_path.empty()) write_text_file(csv_path, csv_text());
}

// ---------------------------------------------------------------------------
// JSON forms

json to_json(const VertexSet& v) { return v.vertices(); }

json to_json(const Partition& p) { return {{"n", p.order()}, {"ell", p.cluster_count()}, {"assign", p.assignment()}}; }

json to_json(const SeparatorReport& r) {
  json hist = json::object();
  for (const auto& [k, v] : r.column_sum_histogram) hist[std::to_string(k)] = v;
  return {{"M", r.ground},
          {"D", r.rows},
          {"c_bal", r.c_bal},
          {"rows_balanced", r.rows_balanced},
          {"unbalanced_rows", r.unbalanced_rows},
          {"min_split_fraction", r.min_split_fraction},
          {"worst_pair", {r.worst_pair[0] + 1, r.worst_pair[1] + 1}},
          {"required_split_fraction", r.required_split_fraction},
          {"split_ok", r.split_ok},
          {"column_sum_histogram", hist},
          {"mode", to_string(r.mode)},
          {"column_sums_ok", r.column_sums_ok},
          {"pass", r.pass}};
}

json to_json(const SeparatorBuildInfo& r) {
  return {{"stage", r.stage},
          {"mode", to_string(r.mode)},
          {"attempts", r.attempts},
          {"random_rows", r.random_rows},
          {"greedy_rows", r.greedy_rows}};
}

json to_json(const LayerReport& r) {
  json dev = json::array();
  for (const auto& d : r.deviating_nodes) dev.push_back({{"node", d.node}, {"in", d.in_degree}, {"out", d.out_degree}});
  json pairs = json::array();
  for (const auto& p : r.non_regular_pairs) pairs.push_back({p.i + 1, p.j + 1});
  return {{"expected_degree", r.expected_degree}, {"deviating_nodes", dev}, {"non_regular_pairs", pairs}, {"pass", r.pass}};
}

json to_json(const LevelSchedule& s) {
  std::vector<bool> odd(s.d_odd.begin() + 1, s.d_odd.end());
  return {{"s", s.s},
          {"c_exp", s.c_exp},
          {"m", s.m},
          {"M", std::vector<std::uint64_t>(s.big_m.begin() + 1, s.big_m.end())},
          {"D", std::vector<std::uint64_t>(s.d.begin() + 1, s.d.end())},
          {"D_used", s.separator_degrees()},
          {"D_odd", odd},
          {"tower_base", s.tower_base()}};
}

json to_json(const HomogeneityReport& r) {
  json v = json::array();
  for (const auto& x : r.violations)
    v.push_back({{"layer", x.layer}, {"level", x.level}, {"cell_a", x.cell_a}, {"cell_b", x.cell_b}, {"reason", x.reason}});
  return {{"layers_checked", r.layers_checked},
          {"cell_pairs_checked", r.cell_pairs_checked},
          {"violation_count", r.violation_count},
          {"violations", v},
          {"sum_decomposition_ok", r.sum_decomposition_ok},
          {"max_sum_error", r.max_sum_error},
          {"top_level_constant", r.top_level_constant},
          {"pass", r.pass}};
}

json to_json(const DegreeSumReport& r) {
  return {{"r", r.r},
          {"target", r.target},
          {"max_abs_deviation", r.max_abs_deviation},
          {"worst_vertex", r.worst_vertex},
          {"worst_cell", r.worst_cell},
          {"pairs_checked", r.pairs_checked},
          {"mode", r.mode},
          {"asserted", r.asserted},
          {"deviation_bound", r.deviation_bound},
          {"histogram_edges", r.deviation_histogram_edges},
          {"histogram", r.deviation_histogram},
          {"pass", r.pass}};
}

json to_json(const TowerValue& t) {
  return {{"base", t.base},
          {"x", t.x},
          {"variant", t.variant == TowerVariant::literal ? "literal" : "self-referential"},
          {"height", t.height},
          {"exact", t.exact ? json(*t.exact) : json(nullptr)},
          {"symbolic", {{"base", t.base}, {"height", t.height}, {"top_exponent", t.top_exponent}}},
          {"approx", finite_or_null(t.approx)},
          {"log10_value", finite_or_null(t.log10_value)},
          {"digits_estimate", std::isfinite(t.log10_value) ? json(std::floor(t.log10_value) + 1) : json(nullptr)},
          {"log10_log10_value", finite_or_null(t.log10_log10_value)}};
}

json to_json(const DegularityVerdict& v) {
  return {{"eps", v.eps},
          {"edge_mass", v.edge_mass},
          {"mean_degree_a", v.mean_degree_a},
          {"mean_degree_b", v.mean_degree_b},
          {"size_a", v.size_a},
          {"size_b", v.size_b},
          {"violators_a", v.violators_a},
          {"violators_b", v.violators_b},
          {"low_a", v.low_a},
          {"high_a", v.high_a},
          {"low_b", v.low_b},
          {"high_b", v.high_b},
          {"pass", v.pass}};
}

json to_json(const RegularityWitness& w) {
  return {{"a_sub", w.a_sub.vertices()},
          {"b_sub", w.b_sub.vertices()},
          {"density_sub", w.density_sub},
          {"density_full", w.density_full},
          {"deviation", w.deviation},
          {"origin", w.origin}};
}

json to_json(const RegularityVerdict& v) {
  return {{"eps", v.eps},
          {"pass", v.pass},
          {"method", v.method},
          {"subset_pairs_checked", v.subset_pairs_checked},
          {"witness", witness_or_null(v.witness)}};
}

json to_json(const SubsetDensityReport& r) {
  return {{"density_sub", r.density_sub}, {"density_full", r.density_full}, {"lhs", r.lhs},
          {"bound", r.bound},             {"slack", r.slack},               {"holds", r.holds}};
}

json to_json(const PartitionVerdict& v) {
  json bad = json::array();
  for (const auto& [i, j] : v.bad_pairs) bad.push_back({i, j});
  return {{"eps", v.eps},
          {"ell", v.ell},
          {"equitable", v.equitable},
          {"bad_partner_count", v.bad_partner_count},
          {"bad_pairs", bad},
          {"aggregate_bad", v.aggregate_bad},
          {"degree_form_failures", v.degree_form_failures},
          {"degree_form_pass", v.degree_form_pass},
          {"aggregate_form_pass", v.aggregate_form_pass},
          {"pass", v.pass}};
}

json to_json(const RefinementReport& r) {
  return {{"best_cover", r.best_cover}, {"deficiency", r.deficiency}, {"beta", r.beta}, {"worst_cluster", r.worst_cluster}};
}

json to_json(const SearchResult& r) {
  return {{"found", r.found},
          {"ell", r.found ? json(r.ell) : json(nullptr)},
          {"partition", r.partition ? to_json(*r.partition) : json(nullptr)},
          {"mode", r.mode == SearchMode::exhaustive ? "exhaustive" : "local-search"},
          {"upper_bound_only", r.upper_bound_only},
          {"budget_exhausted", r.budget_exhausted},
          {"evaluated", r.evaluated},
          {"start_ell", r.start_ell}};
}

json to_json(const CascadeReport& r) {
  json levels = json::array();
  for (const auto& l : r.levels)
    levels.push_back({{"r", l.r},
                      {"beta_r", l.beta_r},
                      {"refines_previous", l.refines_previous},
                      {"failure_path", l.failure_path},
                      {"failing_clusters", l.failing_clusters},
                      {"bad_pair_count", l.bad_pair_count},
                      {"contradiction_count", l.contradiction_count}});
  return {{"eps", r.eps},
          {"beta", r.beta},
          {"mu", r.mu},
          {"delta", r.delta},
          {"s", r.s},
          {"n", r.n},
          {"ell", r.ell},
          {"hypotheses",
           {{"32eps/mu<delta", r.hyp_32eps_over_mu},
            {"4000eps<delta", r.hyp_4000eps},
            {"1600beta<delta", r.hyp_1600beta},
            {"delta<1/2", r.hyp_delta_half},
            {"s*delta<=0.1", r.hyp_s_delta},
            {"all", r.hypotheses_hold}}},
          {"asserted", r.asserted},
          {"levels", levels},
          {"notes", r.notes},
          {"pass", r.pass}};
}

json to_json(const RoundingAuditReport& r, bool include_samples) {
  json j = {{"zeta", r.zeta},
            {"n", r.n},
            {"samples", r.samples},
            {"min_size", r.min_size},
            {"seed", r.seed},
            {"max_deviation", r.max_deviation},
            {"exceedances", r.exceedances},
            {"exceed_fraction", r.exceed_fraction},
            {"pass", r.pass}};
  if (include_samples) j["deviations"] = r.deviations;
  return j;
}

json to_json(const TransferReport& r) {
  return {{"eps_prime", r.eps_prime},
          {"zeta", r.zeta},
          {"simple_verdict", to_json(r.simple_verdict)},
          {"weighted_verdict", to_json(r.weighted_verdict)},
          {"violator_overlap_a", r.violator_overlap_a},
          {"violator_overlap_b", r.violator_overlap_b},
          {"rounding_deviation", r.rounding_deviation},
          {"rounding_cause", r.rounding_cause},
          {"sizes_meet_floor", r.sizes_meet_floor},
          {"asserted", r.asserted},
          {"holds", r.holds},
          {"pass", r.pass}};
}

json to_json(const EquipartitionResult& r) {
  return {{"partition", to_json(r.partition)},
          {"verdict", to_json(r.verdict)},
          {"all_pairs_degular", r.all_pairs_degular},
          {"warnings", r.warnings}};
}

json to_json(const EmbedResult& r) {
  return {{"n", r.host.order() / 2},
          {"induced_ok", r.induced_ok},
          {"v_degrees_ok", r.v_degrees_ok},
          {"min_degree", r.min_degree},
          {"max_degree", r.max_degree},
          {"spread", r.spread},
          {"w_targets", r.w_targets},
          {"repairs", r.repairs},
          {"pass", r.pass}};
}

json to_json(const DegreeSequenceResult& r) {
  return {{"graphic", r.graphic},
          {"odd_sum", r.odd_sum},
          {"violated_k", r.violated_k ? json(*r.violated_k) : json(nullptr)}};
}

// ---------------------------------------------------------------------------
// Report builders

Report schedule_report(const LevelSchedule& s) {
  CsvTable t{{"r", "m", "M", "D", "D_odd"}, {}};
  t.rows.push_back({0, s.m[0], nullptr, nullptr, nullptr});
  for (std::size_t r = 1; r <= s.s; ++r) t.rows.push_back({r, s.m[r], s.big_m[r], s.d[r], static_cast<bool>(s.d_odd[r])});
  return Report("schedule", {{"s", s.s}, {"c_exp", s.c_exp}}, to_json(s), std::move(t), true);
}

Report separator_report(const BipartitionSystem& sys, const SeparatorReport& r, const SeparatorBuildInfo* info) {
  CsvTable t{{"column_sum", "elements"}, {}};
  for (const auto& [k, v] : r.column_sum_histogram) t.rows.push_back({k, v});
  json result = to_json(r);
  result["system"] = json::parse(separator_to_json(sys));
  if (info) result["build"] = to_json(*info);
  return Report("separator", {{"M", sys.ground_size()}, {"D", sys.row_count()}, {"c_bal", r.c_bal}}, std::move(result),
                std::move(t), r.pass);
}

namespace {

json bundle_params(const ConstructionBundle& b) {
  return {{"n", b.params.n}, {"s", b.params.s}, {"delta", b.params.delta}, {"c_exp", b.params.c_exp}, {"seed", b.params.seed}};
}

}  // namespace

Report homogeneity_report(const ConstructionBundle& b, const HomogeneityReport& r) {
  CsvTable t{{"layer", "level", "cell_a", "cell_b", "reason"}, {}};
  for (const auto& v : r.violations) t.rows.push_back({v.layer, v.level, v.cell_a, v.cell_b, v.reason});
  return Report("homogeneity", bundle_params(b), to_json(r), std::move(t), r.pass);
}

Report degree_sum_report(const ConstructionBundle& b, const std::vector<DegreeSumReport>& rs) {
  CsvTable t{{"r", "max_abs_deviation"}, {}};
  json levels = json::array();
  bool pass = true;
  for (const auto& r : rs) {
    t.rows.push_back({r.r, r.max_abs_deviation});
    levels.push_back(to_json(r));
    pass = pass && r.pass;
  }
  return Report("degree-sums", bundle_params(b), {{"levels", levels}}, std::move(t), pass);
}

Report tower_report(const TowerValue& tv) {
  CsvTable t{{"base", "x", "height", "log10_value"}, {}};
  t.rows.push_back({tv.base, tv.x, tv.height, finite_or_null(tv.log10_value)});
  return Report("tower", {{"a", tv.base}, {"x", tv.x}}, to_json(tv), std::move(t), true);
}

Report pair_report(const json& params, const DegularityVerdict& d, const RegularityVerdict* reg,
                   const std::optional<RegularityWitness>* witness) {
  CsvTable t{{"side", "vertex", "direction"}, {}};
  for (Vertex v : d.low_a) t.rows.push_back({"A", v, "low"});
  for (Vertex v : d.high_a) t.rows.push_back({"A", v, "high"});
  for (Vertex v : d.low_b) t.rows.push_back({"B", v, "low"});
  for (Vertex v : d.high_b) t.rows.push_back({"B", v, "high"});
  json result = {{"degular", to_json(d)}};
  bool pass = d.pass;
  if (reg) {
    result["regular"] = to_json(*reg);
    pass = pass && reg->pass;
  }
  if (witness) {
    result["degree_witness"] = witness_or_null(*witness);
    pass = pass && !witness->has_value();
  }
  return Report("pair", params, std::move(result), std::move(t), pass);
}

Report partition_report(const json& params, const PartitionVerdict& v) {
  CsvTable t{{"cluster", "bad_partners"}, {}};
  for (std::size_t i = 0; i < v.bad_partner_count.size(); ++i) t.rows.push_back({i, v.bad_partner_count[i]});
  return Report("partition", params, to_json(v), std::move(t), v.pass);
}

Report refinement_report(const RefinementReport& r) {
  CsvTable t{{"cluster", "best_cover", "deficiency"}, {}};
  for (std::size_t i = 0; i < r.deficiency.size(); ++i) t.rows.push_back({i, r.best_cover[i], r.deficiency[i]});
  return Report("refinement", json::object(), to_json(r), std::move(t), true);
}

Report search_report(const json& params, const SearchResult& r) {
  CsvTable t{{"found", "ell", "evaluated"}, {}};
  t.rows.push_back({r.found, r.found ? json(r.ell) : json(nullptr), r.evaluated});
  return Report("search", params, to_json(r), std::move(t), r.found);
}

Report cascade_report(const json& params, const CascadeReport& r) {
  CsvTable t{{"r", "beta_r", "bad_pair_count"}, {}};
  for (const auto& l : r.levels) t.rows.push_back({l.r, l.beta_r, l.bad_pair_count});
  return Report("cascade", params, to_json(r), std::move(t), r.pass);
}

Report rounding_audit_report(const json& params, const RoundingAuditReport& r) {
  CsvTable t{{"sample", "deviation"}, {}};
  for (std::size_t k = 0; k < r.deviations.size(); ++k) t.rows.push_back({k, r.deviations[k]});
  return Report("rounding-audit", params, to_json(r), std::move(t), r.pass);
}

Report transfer_report(const json& params, const TransferReport& r) {
  CsvTable t{{"quantity", "value"}, {}};
  t.rows.push_back({"rounding_deviation", r.rounding_deviation});
  t.rows.push_back({"weighted_violators_a", r.weighted_verdict.violators_a.size()});
  t.rows.push_back({"weighted_violators_b", r.weighted_verdict.violators_b.size()});
  return Report("transfer", params, to_json(r), std::move(t), r.pass);
}

Report equipartition_report(const json& params, const EquipartitionResult& r) {
  CsvTable t{{"cluster", "bad_partners"}, {}};
  for (std::size_t i = 0; i < r.verdict.bad_partner_count.size(); ++i) t.rows.push_back({i, r.verdict.bad_partner_count[i]});
  return Report("equipartition", params, to_json(r), std::move(t), r.all_pairs_degular);
}

Report embed_report(const json& params, const EmbedResult& r) {
  CsvTable t{{"w", "target"}, {}};
  for (std::size_t k = 0; k < r.w_targets.size(); ++k) t.rows.push_back({k, r.w_targets[k]});
  return Report("embed", params, to_json(r), std::move(t), r.pass);
}

}  // namespace degulab
