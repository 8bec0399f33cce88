#pragma once

#include <string>
#include <vector>

#include "degulab/construction.hpp"
#include "degulab/pair_analysis.hpp"
#include "degulab/partition_toolkit.hpp"
#include "degulab/regular_hosts.hpp"
#include "degulab/rounding.hpp"
#include "degulab/separators.hpp"
#include "degulab/tournaments.hpp"
#include "json.hpp"

namespace degulab {

/// Plot-ready table. Cells are JSON scalars so that a report read back from
/// disk renders the same CSV.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<nlohmann::json>> rows;

  std::string render() const;
  nlohmann::json to_json() const;
  static CsvTable from_json(const nlohmann::json& j);
};

/// A JSON document {"tool", "version", "kind", "pass", "params", "result",
/// "table"} whose CSV form is the rendered table.
class Report {
 public:
  Report() = default;
  Report(std::string kind, nlohmann::json params, nlohmann::json result, CsvTable table, bool pass);
  /// Throws IoError unless `text` holds a report document.
  static Report parse(const std::string& text);

  bool passed() const { return doc_.at("pass").get<bool>(); }
  void set_passed(bool p) { doc_["pass"] = p; }
  nlohmann::json& doc() { return doc_; }
  const nlohmann::json& doc() const { return doc_; }
  std::string json_text() const { return doc_.dump(2); }
  std::string csv_text() const;
  /// Writes either file when its path is nonempty; IoError on failure.
  void write(const std::string& json_path, const std::string& csv_path) const;

 private:
  nlohmann::json doc_;
};

// JSON forms of individual results.
nlohmann::json to_json(const VertexSet& v);
nlohmann::json to_json(const Partition& p);
nlohmann::json to_json(const SeparatorReport& r);
nlohmann::json to_json(const SeparatorBuildInfo& r);
nlohmann::json to_json(const LayerReport& r);
nlohmann::json to_json(const LevelSchedule& s);
nlohmann::json to_json(const HomogeneityReport& r);
nlohmann::json to_json(const DegreeSumReport& r);
nlohmann::json to_json(const TowerValue& t);
nlohmann::json to_json(const DegularityVerdict& v);
nlohmann::json to_json(const RegularityVerdict& v);
nlohmann::json to_json(const RegularityWitness& w);
nlohmann::json to_json(const SubsetDensityReport& r);
nlohmann::json to_json(const PartitionVerdict& v);
nlohmann::json to_json(const RefinementReport& r);
nlohmann::json to_json(const SearchResult& r);
nlohmann::json to_json(const CascadeReport& r);
nlohmann::json to_json(const RoundingAuditReport& r, bool include_samples = false);
nlohmann::json to_json(const TransferReport& r);
nlohmann::json to_json(const EquipartitionResult& r);
nlohmann::json to_json(const EmbedResult& r);
nlohmann::json to_json(const DegreeSequenceResult& r);

// Report builders with their CSV tables.
Report schedule_report(const LevelSchedule& s);
Report separator_report(const BipartitionSystem& sys, const SeparatorReport& r, const SeparatorBuildInfo* info);
Report homogeneity_report(const ConstructionBundle& b, const HomogeneityReport& r);
/// One row (r, max_abs_deviation) per audited level.
Report degree_sum_report(const ConstructionBundle& b, const std::vector<DegreeSumReport>& rs);
Report tower_report(const TowerValue& t);
Report pair_report(const nlohmann::json& params, const DegularityVerdict& d, const RegularityVerdict* reg,
                   const std::optional<RegularityWitness>* witness);
Report partition_report(const nlohmann::json& params, const PartitionVerdict& v);
Report refinement_report(const RefinementReport& r);
Report search_report(const nlohmann::json& params, const SearchResult& r);
/// Rows (r, beta_r, bad_pair_count).
Report cascade_report(const nlohmann::json& params, const CascadeReport& r);
Report rounding_audit_report(const nlohmann::json& params, const RoundingAuditReport& r);
Report transfer_report(const nlohmann::json& params, const TransferReport& r);
Report equipartition_report(const nlohmann::json& params, const EquipartitionResult& r);
Report embed_report(const nlohmann::json& params, const EmbedResult& r);

}  // namespace degulab
