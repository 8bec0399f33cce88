#include <filesystem>
#include <fstream>
#include <sstream>

#include "degulab/construction.hpp"
#include "degulab/partition_toolkit.hpp"
#include "degulab/reports.hpp"
#include "doctest.h"

using namespace degulab;
using nlohmann::json;

namespace {

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::size_t line_count(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("report documents round-trip through JSON and render the same CSV") {
  const auto rep = schedule_report(compute_schedule(4, 1));
  const auto& d = rep.doc();
  for (const char* key : {"tool", "version", "kind", "pass", "params", "result", "table"}) CHECK(d.contains(key));
  CHECK(d["version"] == kVersion);
  const auto back = Report::parse(rep.json_text());
  CHECK(back.doc() == d);
  CHECK(back.csv_text() == rep.csv_text());
  CHECK(first_line(rep.csv_text()) == "r,m,M,D,D_odd");
  CHECK(line_count(rep.csv_text()) == 6);

  CHECK_THROWS_AS(Report::parse("{"), IoError);
  CHECK_THROWS_AS(Report::parse("[1,2]"), IoError);
  CHECK_THROWS_AS(Report::parse(R"({"kind":"x","pass":true})"), IoError);
}

TEST_CASE("csv cells are quoted and empty tables keep the header") {
  CsvTable t{{"a", "b"}, {}};
  CHECK(t.render() == "a,b\n");
  t.rows.push_back({json("x,y"), json(nullptr)});
  t.rows.push_back({json("say \"hi\""), json(2)});
  CHECK(t.render() == "a,b\n\"x,y\",\n\"say \"\"hi\"\"\",2\n");
  CHECK(CsvTable::from_json(t.to_json()).render() == t.render());

  const Report r("empty", json::object(), json::object(), CsvTable{{"only"}, {}}, true);
  CHECK(r.csv_text() == "only\n");
}

TEST_CASE("report files are written") {
  const auto dir = std::filesystem::temp_directory_path() / "degulab_report_test";
  std::filesystem::create_directories(dir);
  const auto rep = tower_report(tower_value(2, 3));
  rep.write((dir / "t.json").string(), (dir / "t.csv").string());
  std::ifstream js(dir / "t.json"), cs(dir / "t.csv");
  std::stringstream a, b;
  a << js.rdbuf();
  b << cs.rdbuf();
  CHECK(Report::parse(a.str()).doc() == rep.doc());
  CHECK(b.str() == rep.csv_text());
  CHECK_THROWS_AS(rep.write((dir / "missing" / "x.json").string(), ""), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("plot-ready columns") {
  const auto b = build_construction(16, 3, 0.01, 9999, 1);
  std::vector<DegreeSumReport> rs;
  for (std::size_t r = 1; r <= 3; ++r) rs.push_back(audit_degree_sums(b, r));
  const auto ds = degree_sum_report(b, rs);
  CHECK(first_line(ds.csv_text()) == "r,max_abs_deviation");
  CHECK(line_count(ds.csv_text()) == 4);

  const auto cr = cascade_report(json::object(), cascade_audit(b, b.levels.partition(3), 0.1, 0.0, 0.01));
  CHECK(first_line(cr.csv_text()) == "r,beta_r,bad_pair_count");
  CHECK(line_count(cr.csv_text()) == 5);

  const auto h = homogeneity_report(b, verify_homogeneity(b));
  CHECK(h.passed());
  CHECK(h.doc()["kind"].is_string());
}
