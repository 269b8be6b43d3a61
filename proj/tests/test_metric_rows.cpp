#include <doctest.h>

#include <sstream>

#include "ownerscope/error.hpp"
#include "ownerscope/metric_row.hpp"

using namespace ownerscope;
using namespace ownerscope::metrics;

namespace {

constexpr std::int64_t kDay = 86400;
constexpr std::int64_t kT0 = 1500000000;

CommitRecord touch(const std::string& author, std::int64_t day, const std::string& path,
                   std::int64_t added = 10, std::int64_t deleted = 2, int parents = 0) {
  CommitRecord commit;
  commit.hash = std::string(40, 'e');
  commit.author = author;
  commit.timestamp = kT0 + day * kDay;
  commit.parent_count = parents;
  commit.changes.push_back({path, added, deleted});
  return commit;
}

VulnerabilityRecord advisory(const std::string& id, std::int64_t day,
                             const std::string& file, double severity = 5.0) {
  VulnerabilityRecord vuln;
  vuln.id = id;
  vuln.severity = severity;
  vuln.published = kT0 + day * kDay;
  vuln.files = {file};
  vuln.group_key = id;
  return vuln;
}

}  // namespace

TEST_SUITE("metric_rows") {

TEST_CASE("vulnerable row composition: event day 100, component born day 40") {
  std::vector<CommitRecord> commits = {
      touch("root", 0, "lib/a.py"),
      touch("alice", 40, "net/f.py"),
      touch("bob", 70, "net/f.py"),
      touch("late", 250, "lib/a.py"),  // fixes project snapshot after the event
  };
  std::vector<ReleaseRecord> releases = {{"v1", kT0 + 20 * kDay}};
  const auto vuln = advisory("CVE-1", 100, "net/f.py", 7.0);

  RowOptions options;
  const auto row = assemble_metric_row(commits, releases, &vuln, "net/f.py", options);
  CHECK(row.is_defective == 1);
  CHECK(row.severity == 7.0);
  CHECK(row.days_difference == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(row.age == doctest::Approx(60.0).epsilon(1e-12));
  CHECK(row.time_stage_aged_numeric == 2);  // 60 days
  CHECK(row.ownership == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(row.n_contributors == 2);
  CHECK(row.file_size == 16);
  CHECK(row.code_churn == 24);
  CHECK(row.is_post_release == 1);
  CHECK(row.release_amounts == 1);
  CHECK(row.release_amounts_aged == 0);  // release predates the component
}

TEST_CASE("snapshot row is non-defective with absent severity") {
  std::vector<CommitRecord> commits = {touch("root", 0, "lib/a.py"),
                                       touch("dev", 10, "lib/a.py")};
  RowOptions options;
  const auto row = assemble_metric_row(commits, {}, nullptr, "lib/a.py", options);
  CHECK(row.is_defective == 0);
  CHECK_FALSE(row.severity.has_value());
  CHECK(row.days_difference == doctest::Approx(10.0));
  CHECK(row.is_pre_release == 0);  // zero releases: both flags 0
  CHECK(row.is_post_release == 0);
}

TEST_CASE("table builder skips unjoinable advisories and counts them") {
  std::vector<CommitRecord> commits = {touch("root", 0, "lib/a.py"),
                                       touch("dev", 50, "net/f.py")};
  std::vector<VulnerabilityRecord> vulns = {
      advisory("CVE-OK", 60, "net/f.py"),
      advisory("CVE-GHOST", 60, "not/in/history.py"),  // component unknown
      advisory("CVE-EARLY", 10, "net/f.py"),           // published before first touch
  };
  TableOptions options;
  const auto table = build_metrics_table(commits, {}, vulns, options);
  CHECK(table.exclusions.component_unknown == 2);  // ghost file + pre-birth advisory
  CHECK(table.exclusions.negative_span == 0);
  REQUIRE(table.rows.size() == 2);  // CVE-OK row + lib/a.py snapshot row
  CHECK(table.rows[0].vuln_id == "CVE-OK");
  CHECK(table.rows[1].component == "lib/a.py");
  CHECK(table.rows[1].is_defective == 0);
}

TEST_CASE("vulnerable components never enter the snapshot pool") {
  std::vector<CommitRecord> commits = {touch("root", 0, "lib/a.py"),
                                       touch("dev", 50, "net/f.py")};
  std::vector<VulnerabilityRecord> vulns = {advisory("CVE-1", 60, "net/f.py")};
  const auto table = build_metrics_table(commits, {}, vulns, {});
  for (const auto& row : table.rows) {
    if (row.is_defective == 0) CHECK(row.component != "net/f.py");
  }
}

TEST_CASE("merge-only files are not components") {
  std::vector<CommitRecord> commits = {touch("root", 0, "lib/a.py"),
                                       touch("bot", 10, "merged.py", 5, 5, 2)};
  const auto table = build_metrics_table(commits, {}, {}, {});
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0].component == "lib/a.py");
}

TEST_CASE("size override replaces the estimate and rescales churn rate") {
  std::vector<CommitRecord> commits = {touch("root", 0, "lib/a.py", 10, 2)};
  TableOptions options;
  options.size_overrides["lib/a.py"] = 100;
  const auto table = build_metrics_table(commits, {}, {}, options);
  CHECK(table.rows[0].file_size == 100);
  CHECK(table.rows[0].code_churn == 12);
  CHECK(table.rows[0].churn_rate == doctest::Approx(0.12));
}

TEST_CASE("aggregate repo mode folds the history into one component") {
  std::vector<CommitRecord> commits = {
      touch("a", 0, "x.py"), touch("a", 10, "y.py"), touch("b", 20, "z.py"),
      touch("bot", 30, "x.py", 100, 100, 2),  // merge: never counted
  };
  std::vector<VulnerabilityRecord> vulns = {advisory("CVE-1", 25, "x.py")};
  TableOptions options;
  options.aggregate_repo = true;
  const auto table = build_metrics_table(commits, {}, vulns, options);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0].component == ".");
  CHECK(table.rows[0].is_defective == 1);
  CHECK(table.rows[0].n_contributors == 2);
  CHECK(table.rows[0].ownership == doctest::Approx(2.0 / 3.0));
  CHECK(table.rows[1].is_defective == 0);
  CHECK(table.rows[1].age == table.rows[1].days_difference);  // repo origin
}

TEST_CASE("row count independent of the jobs setting, bytes identical") {
  std::vector<CommitRecord> commits;
  for (int i = 0; i < 40; ++i) {
    commits.push_back(touch("dev" + std::to_string(i % 5), i,
                            "f" + std::to_string(i % 7) + ".py"));
  }
  std::vector<VulnerabilityRecord> vulns = {advisory("CVE-1", 30, "f1.py")};
  TableOptions serial;
  TableOptions parallel;
  parallel.jobs = 4;
  const auto a = build_metrics_table(commits, {}, vulns, serial);
  const auto b = build_metrics_table(commits, {}, vulns, parallel);
  std::stringstream sa, sb;
  write_metric_csv(sa, a.rows);
  write_metric_csv(sb, b.rows);
  CHECK(sa.str() == sb.str());
}

TEST_CASE("aged release window never exceeds the project window") {
  std::vector<CommitRecord> commits;
  for (int i = 0; i < 30; ++i) {
    commits.push_back(touch("dev" + std::to_string(i % 4), 3 * i,
                            "f" + std::to_string(i % 6) + ".py"));
  }
  std::vector<ReleaseRecord> releases = {
      {"v1", kT0 + 5 * kDay}, {"v2", kT0 + 40 * kDay}, {"v3", kT0 + 80 * kDay}};
  std::vector<VulnerabilityRecord> vulns = {advisory("CVE-1", 60, "f2.py"),
                                            advisory("CVE-2", 85, "f4.py")};
  const auto table = build_metrics_table(commits, releases, vulns, {});
  for (const auto& row : table.rows) {
    CHECK(row.release_amounts_aged <= row.release_amounts);
    CHECK(row.is_pre_release + row.is_post_release == 1);  // releases exist
  }
}

TEST_CASE("metric csv round-trips the numeric columns") {
  std::vector<CommitRecord> commits = {touch("root", 0, "lib/a.py"),
                                       touch("dev", 50, "net/f.py", 7, 3)};
  std::vector<VulnerabilityRecord> vulns = {advisory("CVE-1", 60, "net/f.py", 4.25)};
  const auto table = build_metrics_table(commits, {}, vulns, {});
  std::stringstream buffer;
  write_metric_csv(buffer, table.rows);
  const auto reloaded = read_metric_csv(buffer);
  REQUIRE(reloaded.size() == table.rows.size());
  for (std::size_t i = 0; i < reloaded.size(); ++i) {
    CHECK(reloaded[i].component == table.rows[i].component);
    CHECK(reloaded[i].severity == table.rows[i].severity);
    CHECK(reloaded[i].ownership == table.rows[i].ownership);
    CHECK(reloaded[i].days_difference == table.rows[i].days_difference);
    CHECK(reloaded[i].churn_rate == table.rows[i].churn_rate);
    CHECK(reloaded[i].release_amounts_aged == table.rows[i].release_amounts_aged);
  }
}

TEST_CASE("csv schema violations carry line numbers") {
  std::stringstream bad_header("nope\n");
  CHECK_THROWS_AS(read_metric_csv(bad_header), Error);
}

}  // TEST_SUITE
