#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ownerscope/ledger.hpp"
#include "ownerscope/stages.hpp"
#include "ownerscope/types.hpp"

namespace ownerscope::metrics {

// One (component, event) observation. Vulnerable rows use the advisory's
// published time as cutoff; non-vulnerable snapshot rows use the last commit
// timestamp. Stage numerics are stored as doubles but are integral whenever
// produced by the pipeline.
struct MetricRow {
  std::string component;
  int is_defective = 0;
  std::optional<double> severity;
  double ownership = 0.0;
  std::int64_t n_contributors = 0;
  std::int64_t n_minor = 0;
  double per_minor = 0.0;
  double days_difference = 0.0;
  double age = 0.0;
  double time_stage_aged_numeric = 1;
  double oss_stage_aged_numeric = 1;
  std::int64_t file_size = 0;
  std::int64_t code_churn = 0;
  double churn_rate = 0.0;
  int is_pre_release = 0;
  int is_post_release = 0;
  std::int64_t release_amounts = 0;
  std::int64_t release_amounts_aged = 0;

  // Carried for in-memory analyses, never serialized to CSV.
  std::string vuln_id;
  std::string group_key;
  std::int64_t event = 0;
  std::int64_t first_touch = 0;
};

inline constexpr std::array<const char*, 18> kMetricCsvColumns = {
    "component",        "is_defective",
    "severity",         "ownership",
    "n_contributors",   "n_minor",
    "per_minor",        "days_difference",
    "age",              "time_stage_aged_numeric",
    "oss_stage_aged_numeric", "file_size",
    "code_churn",       "churn_rate",
    "is_pre_release",   "is_post_release",
    "release_amounts",  "release_amounts_aged"};

// Precomputed per-component view over a sorted commit list. Only non-merge
// commits define components and contributions.
class ComponentIndex {
 public:
  static ComponentIndex build(std::span<const CommitRecord> commits);

  std::int64_t project_start() const { return project_start_; }
  std::int64_t snapshot() const { return snapshot_; }
  bool has_component(const std::string& component) const;
  // Earliest counted commit timestamp; raises ComponentUnknown.
  std::int64_t first_touch(const std::string& component) const;
  const std::map<std::string, std::vector<const CommitRecord*>>& touches() const {
    return touches_;
  }

  ContributionLedger ledger_at(const std::string& component, std::int64_t cutoff) const;
  ClassicMetrics classic_at(const std::string& component, std::int64_t cutoff) const;

 private:
  std::map<std::string, std::vector<const CommitRecord*>> touches_;
  std::int64_t project_start_ = 0;
  std::int64_t snapshot_ = 0;
};

struct RowOptions {
  double threshold = 0.10;
  Calendar calendar{};
  // Exact line-count overrides keyed by path; replaces the estimated
  // file_size and recomputes churn_rate.
  std::map<std::string, std::int64_t> size_overrides;
};

// vuln == nullptr builds a non-vulnerable snapshot row. Raises
// ComponentUnknown / NegativeSpan for rows that cannot be joined.
MetricRow assemble_metric_row(const ComponentIndex& index,
                              std::span<const ReleaseRecord> releases,
                              const VulnerabilityRecord* vuln,
                              const std::string& component, const RowOptions& options);

// Convenience overload matching the operation signature; builds a throwaway
// index over the span.
MetricRow assemble_metric_row(std::span<const CommitRecord> commits,
                              std::span<const ReleaseRecord> releases,
                              const VulnerabilityRecord* vuln,
                              const std::string& component, const RowOptions& options);

struct ExclusionReport {
  std::int64_t component_unknown = 0;
  std::int64_t negative_span = 0;
  std::vector<std::string> notes;

  std::int64_t total() const { return component_unknown + negative_span; }
};

struct MetricsTable {
  std::vector<MetricRow> rows;  // vulnerable rows first, then snapshot rows
  ExclusionReport exclusions;
};

struct TableOptions : RowOptions {
  bool aggregate_repo = false;
  int jobs = 1;
};

MetricsTable build_metrics_table(std::span<const CommitRecord> commits,
                                 std::span<const ReleaseRecord> releases,
                                 std::span<const VulnerabilityRecord> vulns,
                                 const TableOptions& options);

void write_metric_csv(std::ostream& out, std::span<const MetricRow> rows);
std::vector<MetricRow> read_metric_csv(std::istream& in);
std::vector<MetricRow> read_metric_csv(const std::string& path);

}  // namespace ownerscope::metrics
