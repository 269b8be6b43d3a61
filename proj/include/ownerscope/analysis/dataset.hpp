#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ownerscope/analysis/config.hpp"
#include "ownerscope/metric_row.hpp"
#include "ownerscope/stats/matrix.hpp"

namespace ownerscope::analysis {

struct DatasetSpec {
  double ratio = 1.0;  // vulnerable : non-vulnerable mix, in (0,1]
  std::uint64_t seed = 42;
  double threshold = 0.10;
  std::int64_t snapshot = 0;
  RatioReading reading = RatioReading::Odds;
};

// All vulnerable rows plus non-vulnerable rows sampled without replacement
// from the pool (seeded, deterministic; selected rows keep pool order).
// Raises PoolTooSmall when the ratio asks for more rows than exist.
std::vector<metrics::MetricRow> build_dataset(
    std::span<const metrics::MetricRow> vuln_rows,
    std::span<const metrics::MetricRow> nonvuln_pool, const DatasetSpec& spec);

// The fixed metric set every correlation heatmap is built from, in report
// row order.
const std::vector<std::string>& heatmap_metric_columns();
// The severity report adds the release/pre-post columns.
const std::vector<std::string>& severity_metric_columns();

// Column extraction by CSV column name; raises UnknownColumn. Severity must
// be present on every row passed here.
std::vector<double> extract_column(std::span<const metrics::MetricRow> rows,
                                   const std::string& name);

stats::CorrelationMatrix metric_correlation_matrix(
    std::span<const metrics::MetricRow> rows, const std::vector<std::string>& columns,
    stats::CorrMethod method);

}  // namespace ownerscope::analysis
