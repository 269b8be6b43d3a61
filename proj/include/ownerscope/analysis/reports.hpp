#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ownerscope/analysis/config.hpp"
#include "ownerscope/metric_row.hpp"
#include "ownerscope/stats/ols.hpp"

namespace ownerscope::analysis {

// Pearson/Spearman/Kendall per metric; nullopt marks a masked (undefined)
// coefficient from a constant column.
struct TargetColumn {
  std::string target;
  std::vector<std::array<std::optional<double>, 3>> coefficients;  // per metric
};

struct CorrelationReport {
  std::string analysis;  // "direct" | "staged" | "severity"
  std::vector<std::string> metrics;
  std::vector<TargetColumn> targets;
  std::int64_t n = 0;
};

// Metrics vs is_defective over a two-class table (SingleClass otherwise).
CorrelationReport direct_correlation_report(std::span<const metrics::MetricRow> table);

// Vulnerable rows only: metrics vs time_stage_aged_numeric plus the
// pre/post-release flags. SingleClass when the stage column is constant.
CorrelationReport staged_correlation_report(std::span<const metrics::MetricRow> table);

// Severity-bearing rows only (NoSeverityRows otherwise); the metric list
// additionally carries the release and pre/post columns.
CorrelationReport severity_correlation_report(std::span<const metrics::MetricRow> table);

struct ModelSpec {
  std::string name;
  std::string target;
  std::vector<std::string> predictors;
  std::string focal;  // predictor whose coefficient the report quotes
};

// The fixed ten-model robustness ledger (4 on is_defective, 5 on
// time_stage_aged_numeric, 1 on severity).
const std::vector<ModelSpec>& robustness_models();

struct ModelFit {
  ModelSpec spec;
  std::optional<stats::RegressionResult> result;
  std::optional<double> focal_coefficient;
  std::string error;  // error kind when the fit failed, empty otherwise
};

// Fits every ledger model; per-model failures (rank deficiency, too few
// rows) are recorded without aborting the suite.
std::vector<ModelFit> regression_suite(std::span<const metrics::MetricRow> table);

}  // namespace ownerscope::analysis
