#include "ownerscope/analysis/reports.hpp"

#include <algorithm>

#include "ownerscope/analysis/dataset.hpp"
#include "ownerscope/error.hpp"
#include "ownerscope/stats/correlation.hpp"

namespace ownerscope::analysis {
namespace {

std::array<std::optional<double>, 3> all_methods(std::span<const double> x,
                                                 std::span<const double> y) {
  return {stats::pearson(x, y), stats::spearman(x, y), stats::kendall(x, y)};
}

TargetColumn correlate_against(std::span<const metrics::MetricRow> rows,
                               const std::vector<std::string>& metric_names,
                               const std::string& target) {
  TargetColumn column;
  column.target = target;
  const auto target_values = extract_column(rows, target);
  for (const std::string& metric : metric_names) {
    column.coefficients.push_back(all_methods(extract_column(rows, metric), target_values));
  }
  return column;
}

bool column_constant(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(),
                     [&](double v) { return v == values.front(); });
}

}  // namespace

CorrelationReport direct_correlation_report(std::span<const metrics::MetricRow> table) {
  if (table.size() < 2) {
    raise(ErrorKind::TooFewSamples, "need at least 2 rows");
  }
  const auto classes = extract_column(table, "is_defective");
  if (column_constant(classes)) {
    raise(ErrorKind::SingleClass, "table holds a single is_defective class");
  }
  CorrelationReport report;
  report.analysis = "direct";
  report.metrics = heatmap_metric_columns();
  report.n = static_cast<std::int64_t>(table.size());
  report.targets.push_back(correlate_against(table, report.metrics, "is_defective"));
  return report;
}

CorrelationReport staged_correlation_report(std::span<const metrics::MetricRow> table) {
  std::vector<metrics::MetricRow> vulnerable;
  for (const auto& row : table) {
    if (row.is_defective == 1) vulnerable.push_back(row);
  }
  if (vulnerable.size() < 2) {
    raise(ErrorKind::SingleClass,
          "need at least 2 vulnerable rows, found " + std::to_string(vulnerable.size()));
  }
  const auto stages = extract_column(vulnerable, "time_stage_aged_numeric");
  if (column_constant(stages)) {
    raise(ErrorKind::SingleClass, "time_stage_aged_numeric is constant");
  }
  CorrelationReport report;
  report.analysis = "staged";
  report.metrics = heatmap_metric_columns();
  report.n = static_cast<std::int64_t>(vulnerable.size());
  report.targets.push_back(
      correlate_against(vulnerable, report.metrics, "time_stage_aged_numeric"));
  report.targets.push_back(correlate_against(vulnerable, report.metrics, "is_pre_release"));
  report.targets.push_back(correlate_against(vulnerable, report.metrics, "is_post_release"));
  return report;
}

CorrelationReport severity_correlation_report(std::span<const metrics::MetricRow> table) {
  std::vector<metrics::MetricRow> scored;
  for (const auto& row : table) {
    if (row.severity) scored.push_back(row);
  }
  if (scored.size() < 2) {
    raise(ErrorKind::NoSeverityRows,
          "need at least 2 severity-bearing rows, found " + std::to_string(scored.size()));
  }
  CorrelationReport report;
  report.analysis = "severity";
  report.metrics = severity_metric_columns();
  report.n = static_cast<std::int64_t>(scored.size());
  report.targets.push_back(correlate_against(scored, report.metrics, "severity"));
  return report;
}

const std::vector<ModelSpec>& robustness_models() {
  static const std::vector<ModelSpec> models = [] {
    const std::vector<std::string> classic = {"file_size", "code_churn", "churn_rate"};
    const std::vector<std::string> minor = {"n_minor", "per_minor"};
    auto with = [](std::vector<std::string> base, const std::vector<std::string>& extra) {
      base.insert(base.end(), extra.begin(), extra.end());
      return base;
    };
    std::vector<ModelSpec> all;
    all.push_back({"days_difference", "is_defective", {"days_difference"}, "days_difference"});
    all.push_back({"days_difference + classic", "is_defective",
                   with({"days_difference"}, classic), "days_difference"});
    all.push_back({"age", "is_defective", {"age"}, "age"});
    all.push_back({"age + classic", "is_defective", with({"age"}, classic), "age"});
    all.push_back({"per_minor", "time_stage_aged_numeric", {"per_minor"}, "per_minor"});
    all.push_back({"per_minor + classic", "time_stage_aged_numeric",
                   with({"per_minor"}, classic), "per_minor"});
    all.push_back({"oss_stage_aged", "time_stage_aged_numeric",
                   {"oss_stage_aged_numeric"}, "oss_stage_aged_numeric"});
    all.push_back({"oss_stage_aged + classic", "time_stage_aged_numeric",
                   with({"oss_stage_aged_numeric"}, classic), "oss_stage_aged_numeric"});
    all.push_back({"per_minor + oss_stage_aged", "time_stage_aged_numeric",
                   {"per_minor", "oss_stage_aged_numeric"}, "per_minor"});
    all.push_back({"days_difference + minor", "severity",
                   with({"days_difference"}, minor), "days_difference"});
    return all;
  }();
  return models;
}

std::vector<ModelFit> regression_suite(std::span<const metrics::MetricRow> table) {
  std::vector<ModelFit> fits;
  for (const ModelSpec& spec : robustness_models()) {
    ModelFit fit;
    fit.spec = spec;
    try {
      std::vector<metrics::MetricRow> rows;
      if (spec.target == "severity") {
        for (const auto& row : table) {
          if (row.severity) rows.push_back(row);
        }
      } else {
        rows.assign(table.begin(), table.end());
      }
      std::vector<std::vector<double>> predictors;
      for (const std::string& name : spec.predictors) {
        predictors.push_back(extract_column(rows, name));
      }
      const auto y = extract_column(rows, spec.target);
      fit.result = stats::ols_fit(predictors, y);
      const auto focal = std::find(spec.predictors.begin(), spec.predictors.end(),
                                   spec.focal);
      fit.focal_coefficient = fit.result->coefficients[static_cast<std::size_t>(
          focal - spec.predictors.begin())];
    } catch (const Error& e) {
      fit.error = to_string(e.kind());
    }
    fits.push_back(std::move(fit));
  }
  return fits;
}

}  // namespace ownerscope::analysis
