#include "ownerscope/analysis/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ownerscope/csv.hpp"
#include "ownerscope/error.hpp"

namespace ownerscope::analysis {

std::vector<metrics::MetricRow> build_dataset(
    std::span<const metrics::MetricRow> vuln_rows,
    std::span<const metrics::MetricRow> nonvuln_pool, const DatasetSpec& spec) {
  if (!(spec.ratio > 0.0 && spec.ratio <= 1.0)) {
    raise(ErrorKind::SchemaViolation,
          "ratio must lie in (0,1], got " + csv::format_double(spec.ratio));
  }
  const double v = static_cast<double>(vuln_rows.size());
  const double wanted = spec.reading == RatioReading::Odds
                            ? v / spec.ratio
                            : v * (1.0 - spec.ratio) / spec.ratio;
  const std::size_t required = static_cast<std::size_t>(std::llround(wanted));
  if (required > nonvuln_pool.size()) {
    raise(ErrorKind::PoolTooSmall,
          "ratio " + csv::format_double(spec.ratio) + " needs " +
              std::to_string(required) + " non-vulnerable rows, pool has " +
              std::to_string(nonvuln_pool.size()));
  }

  std::vector<metrics::MetricRow> table(vuln_rows.begin(), vuln_rows.end());
  table.reserve(vuln_rows.size() + required);

  // Partial Fisher-Yates with explicit bounded draws; selected indices are
  // re-sorted so the emitted pool order is canonical for every seed.
  std::vector<std::size_t> indices(nonvuln_pool.size());
  for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
  std::mt19937_64 gen(spec.seed);
  for (std::size_t i = 0; i < required && i + 1 < indices.size(); ++i) {
    const std::size_t j = i + static_cast<std::size_t>(gen() % (indices.size() - i));
    std::swap(indices[i], indices[j]);
  }
  std::vector<std::size_t> selected(indices.begin(),
                                    indices.begin() + static_cast<std::ptrdiff_t>(required));
  std::sort(selected.begin(), selected.end());
  for (const std::size_t index : selected) {
    table.push_back(nonvuln_pool[index]);
  }
  return table;
}

const std::vector<std::string>& heatmap_metric_columns() {
  static const std::vector<std::string> columns = {
      "ownership",       "n_contributors", "n_minor",
      "per_minor",       "days_difference", "age",
      "oss_stage_aged_numeric", "file_size", "code_churn",
      "churn_rate"};
  return columns;
}

const std::vector<std::string>& severity_metric_columns() {
  static const std::vector<std::string> columns = [] {
    std::vector<std::string> all = heatmap_metric_columns();
    all.insert(all.end(), {"is_pre_release", "is_post_release", "release_amounts",
                           "release_amounts_aged"});
    return all;
  }();
  return columns;
}

std::vector<double> extract_column(std::span<const metrics::MetricRow> rows,
                                   const std::string& name) {
  using metrics::MetricRow;
  std::vector<double> column;
  column.reserve(rows.size());
  auto fill = [&](auto getter) {
    for (const MetricRow& row : rows) column.push_back(getter(row));
  };
  if (name == "is_defective") {
    fill([](const MetricRow& r) { return static_cast<double>(r.is_defective); });
  } else if (name == "severity") {
    for (const MetricRow& row : rows) {
      if (!row.severity) {
        raise(ErrorKind::NoSeverityRows,
              "row for '" + row.component + "' has no severity");
      }
      column.push_back(*row.severity);
    }
  } else if (name == "ownership") {
    fill([](const MetricRow& r) { return r.ownership; });
  } else if (name == "n_contributors") {
    fill([](const MetricRow& r) { return static_cast<double>(r.n_contributors); });
  } else if (name == "n_minor") {
    fill([](const MetricRow& r) { return static_cast<double>(r.n_minor); });
  } else if (name == "per_minor") {
    fill([](const MetricRow& r) { return r.per_minor; });
  } else if (name == "days_difference") {
    fill([](const MetricRow& r) { return r.days_difference; });
  } else if (name == "age") {
    fill([](const MetricRow& r) { return r.age; });
  } else if (name == "time_stage_aged_numeric") {
    fill([](const MetricRow& r) { return r.time_stage_aged_numeric; });
  } else if (name == "oss_stage_aged_numeric") {
    fill([](const MetricRow& r) { return r.oss_stage_aged_numeric; });
  } else if (name == "file_size") {
    fill([](const MetricRow& r) { return static_cast<double>(r.file_size); });
  } else if (name == "code_churn") {
    fill([](const MetricRow& r) { return static_cast<double>(r.code_churn); });
  } else if (name == "churn_rate") {
    fill([](const MetricRow& r) { return r.churn_rate; });
  } else if (name == "is_pre_release") {
    fill([](const MetricRow& r) { return static_cast<double>(r.is_pre_release); });
  } else if (name == "is_post_release") {
    fill([](const MetricRow& r) { return static_cast<double>(r.is_post_release); });
  } else if (name == "release_amounts") {
    fill([](const MetricRow& r) { return static_cast<double>(r.release_amounts); });
  } else if (name == "release_amounts_aged") {
    fill([](const MetricRow& r) { return static_cast<double>(r.release_amounts_aged); });
  } else {
    raise(ErrorKind::UnknownColumn, "no metric column named '" + name + "'");
  }
  return column;
}

stats::CorrelationMatrix metric_correlation_matrix(
    std::span<const metrics::MetricRow> rows, const std::vector<std::string>& columns,
    stats::CorrMethod method) {
  if (rows.size() < 2) {
    raise(ErrorKind::TooFewSamples, "correlation matrix needs at least 2 rows");
  }
  std::vector<std::vector<double>> data;
  data.reserve(columns.size());
  for (const std::string& name : columns) {
    data.push_back(extract_column(rows, name));
  }
  return stats::correlation_matrix(data, columns, method);
}

}  // namespace ownerscope::analysis
