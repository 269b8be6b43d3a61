#include "ownerscope/analysis/sweeps.hpp"

#include <algorithm>
#include <map>

#include "ownerscope/analysis/dataset.hpp"
#include "ownerscope/error.hpp"
#include "ownerscope/stats/ks.hpp"
#include "ownerscope/stats/mantel.hpp"

namespace ownerscope::analysis {
namespace {

std::uint64_t pair_seed(std::uint64_t base, std::size_t i, std::size_t j) {
  return base + 1000003ULL * static_cast<std::uint64_t>(i) + static_cast<std::uint64_t>(j);
}

void fill_pairwise(SweepReport& report, const RunConfig& cfg) {
  const auto& points = report.points;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<double> distances;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      pairs.emplace_back(i, j);
      distances.push_back(stats::frobenius_distance(points[i].matrix, points[j].matrix));
    }
  }
  const auto minmax = stats::minmax_similarity(distances);
  report.minmax_degenerate = minmax.degenerate;

  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs[k];
    PairStats stats_row;
    stats_row.a = points[i].setting;
    stats_row.b = points[j].setting;
    stats_row.frobenius = distances[k];
    stats_row.minmax = minmax.scores[k];
    stats_row.expdecay = stats::expdecay_similarity(distances[k], cfg.lambda);
    stats_row.cosine = stats::cosine_similarity(points[i].matrix, points[j].matrix);
    const auto ks = stats::ks_two_sample(points[i].matrix.values, points[j].matrix.values);
    stats_row.ks_d = ks.d;
    stats_row.ks_p = ks.p;
    const auto da = stats::to_distance(points[i].matrix);
    const auto db = stats::to_distance(points[j].matrix);
    const auto mantel = stats::mantel(da, db, points[i].matrix.size(), cfg.permutations,
                                      pair_seed(cfg.seed, i, j));
    stats_row.mantel_r = mantel.r;
    stats_row.mantel_p = mantel.p_less;
    stats_row.mantel_p_greater = mantel.p_greater;
    report.pairwise.push_back(stats_row);
  }

  // Averages over the configured pair selection; consecutive mode rescales
  // min-max over its own distance subset.
  report.pairs = cfg.pairs;
  std::vector<std::size_t> selected;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (cfg.pairs == PairSelection::All || pairs[k].second == pairs[k].first + 1) {
      selected.push_back(k);
    }
  }
  std::vector<double> selected_distances;
  for (const std::size_t k : selected) selected_distances.push_back(distances[k]);
  const auto selected_minmax = stats::minmax_similarity(selected_distances);
  double sum_minmax = 0.0, sum_expdecay = 0.0, sum_mantel_p = 0.0;
  for (std::size_t s = 0; s < selected.size(); ++s) {
    sum_minmax += selected_minmax.scores[s];
    sum_expdecay += report.pairwise[selected[s]].expdecay;
    sum_mantel_p += report.pairwise[selected[s]].mantel_p;
  }
  const double count = static_cast<double>(selected.size());
  report.avg_minmax = sum_minmax / count;
  report.avg_expdecay = sum_expdecay / count;
  report.avg_mantel_p = sum_mantel_p / count;
}

}  // namespace

SweepReport ratio_sweep(std::span<const metrics::MetricRow> vuln_rows,
                        std::span<const metrics::MetricRow> nonvuln_pool,
                        const RunConfig& cfg) {
  SweepReport report;
  report.axis = "ratio";
  for (int k = 0; k < 10; ++k) {
    DatasetSpec spec;
    spec.ratio = static_cast<double>(k + 1) / 10.0;
    spec.seed = cfg.seed + static_cast<std::uint64_t>(k);
    spec.threshold = cfg.threshold;
    spec.reading = cfg.ratio_reading;
    const auto table = build_dataset(vuln_rows, nonvuln_pool, spec);
    SweepPoint point;
    point.setting = spec.ratio;
    point.rows = static_cast<std::int64_t>(table.size());
    point.matrix = metric_correlation_matrix(table, heatmap_metric_columns(),
                                             stats::CorrMethod::Pearson);
    report.points.push_back(std::move(point));
  }
  fill_pairwise(report, cfg);
  return report;
}

SweepReport threshold_sweep(const AnalysisInputs& inputs) {
  static const double kThresholds[] = {0.05, 0.10, 0.20, 0.50};
  SweepReport report;
  report.axis = "threshold";
  for (const double threshold : kThresholds) {
    metrics::TableOptions options;
    options.threshold = threshold;
    options.calendar = inputs.cfg.calendar;
    options.jobs = inputs.cfg.jobs;
    const auto table =
        metrics::build_metrics_table(inputs.commits, inputs.releases, inputs.vulns, options);
    SweepPoint point;
    point.setting = threshold;
    point.rows = static_cast<std::int64_t>(table.rows.size());
    point.matrix = metric_correlation_matrix(table.rows, heatmap_metric_columns(),
                                             stats::CorrMethod::Pearson);
    report.points.push_back(std::move(point));
  }
  fill_pairwise(report, inputs.cfg);

  // Which threshold stays closest to the rest: highest mean cosine.
  double best_mean = -2.0;
  for (const SweepPoint& point : report.points) {
    double sum = 0.0;
    int count = 0;
    for (const PairStats& pair : report.pairwise) {
      if (pair.a == point.setting || pair.b == point.setting) {
        sum += pair.cosine;
        ++count;
      }
    }
    const double mean = sum / static_cast<double>(count);
    if (mean > best_mean) {
      best_mean = mean;
      report.preferred_setting = point.setting;
    }
  }
  return report;
}

LocalityResult locality_check(const AnalysisInputs& inputs) {
  metrics::TableOptions options;
  options.threshold = inputs.cfg.threshold;
  options.calendar = inputs.cfg.calendar;
  options.jobs = inputs.cfg.jobs;
  const auto table =
      metrics::build_metrics_table(inputs.commits, inputs.releases, inputs.vulns, options);

  std::vector<metrics::MetricRow> file_rows;
  for (const auto& row : table.rows) {
    if (row.is_defective == 1) file_rows.push_back(row);
  }
  const auto row_key = [](const metrics::MetricRow& row) {
    return std::pair<std::string, std::string>(row.vuln_id, row.component);
  };
  std::sort(file_rows.begin(), file_rows.end(),
            [&](const auto& a, const auto& b) { return row_key(a) < row_key(b); });

  std::map<std::string, std::vector<const metrics::MetricRow*>> groups;
  for (const auto& row : file_rows) {
    groups[row.group_key].push_back(&row);
  }
  if (groups.size() < 2) {
    raise(ErrorKind::SingleGroup,
          "locality needs at least 2 groups, found " + std::to_string(groups.size()));
  }

  const metrics::ComponentIndex index = metrics::ComponentIndex::build(inputs.commits);
  std::vector<metrics::MetricRow> group_rows;
  for (const auto& [key, members] : groups) {
    metrics::ContributionLedger merged;
    merged.component = key;
    std::int64_t size_sum = 0, churn_sum = 0;
    std::int64_t origin = members.front()->first_touch;
    std::int64_t evaluation = members.front()->event;
    const metrics::MetricRow* oldest = members.front();
    for (const metrics::MetricRow* member : members) {
      const auto ledger = index.ledger_at(member->component, member->event);
      for (const auto& [author, count] : ledger.counts) {
        merged.counts[author] += count;
        merged.total += count;
      }
      size_sum += member->file_size;
      churn_sum += member->code_churn;
      origin = std::min(origin, member->first_touch);
      evaluation = std::max(evaluation, member->event);
      if (member->age > oldest->age) oldest = member;
    }
    const auto profile = metrics::ownership_profile(merged, inputs.cfg.threshold);

    metrics::MetricRow row = *members.front();
    row.component = key;
    row.ownership = profile.ownership;
    row.n_contributors = profile.n_contributors;
    row.n_minor = profile.n_minor;
    row.per_minor = profile.per_minor;
    row.file_size = size_sum;
    row.code_churn = churn_sum;
    row.churn_rate = static_cast<double>(churn_sum) /
                     static_cast<double>(std::max<std::int64_t>(size_sum, 1));
    row.age = oldest->age;
    row.days_difference = members.front()->days_difference;
    for (const metrics::MetricRow* member : members) {
      row.days_difference = std::max(row.days_difference, member->days_difference);
    }
    row.time_stage_aged_numeric =
        metrics::time_stage(row.age, inputs.cfg.calendar).numeric;
    metrics::ReleaseTimeline timeline;
    timeline.releases = inputs.releases;
    timeline.origin = origin;
    timeline.evaluation = evaluation;
    row.oss_stage_aged_numeric = metrics::oss_stage(timeline, inputs.cfg.calendar).numeric;
    row.first_touch = origin;
    row.event = evaluation;
    row.vuln_id = members.front()->vuln_id;
    row.group_key = key;
    group_rows.push_back(std::move(row));
  }
  // Canonical order matching the file rows: sort groups by their smallest
  // member key, so singleton groupings reproduce the file matrix bit for bit.
  std::vector<std::pair<std::pair<std::string, std::string>, std::size_t>> order;
  {
    std::size_t g = 0;
    for (const auto& [key, members] : groups) {
      auto smallest = row_key(*members.front());
      for (const auto* member : members) smallest = std::min(smallest, row_key(*member));
      order.emplace_back(std::move(smallest), g++);
    }
  }
  std::sort(order.begin(), order.end());
  std::vector<metrics::MetricRow> sorted_groups;
  sorted_groups.reserve(group_rows.size());
  for (const auto& [key, g] : order) sorted_groups.push_back(group_rows[g]);

  const auto file_matrix = metric_correlation_matrix(file_rows, heatmap_metric_columns(),
                                                     stats::CorrMethod::Pearson);
  const auto group_matrix = metric_correlation_matrix(
      sorted_groups, heatmap_metric_columns(), stats::CorrMethod::Pearson);

  const auto mantel =
      stats::mantel(stats::to_distance(file_matrix), stats::to_distance(group_matrix),
                    file_matrix.size(), inputs.cfg.permutations, inputs.cfg.seed);
  LocalityResult result;
  result.mantel_r = mantel.r;
  result.mantel_p = mantel.p_less;
  result.mantel_p_greater = mantel.p_greater;
  result.n_files = static_cast<std::int64_t>(file_rows.size());
  result.n_groups = static_cast<std::int64_t>(sorted_groups.size());
  return result;
}

}  // namespace ownerscope::analysis
