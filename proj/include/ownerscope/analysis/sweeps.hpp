#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ownerscope/analysis/config.hpp"
#include "ownerscope/metric_row.hpp"
#include "ownerscope/stats/matrix.hpp"

namespace ownerscope::analysis {

struct SweepPoint {
  double setting = 0.0;  // ratio or threshold
  stats::CorrelationMatrix matrix;
  std::int64_t rows = 0;
};

// One entry per unordered pair of sweep points. mantel_p is the less-sided
// permutation probability P(r_perm <= r_obs), the statistic that approaches
// 1 for matching matrices; the greater-sided companion is kept alongside.
struct PairStats {
  double a = 0.0, b = 0.0;
  double frobenius = 0.0;
  double minmax = 0.0;
  double expdecay = 0.0;
  double cosine = 0.0;
  double ks_d = 0.0;
  double ks_p = 1.0;
  double mantel_r = 0.0;
  double mantel_p = 0.0;
  double mantel_p_greater = 0.0;
};

struct SweepReport {
  std::string axis;  // "ratio" | "threshold"
  std::vector<SweepPoint> points;
  std::vector<PairStats> pairwise;  // all unordered pairs
  double avg_minmax = 0.0;
  double avg_expdecay = 0.0;
  double avg_mantel_p = 0.0;
  bool minmax_degenerate = false;
  PairSelection pairs = PairSelection::All;  // pairs entering the averages
  // threshold axis only: setting with the highest mean cosine similarity
  // to the other matrices.
  std::optional<double> preferred_setting;
};

// Vulnerable-to-non-vulnerable mix sweep over ratios 0.1 .. 1.0; one Pearson
// heatmap per ratio, point k sampled with seed cfg.seed + k.
SweepReport ratio_sweep(std::span<const metrics::MetricRow> vuln_rows,
                        std::span<const metrics::MetricRow> nonvuln_pool,
                        const RunConfig& cfg);

// Minor-contributor threshold sweep over {5%, 10%, 20%, 50%}; rows are
// rebuilt per threshold over the full table (all vulnerable rows plus the
// whole pool).
SweepReport threshold_sweep(const AnalysisInputs& inputs);

struct LocalityResult {
  double mantel_r = 0.0;
  double mantel_p = 0.0;          // less-sided, as in PairStats
  double mantel_p_greater = 0.0;
  std::int64_t n_files = 0;
  std::int64_t n_groups = 0;
};

// File-level vs group-level heatmaps, groups clustered by the advisories'
// group_key (ledgers merged by summing counts, classic metrics summed, age
// from the oldest member). SingleGroup when fewer than 2 groups survive.
LocalityResult locality_check(const AnalysisInputs& inputs);

}  // namespace ownerscope::analysis
