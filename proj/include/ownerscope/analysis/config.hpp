#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ownerscope/stages.hpp"
#include "ownerscope/types.hpp"

namespace ownerscope::analysis {

// How the sweep ratio maps to sample counts. Odds: r means
// vulnerable : non-vulnerable = r : 1 (0.1 -> ten non-vulnerable rows per
// vulnerable). Fraction: r is the vulnerable share of the total.
enum class RatioReading { Odds, Fraction };

// Which matrix pairs enter the averaged similarity scores.
enum class PairSelection { All, Consecutive };

struct RunConfig {
  double threshold = 0.10;
  std::uint64_t seed = 42;
  double ratio = 1.0;
  double lambda = 1.0;
  int permutations = 999;
  metrics::Calendar calendar{};
  int jobs = 1;
  RatioReading ratio_reading = RatioReading::Odds;
  PairSelection pairs = PairSelection::All;
};

// Raw inputs for analyses that must rebuild ledgers (threshold sweep,
// locality clustering).
struct AnalysisInputs {
  std::vector<CommitRecord> commits;  // sorted ascending
  std::vector<ReleaseRecord> releases;
  std::vector<VulnerabilityRecord> vulns;
  RunConfig cfg;
};

}  // namespace ownerscope::analysis
