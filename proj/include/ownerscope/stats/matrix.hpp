#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ownerscope::stats {

enum class CorrMethod { Pearson, Spearman, Kendall };

const char* to_string(CorrMethod method);

// Square matrix of pairwise metric correlations. Undefined entries (a
// constant column anywhere in the pair) are stored as 0 with the mask bit
// cleared; the diagonal is exactly 1 for non-constant columns.
struct CorrelationMatrix {
  std::vector<std::string> labels;
  std::vector<double> values;    // row-major labels.size()^2
  std::vector<std::uint8_t> defined;
  CorrMethod method = CorrMethod::Pearson;

  std::size_t size() const { return labels.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * size() + j]; }
  bool is_defined(std::size_t i, std::size_t j) const {
    return defined[i * size() + j] != 0;
  }
};

// columns[k] is the sample vector for labels[k]; all columns must share one
// length >= 2 (TooFewSamples otherwise).
CorrelationMatrix correlation_matrix(const std::vector<std::vector<double>>& columns,
                                     const std::vector<std::string>& labels,
                                     CorrMethod method);

// sqrt of the summed squared entry differences; labels must match exactly.
double frobenius_distance(const CorrelationMatrix& a, const CorrelationMatrix& b);

struct MinMaxScores {
  std::vector<double> scores;
  bool degenerate = false;  // all distances equal: every score defined as 1.0
};

// Maps each distance to 1 - (d - min)/(max - min). Needs >= 2 values.
MinMaxScores minmax_similarity(std::span<const double> distances);

// exp(-lambda * d); lambda must be positive and d non-negative.
double expdecay_similarity(double distance, double lambda = 1.0);

// Cosine of the row-major flattened matrices; ZeroVector when either
// flattens to all zeros.
double cosine_similarity(const CorrelationMatrix& a, const CorrelationMatrix& b);

// Row-major distance transform d = 1 - |r| with an exactly zero diagonal,
// the form consumed by the Mantel test.
std::vector<double> to_distance(const CorrelationMatrix& matrix);

// CSV with labels as header and first column.
void write_matrix_csv(std::ostream& out, const CorrelationMatrix& matrix);

}  // namespace ownerscope::stats
