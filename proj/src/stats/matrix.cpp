#include "ownerscope/stats/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "ownerscope/csv.hpp"
#include "ownerscope/error.hpp"
#include "ownerscope/stats/correlation.hpp"

namespace ownerscope::stats {
namespace {

void check_same_labels(const CorrelationMatrix& a, const CorrelationMatrix& b) {
  if (a.labels != b.labels) {
    raise(ErrorKind::ShapeMismatch, "matrices carry different labels");
  }
}

std::optional<double> correlate(CorrMethod method, std::span<const double> x,
                                std::span<const double> y) {
  switch (method) {
    case CorrMethod::Pearson: return pearson(x, y);
    case CorrMethod::Spearman: return spearman(x, y);
    case CorrMethod::Kendall: return kendall(x, y);
  }
  return std::nullopt;
}

}  // namespace

const char* to_string(CorrMethod method) {
  switch (method) {
    case CorrMethod::Pearson: return "pearson";
    case CorrMethod::Spearman: return "spearman";
    case CorrMethod::Kendall: return "kendall";
  }
  return "?";
}

CorrelationMatrix correlation_matrix(const std::vector<std::vector<double>>& columns,
                                     const std::vector<std::string>& labels,
                                     CorrMethod method) {
  if (columns.size() != labels.size()) {
    raise(ErrorKind::ShapeMismatch, "one label per column required");
  }
  if (columns.empty()) {
    raise(ErrorKind::ShapeMismatch, "no columns");
  }
  const std::size_t rows = columns.front().size();
  if (rows < 2) {
    raise(ErrorKind::TooFewSamples, "need at least 2 rows");
  }
  for (const auto& column : columns) {
    if (column.size() != rows) {
      raise(ErrorKind::ShapeMismatch, "ragged columns");
    }
  }

  const std::size_t n = columns.size();
  CorrelationMatrix matrix;
  matrix.labels = labels;
  matrix.method = method;
  matrix.values.assign(n * n, 0.0);
  matrix.defined.assign(n * n, 0);

  std::vector<bool> constant(n);
  for (std::size_t i = 0; i < n; ++i) {
    constant[i] = std::all_of(columns[i].begin(), columns[i].end(),
                              [&](double v) { return v == columns[i].front(); });
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!constant[i]) {
      matrix.values[i * n + i] = 1.0;
      matrix.defined[i * n + i] = 1;
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (constant[i] || constant[j]) continue;
      const auto coefficient = correlate(method, columns[i], columns[j]);
      if (!coefficient) continue;
      matrix.values[i * n + j] = matrix.values[j * n + i] = *coefficient;
      matrix.defined[i * n + j] = matrix.defined[j * n + i] = 1;
    }
  }
  return matrix;
}

double frobenius_distance(const CorrelationMatrix& a, const CorrelationMatrix& b) {
  check_same_labels(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double diff = a.values[i] - b.values[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

MinMaxScores minmax_similarity(std::span<const double> distances) {
  if (distances.size() < 2) {
    raise(ErrorKind::TooFewSamples, "min-max scaling needs at least 2 distances");
  }
  const auto [lo_it, hi_it] = std::minmax_element(distances.begin(), distances.end());
  const double lo = *lo_it, hi = *hi_it;
  MinMaxScores result;
  result.scores.reserve(distances.size());
  if (lo == hi) {
    result.degenerate = true;
    result.scores.assign(distances.size(), 1.0);
    return result;
  }
  for (const double d : distances) {
    result.scores.push_back(1.0 - (d - lo) / (hi - lo));
  }
  return result;
}

double expdecay_similarity(double distance, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    raise(ErrorKind::InvalidLambda, "lambda must be positive and finite, got " +
                                        csv::format_double(lambda));
  }
  if (!(distance >= 0.0)) {
    raise(ErrorKind::InvalidLambda,
          "distance must be non-negative, got " + csv::format_double(distance));
  }
  return std::exp(-lambda * distance);
}

double cosine_similarity(const CorrelationMatrix& a, const CorrelationMatrix& b) {
  check_same_labels(a, b);
  double dot = 0.0, norm_a = 0.0, norm_b = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    dot += a.values[i] * b.values[i];
    norm_a += a.values[i] * a.values[i];
    norm_b += b.values[i] * b.values[i];
  }
  if (norm_a == 0.0 || norm_b == 0.0) {
    raise(ErrorKind::ZeroVector, "cosine similarity of a zero matrix is undefined");
  }
  return dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
}

std::vector<double> to_distance(const CorrelationMatrix& matrix) {
  const std::size_t n = matrix.size();
  std::vector<double> distance(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      distance[i * n + j] = i == j ? 0.0 : 1.0 - std::abs(matrix.at(i, j));
    }
  }
  return distance;
}

void write_matrix_csv(std::ostream& out, const CorrelationMatrix& matrix) {
  out << "metric";
  for (const auto& label : matrix.labels) out << ',' << csv::escape(label);
  out << '\n';
  const std::size_t n = matrix.size();
  for (std::size_t i = 0; i < n; ++i) {
    out << csv::escape(matrix.labels[i]);
    for (std::size_t j = 0; j < n; ++j) {
      out << ',' << csv::format_double(matrix.at(i, j));
    }
    out << '\n';
  }
}

}  // namespace ownerscope::stats
