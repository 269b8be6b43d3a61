#include "ownerscope/analysis/render.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

namespace ownerscope::analysis {
namespace {

using nlohmann::json;

json optional_number(const std::optional<double>& value) {
  if (!value) return nullptr;
  return *value;
}

json matrix_to_json(const stats::CorrelationMatrix& matrix) {
  json out;
  out["labels"] = matrix.labels;
  out["method"] = stats::to_string(matrix.method);
  json values = json::array();
  json defined = json::array();
  const std::size_t n = matrix.size();
  for (std::size_t i = 0; i < n; ++i) {
    json value_row = json::array();
    json defined_row = json::array();
    for (std::size_t j = 0; j < n; ++j) {
      value_row.push_back(matrix.at(i, j));
      defined_row.push_back(matrix.is_defined(i, j));
    }
    values.push_back(std::move(value_row));
    defined.push_back(std::move(defined_row));
  }
  out["values"] = std::move(values);
  out["defined"] = std::move(defined);
  return out;
}

void print_coefficient(std::ostream& out, const std::optional<double>& value) {
  if (value) {
    out << std::setw(10) << std::fixed << std::setprecision(4) << *value;
  } else {
    out << std::setw(10) << "n/a";
  }
}

}  // namespace

json to_json(const CorrelationReport& report) {
  json out;
  out["analysis"] = report.analysis;
  out["n"] = report.n;
  out["metrics"] = report.metrics;
  json targets = json::array();
  for (const TargetColumn& column : report.targets) {
    json target;
    target["target"] = column.target;
    json rows = json::array();
    for (std::size_t m = 0; m < report.metrics.size(); ++m) {
      json row;
      row["metric"] = report.metrics[m];
      row["pearson"] = optional_number(column.coefficients[m][0]);
      row["spearman"] = optional_number(column.coefficients[m][1]);
      row["kendall"] = optional_number(column.coefficients[m][2]);
      rows.push_back(std::move(row));
    }
    target["rows"] = std::move(rows);
    targets.push_back(std::move(target));
  }
  out["targets"] = std::move(targets);
  return out;
}

json to_json(const std::vector<ModelFit>& fits) {
  json out;
  out["analysis"] = "regression";
  json models = json::array();
  for (const ModelFit& fit : fits) {
    json model;
    model["name"] = fit.spec.name;
    model["target"] = fit.spec.target;
    model["predictors"] = fit.spec.predictors;
    model["focal"] = fit.spec.focal;
    if (fit.result) {
      model["adj_r_squared"] = fit.result->adj_r_squared;
      model["r_squared"] = fit.result->r_squared;
      // json serializes an infinite F (exact fit) as null
      model["f_statistic"] = fit.result->f_statistic;
      model["coefficients"] = fit.result->coefficients;
      model["n"] = fit.result->n;
      model["p"] = fit.result->p;
      model["focal_coefficient"] = optional_number(fit.focal_coefficient);
      model["error"] = nullptr;
    } else {
      model["error"] = fit.error;
    }
    models.push_back(std::move(model));
  }
  out["models"] = std::move(models);
  return out;
}

json to_json(const SweepReport& report) {
  json out;
  out["analysis"] = "sweep";
  out["axis"] = report.axis;
  json points = json::array();
  for (const SweepPoint& point : report.points) {
    json p;
    p["setting"] = point.setting;
    p["rows"] = point.rows;
    p["matrix"] = matrix_to_json(point.matrix);
    points.push_back(std::move(p));
  }
  out["points"] = std::move(points);
  json pairwise = json::array();
  for (const PairStats& pair : report.pairwise) {
    json p;
    p["a"] = pair.a;
    p["b"] = pair.b;
    p["frobenius"] = pair.frobenius;
    p["minmax"] = pair.minmax;
    p["expdecay"] = pair.expdecay;
    p["cosine"] = pair.cosine;
    p["ks_d"] = pair.ks_d;
    p["ks_p"] = pair.ks_p;
    p["mantel_r"] = pair.mantel_r;
    p["mantel_p"] = pair.mantel_p;
    p["mantel_p_greater"] = pair.mantel_p_greater;
    pairwise.push_back(std::move(p));
  }
  out["pairwise"] = std::move(pairwise);
  out["averages"] = {{"minmax", report.avg_minmax},
                     {"expdecay", report.avg_expdecay},
                     {"mantel_p", report.avg_mantel_p}};
  out["pairs"] = report.pairs == PairSelection::All ? "all" : "consecutive";
  out["minmax_degenerate"] = report.minmax_degenerate;
  if (report.preferred_setting) {
    out["preferred_setting"] = *report.preferred_setting;
  } else {
    out["preferred_setting"] = nullptr;
  }
  return out;
}

json to_json(const LocalityResult& result) {
  json out;
  out["analysis"] = "sweep";
  out["axis"] = "locality";
  out["mantel_r"] = result.mantel_r;
  out["mantel_p"] = result.mantel_p;
  out["mantel_p_greater"] = result.mantel_p_greater;
  out["n_files"] = result.n_files;
  out["n_groups"] = result.n_groups;
  return out;
}

void render_text(std::ostream& out, const CorrelationReport& report) {
  out << report.analysis << " correlation report (n = " << report.n << ")\n";
  for (const TargetColumn& column : report.targets) {
    out << "\nvs " << column.target << '\n';
    out << std::left << std::setw(26) << "metric" << std::right << std::setw(10)
        << "pearson" << std::setw(10) << "spearman" << std::setw(10) << "kendall" << '\n';
    for (std::size_t m = 0; m < report.metrics.size(); ++m) {
      out << std::left << std::setw(26) << report.metrics[m] << std::right;
      for (int method = 0; method < 3; ++method) {
        print_coefficient(out, column.coefficients[m][method]);
      }
      out << '\n';
    }
  }
  out.flush();
}

void render_text(std::ostream& out, const std::vector<ModelFit>& fits) {
  out << "regression robustness ledger (" << fits.size() << " models)\n\n";
  out << std::left << std::setw(30) << "model" << std::setw(26) << "target" << std::right
      << std::setw(10) << "adj_r2" << std::setw(14) << "f_stat" << std::setw(12)
      << "coef" << '\n';
  for (const ModelFit& fit : fits) {
    out << std::left << std::setw(30) << fit.spec.name << std::setw(26) << fit.spec.target
        << std::right;
    if (fit.result) {
      out << std::setw(10) << std::fixed << std::setprecision(4)
          << fit.result->adj_r_squared;
      if (std::isinf(fit.result->f_statistic)) {
        out << std::setw(14) << "inf";
      } else {
        out << std::setw(14) << std::scientific << std::setprecision(3)
            << fit.result->f_statistic << std::fixed;
      }
      out << std::setw(12) << std::setprecision(4) << *fit.focal_coefficient;
    } else {
      out << std::setw(10) << "-" << std::setw(14) << fit.error << std::setw(12) << "-";
    }
    out << '\n';
  }
  out.flush();
}

void render_text(std::ostream& out, const SweepReport& report) {
  out << report.axis << " sweep over " << report.points.size() << " settings\n\n";
  out << std::left << std::setw(8) << "a" << std::setw(8) << "b" << std::right
      << std::setw(11) << "frobenius" << std::setw(9) << "minmax" << std::setw(10)
      << "expdecay" << std::setw(9) << "cosine" << std::setw(8) << "ks_d" << std::setw(8)
      << "ks_p" << std::setw(10) << "mantel_r" << std::setw(10) << "mantel_p" << '\n';
  for (const PairStats& pair : report.pairwise) {
    out << std::left << std::setw(8) << pair.a << std::setw(8) << pair.b << std::right
        << std::fixed << std::setprecision(4) << std::setw(11) << pair.frobenius
        << std::setw(9) << pair.minmax << std::setw(10) << pair.expdecay << std::setw(9)
        << pair.cosine << std::setw(8) << std::setprecision(3) << pair.ks_d << std::setw(8)
        << pair.ks_p << std::setw(10) << pair.mantel_r << std::setw(10) << pair.mantel_p
        << '\n';
  }
  out << "\naverages: minmax " << std::setprecision(4) << report.avg_minmax
      << ", expdecay " << report.avg_expdecay << ", mantel_p " << report.avg_mantel_p
      << '\n';
  if (report.preferred_setting) {
    out << "preferred setting: " << *report.preferred_setting << '\n';
  }
  out.flush();
}

void render_text(std::ostream& out, const LocalityResult& result) {
  out << "locality clustering check: " << result.n_files << " file rows, "
      << result.n_groups << " groups\n"
      << std::fixed << std::setprecision(4) << "mantel_r " << result.mantel_r
      << ", mantel_p " << result.mantel_p << " (greater-sided "
      << result.mantel_p_greater << ")\n";
  out.flush();
}

}  // namespace ownerscope::analysis
