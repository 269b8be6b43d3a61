// Acceptance suite: runs every shipping criterion end to end and prints one
// PASS/FAIL line per criterion. Exits non-zero if any criterion fails.
//
//   acceptance --cli <ownerscope binary> --data <fixture dir> --work <scratch dir>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ownerscope/analysis/dataset.hpp"
#include "ownerscope/analysis/reports.hpp"
#include "ownerscope/analysis/sweeps.hpp"
#include "ownerscope/commit_log.hpp"
#include "ownerscope/error.hpp"
#include "ownerscope/ledger.hpp"
#include "ownerscope/metric_row.hpp"
#include "ownerscope/records_io.hpp"
#include "ownerscope/stages.hpp"
#include "ownerscope/stats/correlation.hpp"
#include "ownerscope/stats/ols.hpp"
#include "../support.hpp"

using namespace ownerscope;
namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

struct Harness {
  std::string cli;
  fs::path data;
  fs::path work;
  int failures = 0;

  void report(int criterion, const std::string& name, bool ok,
              const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << criterion << ". " << name;
    if (!ok && !detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << std::endl;
    if (!ok) ++failures;
  }

  int run_cli(const std::string& args, const std::string& log_name) {
    const fs::path log = work / (log_name + ".log");
    const std::string command =
        "\"" + cli + "\" " + args + " > \"" + log.string() + "\" 2>&1";
    return std::system(command.c_str());
  }
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// --- criterion 1: statistics oracle equivalence ----------------------------

void criterion_1(Harness& h) {
  const auto start = Clock::now();
  std::mt19937_64 gen(20240801);
  std::string detail;
  bool ok = true;
  for (int trial = 0; trial < 500 && ok; ++trial) {
    const std::size_t n = 2 + gen() % 199;
    const int ties = trial % 2 ? 12 : 0;
    const auto x = testsupport::random_vector(gen, n, ties);
    const auto y = testsupport::random_vector(gen, n, ties);

    const auto tau = stats::kendall(x, y);
    if (tau && *tau != testsupport::kendall_bruteforce(x, y)) {
      ok = false;
      detail = "kendall mismatch at trial " + std::to_string(trial);
    }
    const auto rho = stats::spearman(x, y);
    const auto via_ranks =
        stats::pearson(stats::rank_with_ties(x), stats::rank_with_ties(y));
    if (rho.has_value() != via_ranks.has_value() ||
        (rho && std::abs(*rho - *via_ranks) > 1e-12)) {
      ok = false;
      detail = "spearman/rank mismatch at trial " + std::to_string(trial);
    }
  }
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int trial = 0; trial < 500 && ok; ++trial) {
    const std::size_t n = 10 + gen() % 190;
    const std::size_t p = 1 + gen() % 5;
    std::vector<std::vector<double>> predictors(p);
    for (auto& column : predictors) column = testsupport::random_vector(gen, n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = noise(gen);
      for (std::size_t j = 0; j < p; ++j) y[i] += (1.0 + 0.5 * j) * predictors[j][i];
    }
    const auto fit = stats::ols_fit(predictors, y);
    const auto oracle = testsupport::ols_normal_equations(predictors, y);
    for (std::size_t j = 0; j < oracle.size(); ++j) {
      if (std::abs(fit.coefficients[j] - oracle[j]) > 1e-9) {
        ok = false;
        detail = "ols mismatch at trial " + std::to_string(trial);
        break;
      }
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 30.0) {
    ok = false;
    detail = "runtime " + std::to_string(elapsed) + "s";
  }
  h.report(1, "statistics oracle equivalence (500 seeded instances, < 30 s)", ok, detail);
}

// --- criterion 2: stage boundary table --------------------------------------

void criterion_2(Harness& h) {
  using metrics::OssStageLabel;
  using metrics::TimeStageLabel;
  bool ok = true;
  std::string detail;
  const double eps = 1e-9;
  const std::pair<double, TimeStageLabel> time_cases[] = {
      {0.0, TimeStageLabel::T1},         {7.0, TimeStageLabel::T1},
      {7.0 + eps, TimeStageLabel::T2},   {90.0, TimeStageLabel::T2},
      {90.0 + eps, TimeStageLabel::T3},  {270.0, TimeStageLabel::T3},
      {270.0 + eps, TimeStageLabel::T4}, {1095.0 - eps, TimeStageLabel::T4},
      {1095.0, TimeStageLabel::T5},
  };
  for (const auto& [days, expected] : time_cases) {
    if (metrics::time_stage(days).label != expected) {
      ok = false;
      detail = "time_stage(" + std::to_string(days) + ")";
    }
  }

  constexpr std::int64_t day = 86400;
  auto classify = [&](std::int64_t elapsed_days, std::vector<std::int64_t> release_days) {
    metrics::ReleaseTimeline timeline;
    timeline.origin = 0;
    timeline.evaluation = elapsed_days * day;
    for (std::size_t i = 0; i < release_days.size(); ++i) {
      timeline.releases.push_back({"r" + std::to_string(i), release_days[i] * day});
    }
    return metrics::oss_stage(timeline).label;
  };
  const struct {
    const char* name;
    OssStageLabel expected;
    OssStageLabel actual;
  } oss_cases[] = {
      // the six labeled stage examples
      {"TI: no release, abandoned", OssStageLabel::TI, classify(400, {})},
      {"II: no release, young", OssStageLabel::II, classify(200, {})},
      {"SG: 5 releases, growth 300d", OssStageLabel::SG, classify(400, {10, 60, 150, 250, 310})},
      {"TG: 1 release, stale 400d", OssStageLabel::TG, classify(500, {100})},
      {"IG: 2 releases inside a year", OssStageLabel::IG, classify(200, {100, 150})},
      {"SI: residual initiation", OssStageLabel::SI, classify(400, {200, 300})},
      // adversarial precedence overlaps
      {"SG beats SI at N=3", OssStageLabel::SG, classify(400, {10, 100, 250})},
      {"IG via short growth at N=3", OssStageLabel::IG, classify(400, {10, 60, 120})},
      {"SI at exactly 180d growth", OssStageLabel::SI, classify(400, {10, 100, 190})},
      {"TG beats IG when both match", OssStageLabel::TG, classify(370, {2})},
      {"II at exactly one year", OssStageLabel::II, classify(365, {})},
      {"SI at exactly one year elapsed", OssStageLabel::SI, classify(365, {100, 200})},
  };
  for (const auto& c : oss_cases) {
    if (c.actual != c.expected) {
      ok = false;
      detail = c.name;
    }
  }
  h.report(2, "stage boundary table (time buckets + lifecycle precedence)", ok, detail);
}

// --- criterion 3: ownership properties ---------------------------------------

void criterion_3(Harness& h) {
  const auto start = Clock::now();
  std::mt19937_64 gen(20240802);
  bool ok = true;
  std::string detail;
  for (int trial = 0; trial < 1000 && ok; ++trial) {
    metrics::ContributionLedger ledger;
    const int n_authors = 1 + static_cast<int>(gen() % 25);
    for (int a = 0; a < n_authors; ++a) {
      const std::int64_t count = 1 + static_cast<std::int64_t>(gen() % 40);
      ledger.counts["dev" + std::to_string(a)] = count;
      ledger.total += count;
    }
    double share_sum = 0.0;
    for (const auto& [author, count] : ledger.counts) {
      share_sum += static_cast<double>(count) / static_cast<double>(ledger.total);
    }
    if (std::abs(share_sum - 1.0) > 1e-9) {
      ok = false;
      detail = "share sum " + std::to_string(share_sum);
    }
    const double t_low = 0.02 + (gen() % 40) / 100.0;
    const double t_high = t_low + 0.01 + (gen() % 40) / 100.0;
    const auto low = metrics::ownership_profile(ledger, t_low);
    const auto high = metrics::ownership_profile(ledger, std::min(t_high, 0.99));
    if (low.n_minor > high.n_minor) {
      ok = false;
      detail = "n_minor not monotone in threshold";
    }
    if (low.ownership < 1.0 / static_cast<double>(low.n_contributors) - 1e-15) {
      ok = false;
      detail = "ownership below 1/n";
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 10.0) {
    ok = false;
    detail = "runtime " + std::to_string(elapsed) + "s";
  }
  h.report(3, "ownership properties (1000 randomized ledgers, < 10 s)", ok, detail);
}

// --- corpus loading shared by criteria 4 and 5 -------------------------------

struct Corpus {
  std::vector<CommitRecord> commits;
  std::vector<ReleaseRecord> releases;
  std::vector<VulnerabilityRecord> vulns;
  metrics::MetricsTable table;
};

Corpus load_corpus(const Harness& h) {
  Corpus corpus;
  corpus.commits = ingest::parse_commit_log(ingest::read_file((h.data / "gitlog.txt").string()));
  corpus.releases = ingest::load_release_list((h.data / "releases.csv").string());
  corpus.vulns = ingest::load_vulnerability_records((h.data / "vulns.jsonl").string());
  corpus.table = metrics::build_metrics_table(corpus.commits, corpus.releases,
                                              corpus.vulns, {});
  return corpus;
}

void criterion_4(Harness& h) {
  const auto start = Clock::now();
  bool ok = true;
  std::string detail;
  try {
    const auto corpus = load_corpus(h);
    const json truth = json::parse(slurp(h.data / "ground_truth.json"));

    // pipeline rows must reproduce the generator's independent bookkeeping
    for (const auto& row : corpus.table.rows) {
      if (row.is_defective != 1) continue;
      const auto& expected = truth.at("files").at(row.component);
      auto close = [](double a, double b) { return std::abs(a - b) <= 1e-9; };
      if (!close(row.ownership, expected.at("ownership").get<double>()) ||
          row.n_contributors != expected.at("n_contributors").get<std::int64_t>() ||
          row.n_minor != expected.at("n_minor").get<std::int64_t>() ||
          !close(row.per_minor, expected.at("per_minor").get<double>()) ||
          !close(row.age, expected.at("age_days").get<double>()) ||
          !close(row.days_difference, expected.at("days_difference").get<double>()) ||
          row.time_stage_aged_numeric !=
              expected.at("time_stage_aged_numeric").get<double>() ||
          row.oss_stage_aged_numeric !=
              expected.at("oss_stage_aged_numeric").get<double>() ||
          row.file_size != expected.at("file_size").get<std::int64_t>() ||
          row.code_churn != expected.at("code_churn").get<std::int64_t>() ||
          row.release_amounts != expected.at("release_amounts").get<std::int64_t>() ||
          row.release_amounts_aged !=
              expected.at("release_amounts_aged").get<std::int64_t>()) {
        ok = false;
        detail = "ground-truth mismatch for " + row.component;
      }
    }
    if (corpus.table.exclusions.total() != 0) {
      ok = false;
      detail = "unexpected exclusions";
    }

    // sign reproduction on the staged report
    const auto staged = analysis::staged_correlation_report(corpus.table.rows);
    const auto& coefficients = staged.targets.at(0).coefficients;
    auto spearman_of = [&](const std::string& metric) {
      for (std::size_t m = 0; m < staged.metrics.size(); ++m) {
        if (staged.metrics[m] == metric) return coefficients[m][1].value();
      }
      throw std::runtime_error("metric missing: " + metric);
    };
    if (!(spearman_of("ownership") <= -0.5)) {
      ok = false;
      detail = "spearman(ownership, stage) > -0.5";
    }
    if (!(spearman_of("per_minor") >= 0.5)) {
      ok = false;
      detail = "spearman(per_minor, stage) < 0.5";
    }
    if (!(spearman_of("age") >= 0.9)) {
      ok = false;
      detail = "spearman(age, stage) < 0.9";
    }
    // sign pattern of the remaining key rows
    if (!(spearman_of("oss_stage_aged_numeric") < 0.0) ||
        !(spearman_of("n_contributors") > 0.0) || !(spearman_of("n_minor") > 0.0)) {
      ok = false;
      detail = "sign pattern violated";
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 10.0) {
    ok = false;
    detail = "runtime " + std::to_string(elapsed) + "s";
  }
  h.report(4, "synthetic-corpus sign reproduction vs generator ground truth (< 10 s)",
           ok, detail);
}

void criterion_5(Harness& h) {
  bool ok = true;
  std::string detail;
  try {
    const auto corpus = load_corpus(h);
    std::vector<metrics::MetricRow> vulnerable, pool;
    for (const auto& row : corpus.table.rows) {
      (row.is_defective == 1 ? vulnerable : pool).push_back(row);
    }
    analysis::RunConfig cfg;  // seed 42, 999 permutations

    const auto ratio = analysis::ratio_sweep(vulnerable, pool, cfg);
    for (const auto& pair : ratio.pairwise) {
      if (!(pair.mantel_p > 0.5)) {
        ok = false;
        detail = "ratio mantel_p " + std::to_string(pair.mantel_p);
      }
    }

    analysis::AnalysisInputs inputs;
    inputs.commits = corpus.commits;
    inputs.releases = corpus.releases;
    inputs.vulns = corpus.vulns;
    inputs.cfg = cfg;
    const auto thresholds = analysis::threshold_sweep(inputs);
    for (const auto& pair : thresholds.pairwise) {
      if (pair.a == 0.10 || pair.b == 0.10) {
        if (!(pair.ks_p > 0.05)) {
          ok = false;
          detail = "threshold ks_p " + std::to_string(pair.ks_p);
        }
      }
    }

    const auto locality = analysis::locality_check(inputs);
    if (locality.mantel_r != 1.0) {
      ok = false;
      detail = "locality mantel_r " + std::to_string(locality.mantel_r);
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  h.report(5, "distortion-check stability (ratio / threshold / locality)", ok, detail);
}

// --- criterion 6: CLI determinism --------------------------------------------

void criterion_6(Harness& h) {
  bool ok = true;
  std::string detail;
  const auto data = h.data.string();
  const auto work = h.work.string();
  auto path = [&](const std::string& name) { return work + "/" + name; };

  struct Step {
    std::string args;
    std::string name;
  };
  const std::vector<Step> prepare = {
      {"ingest history --log \"" + data + "/gitlog.txt\" -o " + path("commits.jsonl"),
       "ingest_history"},
      {"ingest releases --file \"" + data + "/releases.csv\" -o " + path("releases.csv"),
       "ingest_releases"},
      {"ingest vulns --file \"" + data + "/vulns.jsonl\" -o " + path("vulns.jsonl"),
       "ingest_vulns"},
      {"metrics --commits " + path("commits.jsonl") + " --releases " + path("releases.csv") +
           " --vulns " + path("vulns.jsonl") + " -o " + path("metrics.csv"),
       "metrics"},
  };
  for (const auto& step : prepare) {
    if (h.run_cli(step.args, step.name) != 0) {
      h.report(6, "analyze reruns are byte-identical", false, step.name + " failed");
      return;
    }
  }

  const std::vector<Step> analyses = {
      {"analyze correlate --target is-defective --metrics " + path("metrics.csv") +
           " --seed 42 -o ",
       "direct"},
      {"analyze correlate --target time-stage --metrics " + path("metrics.csv") +
           " --seed 42 -o ",
       "staged"},
      {"analyze correlate --target severity --metrics " + path("metrics.csv") +
           " --seed 42 -o ",
       "severity"},
      {"analyze regress --metrics " + path("metrics.csv") + " --seed 42 -o ", "regress"},
      {"analyze sweep --axis ratio --metrics " + path("metrics.csv") + " --seed 42 -o ",
       "sweep_ratio"},
      {"analyze sweep --axis threshold --commits " + path("commits.jsonl") +
           " --releases " + path("releases.csv") + " --vulns " + path("vulns.jsonl") +
           " --seed 42 -o ",
       "sweep_threshold"},
      {"analyze sweep --axis locality --commits " + path("commits.jsonl") +
           " --releases " + path("releases.csv") + " --vulns " + path("vulns.jsonl") +
           " --seed 42 -o ",
       "sweep_locality"},
  };
  for (const auto& step : analyses) {
    const std::string first = path(step.name + "_1.json");
    const std::string second = path(step.name + "_2.json");
    if (h.run_cli(step.args + first, step.name + "_1") != 0 ||
        h.run_cli(step.args + second, step.name + "_2") != 0) {
      ok = false;
      detail = step.name + " exited non-zero";
      break;
    }
    const auto bytes_1 = slurp(first);
    if (bytes_1.empty() || bytes_1 != slurp(second)) {
      ok = false;
      detail = step.name + " bytes differ";
      break;
    }
  }
  h.report(6, "analyze reruns are byte-identical for fixed inputs and seed", ok, detail);
}

// --- criterion 7: regression ledger -------------------------------------------

void criterion_7(Harness& h) {
  bool ok = true;
  std::string detail;
  const auto& models = analysis::robustness_models();
  const std::vector<std::string> expected_names = {
      "days_difference",        "days_difference + classic",
      "age",                    "age + classic",
      "per_minor",              "per_minor + classic",
      "oss_stage_aged",         "oss_stage_aged + classic",
      "per_minor + oss_stage_aged", "days_difference + minor"};
  if (models.size() != 10) {
    ok = false;
    detail = "model count " + std::to_string(models.size());
  } else {
    for (std::size_t i = 0; i < 10; ++i) {
      if (models[i].name != expected_names[i]) {
        ok = false;
        detail = "model " + std::to_string(i) + " named " + models[i].name;
      }
    }
  }

  std::mt19937_64 gen(20240803);
  std::normal_distribution<double> noise(0.0, 0.01);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<metrics::MetricRow> table;
  for (int i = 0; i < 500; ++i) {
    metrics::MetricRow row;
    row.component = "f" + std::to_string(i);
    row.is_defective = static_cast<int>(gen() % 2);
    row.severity = 10.0 * uniform(gen);
    row.ownership = 0.2 + 0.8 * uniform(gen);
    row.n_contributors = 1 + static_cast<std::int64_t>(gen() % 20);
    row.n_minor = static_cast<std::int64_t>(gen() % 10);
    row.per_minor = uniform(gen);
    row.days_difference = 1000.0 * uniform(gen);
    row.age = row.days_difference * uniform(gen);
    row.oss_stage_aged_numeric = 1 + static_cast<int>(gen() % 6);
    row.file_size = 10 + static_cast<std::int64_t>(gen() % 5000);
    row.code_churn = row.file_size + static_cast<std::int64_t>(gen() % 5000);
    row.churn_rate = static_cast<double>(row.code_churn) / static_cast<double>(row.file_size);
    row.is_post_release = 1;
    row.release_amounts = static_cast<std::int64_t>(gen() % 20);
    row.release_amounts_aged = row.release_amounts / 2;
    row.time_stage_aged_numeric = 2.0 * row.per_minor + noise(gen);
    table.push_back(row);
  }
  const auto fits = analysis::regression_suite(table);
  if (fits.size() != 10) {
    ok = false;
    detail = "suite emitted " + std::to_string(fits.size());
  } else {
    const auto& per_minor = fits[4];
    if (!per_minor.result || per_minor.spec.name != "per_minor") {
      ok = false;
      detail = "per_minor model missing";
    } else {
      if (std::abs(*per_minor.focal_coefficient - 2.0) > 0.05) {
        ok = false;
        detail = "coefficient " + std::to_string(*per_minor.focal_coefficient);
      }
      if (!(per_minor.result->adj_r_squared > 0.95)) {
        ok = false;
        detail = "adj R^2 " + std::to_string(per_minor.result->adj_r_squared);
      }
    }
  }
  h.report(7, "regression ledger: 10 models; per_minor fixture recovers 2.0 +/- 0.05",
           ok, detail);
}

// --- criterion 8: end-to-end pipeline budget -----------------------------------

void criterion_8(Harness& h) {
  const auto start = Clock::now();
  bool ok = true;
  std::string detail;
  const auto data = h.data.string();
  const fs::path dir = h.work / "e2e";
  fs::create_directories(dir);
  auto path = [&](const std::string& name) { return (dir / name).string(); };

  const std::vector<std::pair<std::string, std::string>> steps = {
      {"ingest history --log \"" + data + "/gitlog.txt\" -o " + path("commits.jsonl"),
       "e2e_history"},
      {"ingest releases --file \"" + data + "/releases.csv\" -o " + path("releases.csv"),
       "e2e_releases"},
      {"ingest vulns --file \"" + data + "/vulns.jsonl\" -o " + path("vulns.jsonl"),
       "e2e_vulns"},
      {"metrics --commits " + path("commits.jsonl") + " --releases " + path("releases.csv") +
           " --vulns " + path("vulns.jsonl") + " -o " + path("metrics.csv"),
       "e2e_metrics"},
      {"analyze correlate --target is-defective --metrics " + path("metrics.csv") +
           " -o " + path("direct.json"),
       "e2e_direct"},
      {"analyze correlate --target time-stage --metrics " + path("metrics.csv") + " -o " +
           path("staged.json"),
       "e2e_staged"},
      {"analyze correlate --target severity --metrics " + path("metrics.csv") + " -o " +
           path("severity.json"),
       "e2e_severity"},
      {"analyze regress --metrics " + path("metrics.csv") + " -o " + path("regress.json"),
       "e2e_regress"},
      {"analyze sweep --axis ratio --metrics " + path("metrics.csv") + " -o " +
           path("ratio.json"),
       "e2e_ratio"},
      {"analyze sweep --axis threshold --commits " + path("commits.jsonl") +
           " --releases " + path("releases.csv") + " --vulns " + path("vulns.jsonl") +
           " -o " + path("threshold.json"),
       "e2e_threshold"},
      {"analyze sweep --axis locality --commits " + path("commits.jsonl") +
           " --releases " + path("releases.csv") + " --vulns " + path("vulns.jsonl") +
           " -o " + path("locality.json"),
       "e2e_locality"},
  };
  for (const auto& [args, name] : steps) {
    if (h.run_cli(args, name) != 0) {
      ok = false;
      detail = name + " exited non-zero";
      break;
    }
  }

  // --help must exit 0 on every subcommand
  const std::vector<std::string> helps = {
      "--help",          "ingest --help",           "ingest history --help",
      "ingest releases --help", "ingest vulns --help", "metrics --help",
      "analyze --help",  "analyze correlate --help", "analyze regress --help",
      "analyze sweep --help"};
  for (const auto& help : helps) {
    if (h.run_cli(help, "help") != 0) {
      ok = false;
      detail = "'" + help + "' exited non-zero";
    }
  }

  const double elapsed = seconds_since(start);
  if (elapsed >= 60.0) {
    ok = false;
    detail = "runtime " + std::to_string(elapsed) + "s";
  }
  h.report(8, "end-to-end pipeline on the corpus completes (< 60 s)", ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
  Harness h;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--cli") h.cli = argv[i + 1];
    if (flag == "--data") h.data = argv[i + 1];
    if (flag == "--work") h.work = argv[i + 1];
  }
  if (h.cli.empty() || h.data.empty() || h.work.empty()) {
    std::cerr << "usage: acceptance --cli <binary> --data <fixture dir> --work <dir>\n";
    return 2;
  }
  std::error_code ec;
  fs::remove_all(h.work, ec);
  fs::create_directories(h.work);

  criterion_1(h);
  criterion_2(h);
  criterion_3(h);
  criterion_4(h);
  criterion_5(h);
  criterion_6(h);
  criterion_7(h);
  criterion_8(h);

  if (h.failures == 0) {
    std::cout << "all acceptance criteria passed" << std::endl;
    return 0;
  }
  std::cout << h.failures << " criterion(s) failed" << std::endl;
  return 1;
}
