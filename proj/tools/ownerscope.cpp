// ownerscope: code-ownership, classic, and time/release metrics over
// version-control histories joined with vulnerability records, plus the
// correlation / regression / distortion-sweep analyses built on them.

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ownerscope/analysis/config.hpp"
#include "ownerscope/analysis/dataset.hpp"
#include "ownerscope/analysis/render.hpp"
#include "ownerscope/analysis/reports.hpp"
#include "ownerscope/analysis/sweeps.hpp"
#include "ownerscope/commit_log.hpp"
#include "ownerscope/csv.hpp"
#include "ownerscope/error.hpp"
#include "ownerscope/fetch.hpp"
#include "ownerscope/metric_row.hpp"
#include "ownerscope/records_io.hpp"
#include "ownerscope/stats/matrix.hpp"

namespace {

using ownerscope::Error;
using ownerscope::ErrorKind;
namespace analysis = ownerscope::analysis;
namespace ingest = ownerscope::ingest;
namespace metrics = ownerscope::metrics;
namespace stats = ownerscope::stats;

struct CliState {
  analysis::RunConfig cfg;
  bool json_errors = false;
  std::string ratio_reading = "odds";
  std::string pairs = "all";

  void finalize() {
    cfg.ratio_reading = ratio_reading == "fraction" ? analysis::RatioReading::Fraction
                                                    : analysis::RatioReading::Odds;
    cfg.pairs = pairs == "consecutive" ? analysis::PairSelection::Consecutive
                                       : analysis::PairSelection::All;
  }
};

void add_common_options(CLI::App* cmd, CliState& state) {
  cmd->add_option("--threshold", state.cfg.threshold,
                  "Minor-contributor threshold in (0,1)")
      ->envname("OWNERSCOPE_THRESHOLD")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9))
      ->capture_default_str();
  cmd->add_option("--seed", state.cfg.seed, "Seed for all sampling and permutations")
      ->envname("OWNERSCOPE_SEED")
      ->capture_default_str();
  cmd->add_option("--ratio", state.cfg.ratio,
                  "Vulnerable:non-vulnerable mix in (0,1]; 1.0 is balanced")
      ->envname("OWNERSCOPE_RATIO")
      ->check(CLI::Range(1e-9, 1.0))
      ->capture_default_str();
  cmd->add_option("--lambda", state.cfg.lambda, "Exponential-decay rate (> 0)")
      ->envname("OWNERSCOPE_LAMBDA")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--permutations", state.cfg.permutations,
                  "Mantel permutation count")
      ->envname("OWNERSCOPE_PERMUTATIONS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--month-days", state.cfg.calendar.month_days,
                  "Days per month for stage boundaries")
      ->envname("OWNERSCOPE_MONTH_DAYS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--year-days", state.cfg.calendar.year_days,
                  "Days per year for stage boundaries")
      ->envname("OWNERSCOPE_YEAR_DAYS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--jobs", state.cfg.jobs,
                  "Worker threads; never changes output bytes")
      ->envname("OWNERSCOPE_JOBS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--ratio-reading", state.ratio_reading,
                  "How the ratio maps to counts: odds (r:1) or fraction")
      ->envname("OWNERSCOPE_RATIO_READING")
      ->check(CLI::IsMember({"odds", "fraction"}))
      ->capture_default_str();
  cmd->add_option("--pairs", state.pairs,
                  "Matrix pairs entering sweep averages: all or consecutive")
      ->envname("OWNERSCOPE_PAIRS")
      ->check(CLI::IsMember({"all", "consecutive"}))
      ->capture_default_str();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    ownerscope::raise(ErrorKind::IoError, "cannot write '" + path + "'");
  }
  return out;
}

// JSON goes to the -o target ('-' = stdout); the aligned-text view goes to
// stdout unless stdout already carries the JSON.
void emit_report(const nlohmann::json& report,
                 const std::function<void(std::ostream&)>& text,
                 const std::string& out_path) {
  if (out_path == "-") {
    std::cout << report.dump(2) << '\n';
    return;
  }
  auto out = open_output(out_path);
  out << report.dump(2) << '\n';
  text(std::cout);
  std::cerr << "report written to " << out_path << '\n';
}

std::map<std::string, std::int64_t> load_size_overrides(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ownerscope::raise(ErrorKind::IoError, "cannot open '" + path + "'");
  }
  std::map<std::string, std::int64_t> sizes;
  std::string line;
  long line_no = 0;
  if (!std::getline(in, line)) {
    ownerscope::raise(ErrorKind::SchemaViolation, "missing 'path,size' header", 1);
  }
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "path,size") {
    ownerscope::raise(ErrorKind::SchemaViolation,
                      "sizes header must be 'path,size', got '" + line + "'", line_no);
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = ownerscope::csv::split_line(line, line_no);
    if (fields.size() != 2) {
      ownerscope::raise(ErrorKind::SchemaViolation, "expected 2 fields", line_no);
    }
    long long size = 0;
    if (!ownerscope::csv::parse_int(fields[1], size) || size < 0) {
      ownerscope::raise(ErrorKind::SchemaViolation,
                        "size must be a non-negative integer", line_no);
    }
    sizes[fields[0]] = size;
  }
  return sizes;
}

void split_rows(const std::vector<metrics::MetricRow>& rows,
                std::vector<metrics::MetricRow>& vulnerable,
                std::vector<metrics::MetricRow>& pool) {
  for (const auto& row : rows) {
    (row.is_defective == 1 ? vulnerable : pool).push_back(row);
  }
}

int run(int argc, char** argv) {
  CliState state;

  CLI::App app{"repository ownership and vulnerability analytics"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json-errors", state.json_errors,
               "Machine-readable error JSON on standard error")
      ->envname("OWNERSCOPE_JSON_ERRORS");

  // ---- ingest ----------------------------------------------------------
  auto* ingest_cmd = app.add_subcommand("ingest", "Parse raw inputs into canonical files");
  ingest_cmd->require_subcommand(1);

  std::string log_path, out_path = "-";
  auto* history = ingest_cmd->add_subcommand("history", "Parse a commit log");
  history->add_option("--log", log_path, "Commit log file produced by the documented invocation")
      ->envname("OWNERSCOPE_LOG")
      ->required();
  history->add_option("-o,--output", out_path, "Output commits.jsonl ('-' = stdout)")
      ->envname("OWNERSCOPE_OUTPUT");
  history->callback([&] {
    const auto commits = ingest::parse_commit_log(ingest::read_file(log_path));
    if (out_path == "-") {
      ingest::save_commits_jsonl(std::cout, commits);
    } else {
      auto out = open_output(out_path);
      ingest::save_commits_jsonl(out, commits);
      std::cerr << commits.size() << " commits written to " << out_path << '\n';
    }
  });

  std::string releases_path;
  auto* releases_cmd = ingest_cmd->add_subcommand("releases", "Validate a release CSV");
  releases_cmd->add_option("--file", releases_path, "CSV with header name,timestamp")
      ->envname("OWNERSCOPE_RELEASES_FILE")
      ->required();
  releases_cmd->add_option("-o,--output", out_path, "Output releases.csv ('-' = stdout)")
      ->envname("OWNERSCOPE_OUTPUT");
  releases_cmd->callback([&] {
    const auto releases = ingest::load_release_list(releases_path);
    if (out_path == "-") {
      ingest::save_release_list(std::cout, releases);
    } else {
      auto out = open_output(out_path);
      ingest::save_release_list(out, releases);
      std::cerr << releases.size() << " releases written to " << out_path << '\n';
    }
  });

  std::string vulns_path, project, endpoint;
  std::string token;
  bool do_fetch = false;
  auto* vulns_cmd = ingest_cmd->add_subcommand("vulns", "Load or fetch advisories");
  vulns_cmd->add_option("--file", vulns_path, "Vulnerability JSON Lines file")
      ->envname("OWNERSCOPE_VULNS_FILE");
  vulns_cmd->add_flag("--fetch", do_fetch, "Fetch advisories over HTTP instead");
  vulns_cmd->add_option("--project", project, "Project slug for --fetch")
      ->envname("OWNERSCOPE_PROJECT");
  vulns_cmd->add_option("--endpoint", endpoint, "Advisory endpoint URL for --fetch")
      ->envname("OWNERSCOPE_ENDPOINT");
  vulns_cmd->add_option("--token", token, "Bearer token for --fetch")
      ->envname("OWNERSCOPE_TOKEN");
  vulns_cmd->add_option("-o,--output", out_path, "Output vulns.jsonl ('-' = stdout)")
      ->envname("OWNERSCOPE_OUTPUT");
  vulns_cmd->callback([&] {
    std::vector<ownerscope::VulnerabilityRecord> records;
    if (do_fetch) {
      if (project.empty() || endpoint.empty()) {
        ownerscope::raise(ErrorKind::SchemaViolation,
                          "--fetch requires --project and --endpoint");
      }
      const auto outcome = ingest::fetch_advisories(
          project, endpoint, token.empty() ? std::nullopt : std::make_optional(token));
      if (outcome.dropped > 0) {
        std::cerr << "warning: dropped " << outcome.dropped
                  << " advisories without a file list\n";
      }
      records = outcome.records;
    } else if (!vulns_path.empty()) {
      records = ingest::load_vulnerability_records(vulns_path);
    } else {
      ownerscope::raise(ErrorKind::SchemaViolation, "need --file or --fetch");
    }
    if (out_path == "-") {
      ingest::save_vulnerability_records(std::cout, records);
    } else {
      auto out = open_output(out_path);
      ingest::save_vulnerability_records(out, records);
      std::cerr << records.size() << " records written to " << out_path << '\n';
    }
  });

  // ---- metrics ---------------------------------------------------------
  std::string commits_path, metrics_releases, metrics_vulns, sizes_path, aggregate;
  auto* metrics_cmd = app.add_subcommand("metrics", "Compute the per-component metric table");
  metrics_cmd->add_option("--commits", commits_path, "commits.jsonl")
      ->envname("OWNERSCOPE_COMMITS")
      ->required();
  metrics_cmd->add_option("--releases", metrics_releases, "releases.csv")
      ->envname("OWNERSCOPE_RELEASES")
      ->required();
  metrics_cmd->add_option("--vulns", metrics_vulns, "vulns.jsonl")
      ->envname("OWNERSCOPE_VULNS")
      ->required();
  metrics_cmd->add_option("--sizes", sizes_path, "Optional path,size CSV of exact line counts")
      ->envname("OWNERSCOPE_SIZES");
  metrics_cmd->add_option("--aggregate", aggregate,
                          "'repo' folds the whole repository into one component")
      ->envname("OWNERSCOPE_AGGREGATE")
      ->check(CLI::IsMember({"repo"}));
  metrics_cmd->add_option("-o,--output", out_path, "Output metrics.csv ('-' = stdout)")
      ->envname("OWNERSCOPE_OUTPUT");
  add_common_options(metrics_cmd, state);
  metrics_cmd->callback([&] {
    state.finalize();
    const auto commits = ingest::load_commits_jsonl(commits_path);
    const auto releases = ingest::load_release_list(metrics_releases);
    const auto vulns = ingest::load_vulnerability_records(metrics_vulns);
    metrics::TableOptions options;
    options.threshold = state.cfg.threshold;
    options.calendar = state.cfg.calendar;
    options.jobs = state.cfg.jobs;
    options.aggregate_repo = aggregate == "repo";
    if (!sizes_path.empty()) options.size_overrides = load_size_overrides(sizes_path);
    const auto table = metrics::build_metrics_table(commits, releases, vulns, options);
    if (out_path == "-") {
      metrics::write_metric_csv(std::cout, table.rows);
    } else {
      auto out = open_output(out_path);
      metrics::write_metric_csv(out, table.rows);
      std::cerr << table.rows.size() << " rows written to " << out_path << '\n';
    }
    std::cerr << "excluded " << table.exclusions.total() << " rows (component_unknown="
              << table.exclusions.component_unknown
              << ", negative_span=" << table.exclusions.negative_span << ")\n";
    for (const auto& note : table.exclusions.notes) {
      std::cerr << "  " << note << '\n';
    }
  });

  // ---- analyze ---------------------------------------------------------
  auto* analyze = app.add_subcommand("analyze", "Correlation, regression, and sweep reports");
  analyze->require_subcommand(1);

  std::string metrics_path, target;
  auto* correlate = analyze->add_subcommand("correlate", "Metric-vs-target correlations");
  correlate->add_option("--metrics", metrics_path, "metrics.csv")
      ->envname("OWNERSCOPE_METRICS")
      ->required();
  correlate
      ->add_option("--target", target, "is-defective, time-stage, or severity")
      ->envname("OWNERSCOPE_TARGET")
      ->required()
      ->check(CLI::IsMember({"is-defective", "time-stage", "severity"}));
  correlate->add_option("-o,--output", out_path, "Report JSON ('-' = stdout)")
      ->envname("OWNERSCOPE_OUTPUT");
  add_common_options(correlate, state);
  correlate->callback([&] {
    state.finalize();
    const auto rows = metrics::read_metric_csv(metrics_path);
    analysis::CorrelationReport report;
    if (target == "is-defective") {
      std::vector<metrics::MetricRow> vulnerable, pool;
      split_rows(rows, vulnerable, pool);
      if (vulnerable.empty()) {
        ownerscope::raise(ErrorKind::SingleClass, "metrics table has no vulnerable rows");
      }
      analysis::DatasetSpec spec;
      spec.ratio = state.cfg.ratio;
      spec.seed = state.cfg.seed;
      spec.threshold = state.cfg.threshold;
      spec.reading = state.cfg.ratio_reading;
      const auto table = analysis::build_dataset(vulnerable, pool, spec);
      report = analysis::direct_correlation_report(table);
    } else if (target == "time-stage") {
      report = analysis::staged_correlation_report(rows);
    } else {
      report = analysis::severity_correlation_report(rows);
    }
    emit_report(analysis::to_json(report),
                [&](std::ostream& out) { analysis::render_text(out, report); }, out_path);
  });

  auto* regress = analyze->add_subcommand("regress", "Fit the robustness model ledger");
  regress->add_option("--metrics", metrics_path, "metrics.csv")
      ->envname("OWNERSCOPE_METRICS")
      ->required();
  regress->add_option("-o,--output", out_path, "Report JSON ('-' = stdout)")
      ->envname("OWNERSCOPE_OUTPUT");
  add_common_options(regress, state);
  regress->callback([&] {
    state.finalize();
    const auto rows = metrics::read_metric_csv(metrics_path);
    std::vector<metrics::MetricRow> vulnerable, pool;
    split_rows(rows, vulnerable, pool);
    analysis::DatasetSpec spec;
    spec.ratio = state.cfg.ratio;
    spec.seed = state.cfg.seed;
    spec.threshold = state.cfg.threshold;
    spec.reading = state.cfg.ratio_reading;
    const auto table = analysis::build_dataset(vulnerable, pool, spec);
    const auto fits = analysis::regression_suite(table);
    emit_report(analysis::to_json(fits),
                [&](std::ostream& out) { analysis::render_text(out, fits); }, out_path);
  });

  std::string axis, sweep_commits, sweep_releases, sweep_vulns, matrices_dir;
  auto* sweep = analyze->add_subcommand("sweep", "Distortion-robustness checks");
  sweep->add_option("--axis", axis, "ratio, threshold, or locality")
      ->envname("OWNERSCOPE_AXIS")
      ->required()
      ->check(CLI::IsMember({"ratio", "threshold", "locality"}));
  sweep->add_option("--metrics", metrics_path, "metrics.csv (used by the ratio axis)")
      ->envname("OWNERSCOPE_METRICS");
  sweep->add_option("--commits", sweep_commits, "commits.jsonl (threshold/locality axes)")
      ->envname("OWNERSCOPE_COMMITS");
  sweep->add_option("--releases", sweep_releases, "releases.csv (threshold/locality axes)")
      ->envname("OWNERSCOPE_RELEASES");
  sweep->add_option("--vulns", sweep_vulns, "vulns.jsonl (threshold/locality axes)")
      ->envname("OWNERSCOPE_VULNS");
  sweep->add_option("--matrices-dir", matrices_dir,
                    "Directory for per-setting heatmap CSVs")
      ->envname("OWNERSCOPE_MATRICES_DIR");
  sweep->add_option("-o,--output", out_path, "Report JSON ('-' = stdout)")
      ->envname("OWNERSCOPE_OUTPUT");
  add_common_options(sweep, state);
  sweep->callback([&] {
    state.finalize();
    auto write_matrices = [&](const analysis::SweepReport& report) {
      if (matrices_dir.empty()) return;
      for (const auto& point : report.points) {
        const std::string path = matrices_dir + "/" + report.axis + "_" +
                                 ownerscope::csv::format_double(point.setting) + ".csv";
        auto out = open_output(path);
        stats::write_matrix_csv(out, point.matrix);
      }
    };
    if (axis == "ratio") {
      if (metrics_path.empty()) {
        ownerscope::raise(ErrorKind::SchemaViolation, "--axis ratio requires --metrics");
      }
      const auto rows = metrics::read_metric_csv(metrics_path);
      std::vector<metrics::MetricRow> vulnerable, pool;
      split_rows(rows, vulnerable, pool);
      const auto report = analysis::ratio_sweep(vulnerable, pool, state.cfg);
      write_matrices(report);
      emit_report(analysis::to_json(report),
                  [&](std::ostream& out) { analysis::render_text(out, report); }, out_path);
      return;
    }
    if (sweep_commits.empty() || sweep_releases.empty() || sweep_vulns.empty()) {
      ownerscope::raise(
          ErrorKind::SchemaViolation,
          "--axis " + axis + " requires --commits, --releases, and --vulns (per-threshold "
          "minor recounts and group ledgers cannot be rebuilt from metrics.csv)");
    }
    analysis::AnalysisInputs inputs;
    inputs.commits = ingest::load_commits_jsonl(sweep_commits);
    inputs.releases = ingest::load_release_list(sweep_releases);
    inputs.vulns = ingest::load_vulnerability_records(sweep_vulns);
    inputs.cfg = state.cfg;
    if (axis == "threshold") {
      const auto report = analysis::threshold_sweep(inputs);
      write_matrices(report);
      emit_report(analysis::to_json(report),
                  [&](std::ostream& out) { analysis::render_text(out, report); }, out_path);
    } else {
      const auto result = analysis::locality_check(inputs);
      emit_report(analysis::to_json(result),
                  [&](std::ostream& out) { analysis::render_text(out, result); }, out_path);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    bool json_errors = false;
    for (int i = 1; i < argc; ++i) {
      if (std::string_view(argv[i]) == "--json-errors") json_errors = true;
    }
    if (json_errors) {
      nlohmann::json out;
      out["error"] = ownerscope::to_string(e.kind());
      out["detail"] = e.detail();
      if (e.line() > 0) out["line"] = e.line();
      std::cerr << out.dump() << '\n';
    } else {
      std::cerr << "error: " << e.what() << '\n';
    }
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
