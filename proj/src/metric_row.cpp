#include "ownerscope/metric_row.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <variant>

#include "ownerscope/csv.hpp"
#include "ownerscope/error.hpp"
#include "ownerscope/parallel.hpp"

namespace ownerscope::metrics {
namespace {

constexpr const char* kRepoComponent = ".";

ContributionLedger repo_ledger_at(std::span<const CommitRecord> commits,
                                  std::int64_t cutoff) {
  ContributionLedger ledger;
  ledger.component = kRepoComponent;
  ledger.cutoff = cutoff;
  for (const CommitRecord& commit : commits) {
    if (commit.timestamp > cutoff) break;
    if (commit.is_merge()) continue;
    ++ledger.counts[commit.author];
    ++ledger.total;
  }
  if (ledger.total == 0) {
    raise(ErrorKind::ComponentUnknown, "no commits at or before cutoff");
  }
  return ledger;
}

ClassicMetrics repo_classic_at(std::span<const CommitRecord> commits,
                               std::int64_t cutoff) {
  std::int64_t added = 0, deleted = 0;
  for (const CommitRecord& commit : commits) {
    if (commit.timestamp > cutoff) break;
    if (commit.is_merge()) continue;
    for (const FileChange& change : commit.changes) {
      if (change.added) {
        added += *change.added;
        deleted += *change.deleted;
      }
    }
  }
  ClassicMetrics classic;
  classic.code_churn = added + deleted;
  classic.file_size = std::max<std::int64_t>(0, added - deleted);
  classic.churn_rate = static_cast<double>(classic.code_churn) /
                       static_cast<double>(std::max<std::int64_t>(classic.file_size, 1));
  return classic;
}

MetricRow finish_row(const VulnerabilityRecord* vuln, const std::string& component,
                     std::span<const ReleaseRecord> releases,
                     const OwnershipProfile& profile, ClassicMetrics classic,
                     std::int64_t project_start, std::int64_t first_touch,
                     std::int64_t event, const RowOptions& options) {
  MetricRow row;
  row.component = component;
  row.is_defective = vuln ? 1 : 0;
  if (vuln) {
    row.severity = vuln->severity;
    row.vuln_id = vuln->id;
    row.group_key = vuln->group_key;
  }
  row.ownership = profile.ownership;
  row.n_contributors = profile.n_contributors;
  row.n_minor = profile.n_minor;
  row.per_minor = profile.per_minor;

  if (const auto it = options.size_overrides.find(component);
      it != options.size_overrides.end()) {
    classic.file_size = it->second;
    classic.churn_rate =
        static_cast<double>(classic.code_churn) /
        static_cast<double>(std::max<std::int64_t>(classic.file_size, 1));
  }
  row.file_size = classic.file_size;
  row.code_churn = classic.code_churn;
  row.churn_rate = classic.churn_rate;

  row.days_difference = days_difference(project_start, event);
  row.age = component_age(first_touch, event);
  row.time_stage_aged_numeric = time_stage(row.age, options.calendar).numeric;

  ReleaseTimeline aged;
  aged.releases.assign(releases.begin(), releases.end());
  aged.origin = first_touch;
  aged.evaluation = event;
  row.oss_stage_aged_numeric = oss_stage(aged, options.calendar).numeric;

  const auto [pre, post] = pre_post_flags(event, releases);
  row.is_pre_release = pre;
  row.is_post_release = post;
  const auto [amounts, amounts_aged] =
      release_counts(releases, project_start, first_touch, event);
  row.release_amounts = amounts;
  row.release_amounts_aged = amounts_aged;

  row.event = event;
  row.first_touch = first_touch;
  return row;
}

}  // namespace

ComponentIndex ComponentIndex::build(std::span<const CommitRecord> commits) {
  ComponentIndex index;
  if (commits.empty()) {
    raise(ErrorKind::EmptyInput, "no commits to index");
  }
  index.project_start_ = commits.front().timestamp;
  index.snapshot_ = commits.back().timestamp;
  for (const CommitRecord& commit : commits) {
    if (commit.is_merge()) continue;
    for (const FileChange& change : commit.changes) {
      auto& list = index.touches_[change.path];
      if (list.empty() || list.back() != &commit) list.push_back(&commit);
    }
  }
  return index;
}

bool ComponentIndex::has_component(const std::string& component) const {
  return touches_.contains(component);
}

std::int64_t ComponentIndex::first_touch(const std::string& component) const {
  const auto it = touches_.find(component);
  if (it == touches_.end()) {
    raise(ErrorKind::ComponentUnknown, "component '" + component + "' not in history");
  }
  return it->second.front()->timestamp;
}

ContributionLedger ComponentIndex::ledger_at(const std::string& component,
                                             std::int64_t cutoff) const {
  const auto it = touches_.find(component);
  ContributionLedger ledger;
  ledger.component = component;
  ledger.cutoff = cutoff;
  if (it != touches_.end()) {
    for (const CommitRecord* commit : it->second) {
      if (commit->timestamp > cutoff) break;
      ++ledger.counts[commit->author];
      ++ledger.total;
    }
  }
  if (ledger.total == 0) {
    raise(ErrorKind::ComponentUnknown,
          "no commit touches '" + component + "' at or before cutoff");
  }
  return ledger;
}

ClassicMetrics ComponentIndex::classic_at(const std::string& component,
                                          std::int64_t cutoff) const {
  const auto it = touches_.find(component);
  if (it == touches_.end()) {
    raise(ErrorKind::ComponentUnknown, "component '" + component + "' not in history");
  }
  std::int64_t added = 0, deleted = 0;
  bool seen = false;
  for (const CommitRecord* commit : it->second) {
    if (commit->timestamp > cutoff) break;
    seen = true;
    for (const FileChange& change : commit->changes) {
      if (change.path != component || !change.added) continue;
      added += *change.added;
      deleted += *change.deleted;
    }
  }
  if (!seen) {
    raise(ErrorKind::ComponentUnknown,
          "no commit touches '" + component + "' at or before cutoff");
  }
  ClassicMetrics classic;
  classic.code_churn = added + deleted;
  classic.file_size = std::max<std::int64_t>(0, added - deleted);
  classic.churn_rate = static_cast<double>(classic.code_churn) /
                       static_cast<double>(std::max<std::int64_t>(classic.file_size, 1));
  return classic;
}

MetricRow assemble_metric_row(const ComponentIndex& index,
                              std::span<const ReleaseRecord> releases,
                              const VulnerabilityRecord* vuln,
                              const std::string& component, const RowOptions& options) {
  const std::int64_t event = vuln ? vuln->published : index.snapshot();
  if (event < index.project_start()) {
    raise(ErrorKind::NegativeSpan,
          "event for '" + component + "' precedes the project's first commit");
  }
  const auto ledger = index.ledger_at(component, event);
  const auto profile = ownership_profile(ledger, options.threshold);
  const auto classic = index.classic_at(component, event);
  return finish_row(vuln, component, releases, profile, classic, index.project_start(),
                    index.first_touch(component), event, options);
}

MetricRow assemble_metric_row(std::span<const CommitRecord> commits,
                              std::span<const ReleaseRecord> releases,
                              const VulnerabilityRecord* vuln,
                              const std::string& component, const RowOptions& options) {
  return assemble_metric_row(ComponentIndex::build(commits), releases, vuln, component,
                             options);
}

MetricsTable build_metrics_table(std::span<const CommitRecord> commits,
                                 std::span<const ReleaseRecord> releases,
                                 std::span<const VulnerabilityRecord> vulns,
                                 const TableOptions& options) {
  const ComponentIndex index = ComponentIndex::build(commits);
  MetricsTable table;

  if (options.aggregate_repo) {
    auto repo_row = [&](const VulnerabilityRecord* vuln) {
      const std::int64_t event = vuln ? vuln->published : index.snapshot();
      if (event < index.project_start()) {
        raise(ErrorKind::NegativeSpan, "event precedes the project's first commit");
      }
      const auto ledger = repo_ledger_at(commits, event);
      const auto profile = ownership_profile(ledger, options.threshold);
      const auto classic = repo_classic_at(commits, event);
      return finish_row(vuln, kRepoComponent, releases, profile, classic,
                        index.project_start(), index.project_start(), event, options);
    };
    for (const VulnerabilityRecord& vuln : vulns) {
      try {
        table.rows.push_back(repo_row(&vuln));
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::NegativeSpan) {
          ++table.exclusions.negative_span;
        } else if (e.kind() == ErrorKind::ComponentUnknown) {
          ++table.exclusions.component_unknown;
        } else {
          throw;
        }
        table.exclusions.notes.push_back(vuln.id + ": " + e.what());
      }
    }
    table.rows.push_back(repo_row(nullptr));
    return table;
  }

  struct Task {
    const VulnerabilityRecord* vuln;
    std::string component;
  };
  std::vector<Task> tasks;
  for (const VulnerabilityRecord& vuln : vulns) {
    for (const std::string& file : vuln.files) {
      tasks.push_back({&vuln, file});
    }
  }
  std::vector<std::string> pool_components;
  {
    std::set<std::string> vulnerable;
    for (const VulnerabilityRecord& vuln : vulns) {
      vulnerable.insert(vuln.files.begin(), vuln.files.end());
    }
    for (const auto& [component, list] : index.touches()) {
      if (!vulnerable.contains(component)) pool_components.push_back(component);
    }
  }
  for (const std::string& component : pool_components) {
    tasks.push_back({nullptr, component});
  }

  std::vector<std::variant<std::monostate, MetricRow, Error>> slots(tasks.size());
  parallel_for(tasks.size(), options.jobs, [&](std::size_t i) {
    try {
      slots[i] = assemble_metric_row(index, releases, tasks[i].vuln, tasks[i].component,
                                     options);
    } catch (const Error& e) {
      slots[i] = e;
    }
  });

  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (auto* row = std::get_if<MetricRow>(&slots[i])) {
      table.rows.push_back(std::move(*row));
      continue;
    }
    const Error& e = std::get<Error>(slots[i]);
    if (e.kind() == ErrorKind::ComponentUnknown) {
      ++table.exclusions.component_unknown;
    } else if (e.kind() == ErrorKind::NegativeSpan) {
      ++table.exclusions.negative_span;
    } else {
      throw e;
    }
    const std::string who =
        tasks[i].vuln ? tasks[i].vuln->id + "/" + tasks[i].component : tasks[i].component;
    table.exclusions.notes.push_back(who + ": " + e.what());
  }
  return table;
}

void write_metric_csv(std::ostream& out, std::span<const MetricRow> rows) {
  for (std::size_t i = 0; i < kMetricCsvColumns.size(); ++i) {
    out << (i ? "," : "") << kMetricCsvColumns[i];
  }
  out << '\n';
  for (const MetricRow& row : rows) {
    out << csv::escape(row.component) << ',' << row.is_defective << ','
        << (row.severity ? csv::format_double(*row.severity) : std::string()) << ','
        << csv::format_double(row.ownership) << ',' << row.n_contributors << ','
        << row.n_minor << ',' << csv::format_double(row.per_minor) << ','
        << csv::format_double(row.days_difference) << ',' << csv::format_double(row.age)
        << ',' << csv::format_double(row.time_stage_aged_numeric) << ','
        << csv::format_double(row.oss_stage_aged_numeric) << ',' << row.file_size << ','
        << row.code_churn << ',' << csv::format_double(row.churn_rate) << ','
        << row.is_pre_release << ',' << row.is_post_release << ',' << row.release_amounts
        << ',' << row.release_amounts_aged << '\n';
  }
}

std::vector<MetricRow> read_metric_csv(std::istream& in) {
  std::string line;
  long line_no = 0;
  if (!std::getline(in, line)) {
    raise(ErrorKind::SchemaViolation, "missing metric CSV header", 1);
  }
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  {
    std::string expected;
    for (std::size_t i = 0; i < kMetricCsvColumns.size(); ++i) {
      if (i) expected += ',';
      expected += kMetricCsvColumns[i];
    }
    if (line != expected) {
      raise(ErrorKind::SchemaViolation, "unexpected metric CSV header", line_no);
    }
  }

  auto field_double = [&](const std::string& text, const char* name) {
    double value = 0.0;
    if (!csv::parse_double(text, value)) {
      raise(ErrorKind::SchemaViolation,
            std::string("column '") + name + "' is not numeric: '" + text + "'", line_no);
    }
    return value;
  };
  auto field_int = [&](const std::string& text, const char* name) {
    long long value = 0;
    if (!csv::parse_int(text, value)) {
      raise(ErrorKind::SchemaViolation,
            std::string("column '") + name + "' is not an integer: '" + text + "'",
            line_no);
    }
    return static_cast<std::int64_t>(value);
  };

  std::vector<MetricRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = csv::split_line(line, line_no);
    if (fields.size() != kMetricCsvColumns.size()) {
      raise(ErrorKind::SchemaViolation,
            "expected " + std::to_string(kMetricCsvColumns.size()) + " fields, got " +
                std::to_string(fields.size()),
            line_no);
    }
    MetricRow row;
    row.component = fields[0];
    row.is_defective = static_cast<int>(field_int(fields[1], "is_defective"));
    if (!fields[2].empty()) {
      const double severity = field_double(fields[2], "severity");
      if (severity < 0.0 || severity > 10.0) {
        raise(ErrorKind::SeverityOutOfRange,
              "severity " + fields[2] + " outside [0,10]", line_no);
      }
      row.severity = severity;
    }
    row.ownership = field_double(fields[3], "ownership");
    row.n_contributors = field_int(fields[4], "n_contributors");
    row.n_minor = field_int(fields[5], "n_minor");
    row.per_minor = field_double(fields[6], "per_minor");
    row.days_difference = field_double(fields[7], "days_difference");
    row.age = field_double(fields[8], "age");
    row.time_stage_aged_numeric = field_double(fields[9], "time_stage_aged_numeric");
    row.oss_stage_aged_numeric = field_double(fields[10], "oss_stage_aged_numeric");
    row.file_size = field_int(fields[11], "file_size");
    row.code_churn = field_int(fields[12], "code_churn");
    row.churn_rate = field_double(fields[13], "churn_rate");
    row.is_pre_release = static_cast<int>(field_int(fields[14], "is_pre_release"));
    row.is_post_release = static_cast<int>(field_int(fields[15], "is_post_release"));
    row.release_amounts = field_int(fields[16], "release_amounts");
    row.release_amounts_aged = field_int(fields[17], "release_amounts_aged");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<MetricRow> read_metric_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    raise(ErrorKind::IoError, "cannot open '" + path + "'");
  }
  return read_metric_csv(in);
}

}  // namespace ownerscope::metrics
