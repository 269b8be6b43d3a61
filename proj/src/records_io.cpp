#include "ownerscope/records_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ownerscope/csv.hpp"
#include "ownerscope/error.hpp"
#include "ownerscope/timeutil.hpp"

namespace ownerscope {

bool is_full_hex_hash(std::string_view text) {
  return text.size() == 40 &&
         std::all_of(text.begin(), text.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

}  // namespace ownerscope

namespace ownerscope::ingest {
namespace {

using nlohmann::json;

json parse_json_line(const std::string& line, long line_no) {
  json value;
  try {
    value = json::parse(line);
  } catch (const json::parse_error& e) {
    raise(ErrorKind::SchemaViolation, std::string("invalid JSON: ") + e.what(), line_no);
  }
  if (!value.is_object()) {
    raise(ErrorKind::SchemaViolation, "line is not a JSON object", line_no);
  }
  return value;
}

std::string require_string(const json& obj, const char* key, long line_no) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    raise(ErrorKind::SchemaViolation,
          std::string("missing or ill-typed key '") + key + "'", line_no);
  }
  return it->get<std::string>();
}

std::string normalize_hash(const std::string& raw, long line_no) {
  std::string hash = raw;
  for (char& c : hash) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (!is_full_hex_hash(hash)) {
    raise(ErrorKind::SchemaViolation,
          "commit entry is not a 40-hex-char hash: '" + raw + "'", line_no);
  }
  return hash;
}

VulnerabilityRecord record_from_json(const json& obj, long line_no) {
  VulnerabilityRecord record;
  record.id = require_string(obj, "id", line_no);
  if (record.id.empty()) {
    raise(ErrorKind::SchemaViolation, "empty id", line_no);
  }

  const auto severity = obj.find("severity");
  if (severity == obj.end()) {
    raise(ErrorKind::SchemaViolation, "missing key 'severity' (use null when absent)",
          line_no);
  }
  if (!severity->is_null()) {
    if (!severity->is_number()) {
      raise(ErrorKind::SchemaViolation, "severity must be a number or null", line_no);
    }
    const double value = severity->get<double>();
    if (!std::isfinite(value) || value < 0.0 || value > 10.0) {
      raise(ErrorKind::SeverityOutOfRange,
            "severity " + csv::format_double(value) + " outside [0,10]", line_no);
    }
    record.severity = value;
  }

  const std::string published = require_string(obj, "published", line_no);
  const auto ts = timeutil::parse_rfc3339(published);
  if (!ts) {
    raise(ErrorKind::SchemaViolation,
          "published is not an RFC3339 timestamp: '" + published + "'", line_no);
  }
  record.published = *ts;

  const auto commits = obj.find("commits");
  if (commits == obj.end() || !commits->is_array()) {
    raise(ErrorKind::SchemaViolation, "missing or ill-typed key 'commits'", line_no);
  }
  for (const auto& entry : *commits) {
    if (!entry.is_string()) {
      raise(ErrorKind::SchemaViolation, "commits entries must be strings", line_no);
    }
    record.commits.push_back(normalize_hash(entry.get<std::string>(), line_no));
  }

  const auto files = obj.find("files");
  if (files == obj.end() || !files->is_array() || files->empty()) {
    raise(ErrorKind::SchemaViolation, "'files' must be a non-empty array", line_no);
  }
  for (const auto& entry : *files) {
    if (!entry.is_string() || entry.get<std::string>().empty()) {
      raise(ErrorKind::SchemaViolation, "files entries must be non-empty strings", line_no);
    }
    record.files.push_back(entry.get<std::string>());
  }

  const auto group = obj.find("group_key");
  if (group != obj.end() && !group->is_null()) {
    if (!group->is_string() || group->get<std::string>().empty()) {
      raise(ErrorKind::SchemaViolation, "group_key must be a non-empty string", line_no);
    }
    record.group_key = group->get<std::string>();
  } else if (!record.commits.empty()) {
    record.group_key = record.commits.front();
  } else {
    raise(ErrorKind::SchemaViolation,
          "group_key missing and no commits to default from", line_no);
  }
  return record;
}

std::ifstream open_or_raise(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    raise(ErrorKind::IoError, "cannot open '" + path + "'");
  }
  return in;
}

}  // namespace

std::vector<VulnerabilityRecord> load_vulnerability_records(std::istream& in) {
  std::vector<VulnerabilityRecord> records;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    records.push_back(record_from_json(parse_json_line(line, line_no), line_no));
  }
  return records;
}

std::vector<VulnerabilityRecord> load_vulnerability_records(const std::string& path) {
  auto in = open_or_raise(path);
  return load_vulnerability_records(in);
}

void save_vulnerability_records(std::ostream& out,
                                const std::vector<VulnerabilityRecord>& records) {
  for (const auto& record : records) {
    json obj;
    obj["id"] = record.id;
    if (record.severity) {
      obj["severity"] = *record.severity;
    } else {
      obj["severity"] = nullptr;
    }
    obj["published"] = timeutil::format_rfc3339_utc(record.published);
    obj["commits"] = record.commits;
    obj["files"] = record.files;
    obj["group_key"] = record.group_key;
    out << obj.dump() << '\n';
  }
}

std::vector<ReleaseRecord> load_release_list(std::istream& in) {
  std::string line;
  long line_no = 0;
  if (!std::getline(in, line)) {
    raise(ErrorKind::SchemaViolation, "missing 'name,timestamp' header", 1);
  }
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "name,timestamp") {
    raise(ErrorKind::SchemaViolation,
          "header must be 'name,timestamp', got '" + line + "'", line_no);
  }

  std::vector<ReleaseRecord> releases;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = csv::split_line(line, line_no);
    if (fields.size() != 2) {
      raise(ErrorKind::SchemaViolation,
            "expected 2 fields, got " + std::to_string(fields.size()), line_no);
    }
    if (fields[0].empty()) {
      raise(ErrorKind::SchemaViolation, "empty release name", line_no);
    }
    if (!seen.insert(fields[0]).second) {
      raise(ErrorKind::DuplicateName, "release name '" + fields[0] + "' repeats", line_no);
    }
    const auto ts = timeutil::parse_rfc3339(fields[1]);
    if (!ts) {
      raise(ErrorKind::SchemaViolation,
            "timestamp is not RFC3339: '" + fields[1] + "'", line_no);
    }
    releases.push_back({fields[0], *ts});
  }

  std::stable_sort(releases.begin(), releases.end(),
                   [](const ReleaseRecord& a, const ReleaseRecord& b) {
                     return a.timestamp < b.timestamp;
                   });
  for (std::size_t i = 1; i < releases.size(); ++i) {
    if (releases[i].timestamp == releases[i - 1].timestamp) {
      raise(ErrorKind::SchemaViolation,
            "releases '" + releases[i - 1].name + "' and '" + releases[i].name +
                "' share one timestamp");
    }
  }
  return releases;
}

std::vector<ReleaseRecord> load_release_list(const std::string& path) {
  auto in = open_or_raise(path);
  return load_release_list(in);
}

void save_release_list(std::ostream& out, const std::vector<ReleaseRecord>& releases) {
  out << "name,timestamp\n";
  for (const auto& release : releases) {
    out << csv::escape(release.name) << ','
        << timeutil::format_rfc3339_utc(release.timestamp) << '\n';
  }
}

std::vector<CommitRecord> load_commits_jsonl(std::istream& in) {
  std::vector<CommitRecord> commits;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const json obj = parse_json_line(line, line_no);

    CommitRecord commit;
    commit.hash = require_string(obj, "hash", line_no);
    if (!is_full_hex_hash(commit.hash)) {
      raise(ErrorKind::SchemaViolation, "hash is not 40 lowercase hex chars", line_no);
    }
    commit.author = require_string(obj, "author", line_no);
    if (commit.author.empty()) {
      raise(ErrorKind::SchemaViolation, "empty author", line_no);
    }
    const auto ts = obj.find("timestamp");
    if (ts == obj.end() || !ts->is_number_integer() || ts->get<std::int64_t>() <= 0) {
      raise(ErrorKind::SchemaViolation, "timestamp must be a positive integer", line_no);
    }
    commit.timestamp = ts->get<std::int64_t>();
    const auto parents = obj.find("parent_count");
    if (parents == obj.end() || !parents->is_number_integer() || parents->get<int>() < 0) {
      raise(ErrorKind::SchemaViolation, "parent_count must be a non-negative integer",
            line_no);
    }
    commit.parent_count = parents->get<int>();

    const auto changes = obj.find("changes");
    if (changes == obj.end() || !changes->is_array()) {
      raise(ErrorKind::SchemaViolation, "missing or ill-typed key 'changes'", line_no);
    }
    for (const auto& entry : *changes) {
      if (!entry.is_object()) {
        raise(ErrorKind::SchemaViolation, "changes entries must be objects", line_no);
      }
      FileChange change;
      change.path = require_string(entry, "path", line_no);
      if (change.path.empty() || change.path.front() == '/') {
        raise(ErrorKind::SchemaViolation,
              "change path must be non-empty and repository-relative", line_no);
      }
      const auto added = entry.find("added");
      const auto deleted = entry.find("deleted");
      if (added == entry.end() || deleted == entry.end()) {
        raise(ErrorKind::SchemaViolation, "change needs 'added' and 'deleted'", line_no);
      }
      if (added->is_null() != deleted->is_null()) {
        raise(ErrorKind::SchemaViolation,
              "'added' and 'deleted' must both be counts or both null", line_no);
      }
      if (!added->is_null()) {
        if (!added->is_number_integer() || !deleted->is_number_integer() ||
            added->get<std::int64_t>() < 0 || deleted->get<std::int64_t>() < 0) {
          raise(ErrorKind::SchemaViolation, "line deltas must be non-negative integers",
                line_no);
        }
        change.added = added->get<std::int64_t>();
        change.deleted = deleted->get<std::int64_t>();
      }
      commit.changes.push_back(std::move(change));
    }
    commits.push_back(std::move(commit));
  }
  return commits;
}

std::vector<CommitRecord> load_commits_jsonl(const std::string& path) {
  auto in = open_or_raise(path);
  return load_commits_jsonl(in);
}

void save_commits_jsonl(std::ostream& out, const std::vector<CommitRecord>& commits) {
  for (const auto& commit : commits) {
    json obj;
    obj["hash"] = commit.hash;
    obj["author"] = commit.author;
    obj["timestamp"] = commit.timestamp;
    obj["parent_count"] = commit.parent_count;
    json changes = json::array();
    for (const auto& change : commit.changes) {
      json c;
      c["path"] = change.path;
      if (change.added) {
        c["added"] = *change.added;
        c["deleted"] = *change.deleted;
      } else {
        c["added"] = nullptr;
        c["deleted"] = nullptr;
      }
      changes.push_back(std::move(c));
    }
    obj["changes"] = std::move(changes);
    out << obj.dump() << '\n';
  }
}

std::string read_file(const std::string& path) {
  auto in = open_or_raise(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace ownerscope::ingest
