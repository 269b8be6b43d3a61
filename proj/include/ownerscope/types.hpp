#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ownerscope {

// One file touched by a commit. Binary changes carry no line counts;
// added/deleted are either both present or both absent.
struct FileChange {
  std::string path;
  std::optional<std::int64_t> added;
  std::optional<std::int64_t> deleted;

  bool binary() const { return !added.has_value(); }
  bool operator==(const FileChange&) const = default;
};

struct CommitRecord {
  std::string hash;    // 40 lowercase hex chars
  std::string author;  // lowercased author email
  std::int64_t timestamp = 0;
  int parent_count = 0;
  std::vector<FileChange> changes;

  // Merges are kept in the record stream but excluded from contribution
  // counting downstream.
  bool is_merge() const { return parent_count >= 2; }
  bool operator==(const CommitRecord&) const = default;
};

struct ReleaseRecord {
  std::string name;
  std::int64_t timestamp = 0;

  bool operator==(const ReleaseRecord&) const = default;
};

struct VulnerabilityRecord {
  std::string id;
  std::optional<double> severity;  // [0,10] when present
  std::int64_t published = 0;      // unix seconds UTC
  std::vector<std::string> commits;  // fix commit hashes
  std::vector<std::string> files;    // repository-relative, never empty
  std::string group_key;             // pull-request / origin-commit cluster

  bool operator==(const VulnerabilityRecord&) const = default;
};

bool is_full_hex_hash(std::string_view text);

}  // namespace ownerscope
