#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ownerscope/types.hpp"

namespace ownerscope::ingest {

// Vulnerability records: JSON Lines, one object per line with keys
// id, severity (number or null), published (RFC3339), commits, files,
// group_key (optional; defaults to commits[0]).
std::vector<VulnerabilityRecord> load_vulnerability_records(std::istream& in);
std::vector<VulnerabilityRecord> load_vulnerability_records(const std::string& path);
void save_vulnerability_records(std::ostream& out,
                                const std::vector<VulnerabilityRecord>& records);

// Release list: CSV with header `name,timestamp` (RFC3339); returned sorted
// by timestamp ascending. Empty body is a valid zero-release project.
std::vector<ReleaseRecord> load_release_list(std::istream& in);
std::vector<ReleaseRecord> load_release_list(const std::string& path);
void save_release_list(std::ostream& out, const std::vector<ReleaseRecord>& releases);

// Canonical JSON Lines interchange form for parsed commits; load(save(x)) == x.
std::vector<CommitRecord> load_commits_jsonl(std::istream& in);
std::vector<CommitRecord> load_commits_jsonl(const std::string& path);
void save_commits_jsonl(std::ostream& out, const std::vector<CommitRecord>& commits);

std::string read_file(const std::string& path);

}  // namespace ownerscope::ingest
