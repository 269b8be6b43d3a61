#include "ownerscope/commit_log.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "ownerscope/error.hpp"

namespace ownerscope::ingest {
namespace {

constexpr std::string_view kSentinel = "@@@";

std::string lowercase(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool all_digits(std::string_view text) {
  if (text.empty()) return false;
  return std::all_of(text.begin(), text.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

std::string parse_hash(std::string_view raw, long line_no, const char* what) {
  std::string hash = lowercase(raw);
  if (hash.size() != 40 ||
      !std::all_of(hash.begin(), hash.end(), [](char c) {
        return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
      })) {
    raise(ErrorKind::MalformedRecord,
          std::string(what) + " is not a 40-hex-char hash: '" + std::string(raw) + "'",
          line_no);
  }
  return hash;
}

void validate_path(std::string_view path, long line_no) {
  if (path.empty()) {
    raise(ErrorKind::MalformedRecord, "empty path in numstat line", line_no);
  }
  if (path.front() == '/') {
    raise(ErrorKind::MalformedRecord,
          "path must be repository-relative: '" + std::string(path) + "'", line_no);
  }
}

CommitRecord parse_header(std::string_view line, long line_no) {
  std::string_view body = line.substr(kSentinel.size());
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pipe = body.find('|', start);
    if (pipe == std::string_view::npos) {
      fields.push_back(body.substr(start));
      break;
    }
    fields.push_back(body.substr(start, pipe - start));
    start = pipe + 1;
  }
  if (fields.size() != 4) {
    raise(ErrorKind::MalformedRecord,
          "header must have 4 '|'-separated fields, got " + std::to_string(fields.size()),
          line_no);
  }

  CommitRecord commit;
  commit.hash = parse_hash(fields[0], line_no, "commit hash");
  if (fields[1].empty()) {
    raise(ErrorKind::MalformedRecord, "empty author email", line_no);
  }
  commit.author = lowercase(fields[1]);
  if (!all_digits(fields[2])) {
    raise(ErrorKind::MalformedRecord,
          "timestamp is not unix seconds: '" + std::string(fields[2]) + "'", line_no);
  }
  std::int64_t ts = 0;
  const auto result = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), ts);
  if (result.ec != std::errc() || ts <= 0) {
    raise(ErrorKind::MalformedRecord,
          "timestamp out of range: '" + std::string(fields[2]) + "'", line_no);
  }
  commit.timestamp = ts;

  // %P: whitespace-separated parent hashes, empty for root commits.
  std::string_view parents = fields[3];
  std::size_t pos = 0;
  while (pos < parents.size()) {
    while (pos < parents.size() && parents[pos] == ' ') ++pos;
    if (pos >= parents.size()) break;
    std::size_t end = parents.find(' ', pos);
    if (end == std::string_view::npos) end = parents.size();
    parse_hash(parents.substr(pos, end - pos), line_no, "parent hash");
    ++commit.parent_count;
    pos = end;
  }
  return commit;
}

FileChange parse_numstat(std::string_view line, long line_no) {
  const std::size_t tab1 = line.find('\t');
  const std::size_t tab2 = tab1 == std::string_view::npos
                               ? std::string_view::npos
                               : line.find('\t', tab1 + 1);
  if (tab1 == std::string_view::npos || tab2 == std::string_view::npos) {
    raise(ErrorKind::MalformedRecord,
          "numstat line must be '<added>\\t<deleted>\\t<path>': '" + std::string(line) + "'",
          line_no);
  }
  const std::string_view added = line.substr(0, tab1);
  const std::string_view deleted = line.substr(tab1 + 1, tab2 - tab1 - 1);
  const std::string_view path = line.substr(tab2 + 1);
  validate_path(path, line_no);

  FileChange change;
  change.path = std::string(path);
  if (added == "-" && deleted == "-") {
    return change;  // binary sentinel: both deltas unknown
  }
  if (!all_digits(added) || !all_digits(deleted)) {
    raise(ErrorKind::MalformedRecord,
          "numstat deltas must both be counts or both '-': '" + std::string(line) + "'",
          line_no);
  }
  std::int64_t a = 0, d = 0;
  std::from_chars(added.data(), added.data() + added.size(), a);
  std::from_chars(deleted.data(), deleted.data() + deleted.size(), d);
  change.added = a;
  change.deleted = d;
  return change;
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace

std::vector<CommitRecord> parse_commit_log(std::string_view text) {
  std::vector<CommitRecord> commits;
  bool have_current = false;
  CommitRecord current;

  long line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      if (pos == text.size()) break;
      end = text.size();
    }
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.substr(0, kSentinel.size()) == kSentinel) {
      if (have_current) commits.push_back(std::move(current));
      current = parse_header(line, line_no);
      have_current = true;
    } else if (is_blank(line)) {
      continue;  // record separator
    } else {
      if (!have_current) {
        raise(ErrorKind::MalformedRecord,
              "numstat line before any '@@@' record header", line_no);
      }
      current.changes.push_back(parse_numstat(line, line_no));
    }
  }
  if (have_current) commits.push_back(std::move(current));

  if (commits.empty()) {
    raise(ErrorKind::EmptyInput, "no commit records in input");
  }

  std::stable_sort(commits.begin(), commits.end(),
                   [](const CommitRecord& a, const CommitRecord& b) {
                     return a.timestamp < b.timestamp;
                   });
  return commits;
}

}  // namespace ownerscope::ingest
