#pragma once

#include <string_view>
#include <vector>

#include "ownerscope/types.hpp"

namespace ownerscope::ingest {

// Parses the output of
//   log --numstat --date=unix --no-renames --pretty=format:"@@@%H|%ae|%ad|%P"
// Records start at the `@@@` sentinel; numstat lines are
// `<added>\t<deleted>\t<path>` with `-\t-\t<path>` for binary files.
// Returns commits sorted oldest-first (input order breaks timestamp ties).
// Raises MalformedRecord with the offending 1-based line number on any
// grammar violation, EmptyInput when no records are present.
std::vector<CommitRecord> parse_commit_log(std::string_view text);

}  // namespace ownerscope::ingest
