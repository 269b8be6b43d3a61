#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ownerscope/types.hpp"

namespace ownerscope::ingest {

struct FetchOptions {
  int max_retries = 4;
  int base_delay_ms = 500;  // doubled per retry when no Retry-After is given
};

struct FetchOutcome {
  std::vector<VulnerabilityRecord> records;
  int dropped = 0;  // advisories without a file list
};

// GET {endpoint}?project={slug}, expecting a JSON array of advisory objects
// in the vulnerability JSON Lines schema. Sends `Authorization: Bearer
// <token>` when a token is supplied; 429/503 responses are retried with
// exponential backoff honoring an integer Retry-After header. Raises
// NetworkError, AuthError (401/403), RateLimited (retries exhausted).
FetchOutcome fetch_advisories(const std::string& project, const std::string& endpoint,
                              const std::optional<std::string>& token = std::nullopt,
                              const FetchOptions& options = {});

}  // namespace ownerscope::ingest
