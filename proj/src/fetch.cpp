#include "ownerscope/fetch.hpp"

#include <chrono>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "ownerscope/error.hpp"
#include "ownerscope/records_io.hpp"

namespace ownerscope::ingest {
namespace {

struct Endpoint {
  std::string scheme_host_port;
  std::string path;
};

Endpoint split_endpoint(const std::string& url) {
  const std::size_t scheme = url.find("://");
  if (scheme == std::string::npos) {
    raise(ErrorKind::NetworkError, "endpoint must be an http(s) URL: '" + url + "'");
  }
  const std::size_t path_start = url.find('/', scheme + 3);
  Endpoint endpoint;
  if (path_start == std::string::npos) {
    endpoint.scheme_host_port = url;
    endpoint.path = "/";
  } else {
    endpoint.scheme_host_port = url.substr(0, path_start);
    endpoint.path = url.substr(path_start);
  }
  return endpoint;
}

std::string url_encode(const std::string& text) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (const unsigned char c : text) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 0xF];
    }
  }
  return out;
}

}  // namespace

FetchOutcome fetch_advisories(const std::string& project, const std::string& endpoint,
                              const std::optional<std::string>& token,
                              const FetchOptions& options) {
  const Endpoint target = split_endpoint(endpoint);
  httplib::Client client(target.scheme_host_port);
  client.set_connection_timeout(10, 0);
  client.set_read_timeout(30, 0);

  httplib::Headers headers;
  if (token) {
    headers.emplace("Authorization", "Bearer " + *token);
  }
  const std::string path = target.path +
                           (target.path.find('?') == std::string::npos ? "?" : "&") +
                           "project=" + url_encode(project);

  httplib::Result response;
  int delay_ms = options.base_delay_ms;
  for (int attempt = 0;; ++attempt) {
    response = client.Get(path, headers);
    if (!response) {
      raise(ErrorKind::NetworkError,
            "GET " + endpoint + " failed: " + httplib::to_string(response.error()));
    }
    if (response->status == 401 || response->status == 403) {
      raise(ErrorKind::AuthError,
            "HTTP " + std::to_string(response->status) + " from " + endpoint);
    }
    if (response->status == 429 || response->status == 503) {
      if (attempt >= options.max_retries) {
        raise(ErrorKind::RateLimited, "retries exhausted after HTTP " +
                                          std::to_string(response->status));
      }
      int wait_ms = delay_ms;
      if (response->has_header("Retry-After")) {
        try {
          wait_ms = std::stoi(response->get_header_value("Retry-After")) * 1000;
        } catch (...) {
          // unparseable header: keep the backoff schedule
        }
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(wait_ms));
      delay_ms *= 2;
      continue;
    }
    if (response->status != 200) {
      raise(ErrorKind::NetworkError,
            "HTTP " + std::to_string(response->status) + " from " + endpoint);
    }
    break;
  }

  nlohmann::json payload;
  try {
    payload = nlohmann::json::parse(response->body);
  } catch (const nlohmann::json::parse_error& e) {
    raise(ErrorKind::NetworkError, std::string("response is not JSON: ") + e.what());
  }
  if (!payload.is_array()) {
    raise(ErrorKind::NetworkError, "response is not a JSON array of advisories");
  }

  // Normalize through the JSON Lines loader so fetched and file-loaded
  // records are schema-identical; advisories without files cannot map to
  // components and are dropped.
  FetchOutcome outcome;
  long entry = 0;
  for (const auto& advisory : payload) {
    ++entry;
    const auto files = advisory.find("files");
    if (files == advisory.end() || !files->is_array() || files->empty()) {
      ++outcome.dropped;
      continue;
    }
    std::stringstream one_line;
    one_line << advisory.dump() << '\n';
    try {
      auto records = load_vulnerability_records(one_line);
      outcome.records.insert(outcome.records.end(), records.begin(), records.end());
    } catch (const Error& e) {
      raise(e.kind(), "advisory " + std::to_string(entry) + ": " + e.detail());
    }
  }
  return outcome;
}

}  // namespace ownerscope::ingest
