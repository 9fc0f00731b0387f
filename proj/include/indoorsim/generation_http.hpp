#pragma once

// HTTP transport for GenerationPolicy. Split from policy.hpp so tests that
// only need recorded fixtures do not pull in the http client.

#include <cstdlib>
#include <stdexcept>
#include <string>

#include <httplib.h>
#include <json.hpp>

#include "indoorsim/policy.hpp"

namespace indoorsim {

struct HttpTransportConfig {
  std::string endpoint;                       // e.g. http://127.0.0.1:8080/v1/generate
  std::string api_key_env = "INDOORSIM_API_KEY";
  int timeout_seconds = 30;
};

// POSTs the request JSON and expects {"text": "..."} back.
inline GenerationTransport make_http_transport(HttpTransportConfig cfg) {
  auto scheme_end = cfg.endpoint.find("://");
  if (scheme_end == std::string::npos)
    throw PolicyError("generation endpoint must be an http(s) URL");
  auto path_start = cfg.endpoint.find('/', scheme_end + 3);
  std::string host = cfg.endpoint.substr(0, path_start);
  std::string path =
      path_start == std::string::npos ? "/" : cfg.endpoint.substr(path_start);
  const char* key = std::getenv(cfg.api_key_env.c_str());
  std::string auth = key ? std::string("Bearer ") + key : std::string();
  return [host, path, auth, cfg](const json& request) -> std::string {
    httplib::Client client(host);
    client.set_read_timeout(cfg.timeout_seconds, 0);
    httplib::Headers headers;
    if (!auth.empty()) headers.emplace("Authorization", auth);
    auto res = client.Post(path, headers, request.dump(), "application/json");
    if (!res || res->status != 200)
      throw PolicyError("generation service request failed");
    return json::parse(res->body).value("text", std::string());
  };
}

}  // namespace indoorsim
