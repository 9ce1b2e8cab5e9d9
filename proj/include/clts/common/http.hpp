#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace clts::http {

struct Endpoint {
    std::string scheme_host_port;  // "http://localhost:8080"
    std::string path;              // "/v1/embed"
};

/// Splits an absolute http(s) URL. Throws ConfigError on anything else.
Endpoint parse_url(const std::string& url);

using Headers = std::vector<std::pair<std::string, std::string>>;

/// Transport-level failure or non-2xx status.
struct HttpFailure {
    int status = 0;  // 0 when no response was received
    std::string message;
};

/// POSTs a JSON body and parses the JSON response. Returns the parsed body or
/// fills `failure`.
bool post_json(const std::string& url, const nlohmann::json& body, const Headers& headers,
               std::chrono::seconds timeout, nlohmann::json& response, HttpFailure& failure);

/// Thrown inside retry loops for failures worth another attempt.
struct TransientFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// True for connection failures, 408, 429 and 5xx.
inline bool is_retryable(const HttpFailure& f) {
    return f.status == 0 || f.status == 408 || f.status == 429 || f.status >= 500;
}

/// POST with retries. Retryable failures are retried per `policy`; the final
/// failure (or a non-retryable one) is rethrown as `ErrorT`.
template <typename ErrorT, typename Policy>
nlohmann::json post_json_with_retries(const std::string& url, const nlohmann::json& body,
                                      const Headers& headers, std::chrono::seconds timeout,
                                      const Policy& policy, std::uint64_t jitter_seed);

/// Resolves an API key from the named environment variable. Empty name or
/// unset variable yields an empty string.
std::string api_key_from_env(const std::string& env_var);

}  // namespace clts::http

#include "clts/common/retry.hpp"

namespace clts::http {

template <typename ErrorT, typename Policy>
nlohmann::json post_json_with_retries(const std::string& url, const nlohmann::json& body,
                                      const Headers& headers, std::chrono::seconds timeout,
                                      const Policy& policy, std::uint64_t jitter_seed) {
    try {
        return with_retries<TransientFailure>(policy, jitter_seed, [&] {
            nlohmann::json response;
            HttpFailure failure;
            if (post_json(url, body, headers, timeout, response, failure)) return response;
            if (is_retryable(failure)) throw TransientFailure(failure.message);
            throw ErrorT(url + ": " + failure.message);
        });
    } catch (const TransientFailure& e) {
        throw ErrorT(url + ": retries exhausted: " + e.what());
    }
}

}  // namespace clts::http
