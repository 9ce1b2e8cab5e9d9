#include "clts/common/http.hpp"

#include <httplib.h>

#include <cstdlib>

#include "clts/common/error.hpp"

namespace clts::http {

Endpoint parse_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw ConfigError("not an absolute URL: " + url);
    const std::string scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https")
        throw ConfigError("unsupported URL scheme '" + scheme + "' in " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    Endpoint ep;
    if (path_start == std::string::npos) {
        ep.scheme_host_port = url;
        ep.path = "/";
    } else {
        ep.scheme_host_port = url.substr(0, path_start);
        ep.path = url.substr(path_start);
    }
    if (ep.scheme_host_port.size() <= scheme_end + 3) throw ConfigError("URL has no host: " + url);
    return ep;
}

bool post_json(const std::string& url, const nlohmann::json& body, const Headers& headers,
               std::chrono::seconds timeout, nlohmann::json& response, HttpFailure& failure) {
    const Endpoint ep = parse_url(url);
    httplib::Client client(ep.scheme_host_port);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    httplib::Headers hs;
    for (const auto& [k, v] : headers) hs.emplace(k, v);

    auto res = client.Post(ep.path, hs, body.dump(), "application/json");
    if (!res) {
        failure = {0, httplib::to_string(res.error())};
        return false;
    }
    if (res->status < 200 || res->status >= 300) {
        failure = {res->status, "HTTP " + std::to_string(res->status) + ": " + res->body};
        return false;
    }
    try {
        response = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::parse_error& e) {
        failure = {res->status, std::string("malformed JSON response: ") + e.what()};
        return false;
    }
    return true;
}

std::string api_key_from_env(const std::string& env_var) {
    if (env_var.empty()) return {};
    const char* value = std::getenv(env_var.c_str());
    return value ? std::string(value) : std::string{};
}

}  // namespace clts::http
