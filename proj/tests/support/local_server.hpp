#pragma once

#include <atomic>
#include <functional>
#include <string>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace clts::testing {

/// JSON POST endpoint on 127.0.0.1 with an ephemeral port, served from a
/// background thread for the lifetime of the object.
class LocalServer {
public:
    /// Handler returns (status, body); `calls` counts requests.
    using Handler = std::function<std::pair<int, nlohmann::json>(const nlohmann::json& request,
                                                                 const httplib::Request& raw)>;

    LocalServer(const std::string& path, Handler handler) {
        server_.Post(path, [this, handler](const httplib::Request& req, httplib::Response& res) {
            calls_++;
            const auto [status, body] = handler(nlohmann::json::parse(req.body), req);
            res.status = status;
            res.set_content(body.dump(), "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    ~LocalServer() {
        server_.stop();
        thread_.join();
    }

    std::string url(const std::string& path = "") const {
        return "http://127.0.0.1:" + std::to_string(port_) + path;
    }
    int calls() const { return calls_.load(); }

private:
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
    std::atomic<int> calls_{0};
};

}  // namespace clts::testing
