#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <string>

namespace clts::prompting {

struct ChatRequest {
    std::string system_prompt;
    std::string user_prompt;
    double temperature = 1.0;
    double top_p = 1.0;
};

/// Chat-completion contract: (system prompt, user prompt, temperature,
/// top_p) -> text. Implementations throw BackendError for failures worth
/// retrying and must be callable from several threads at once.
class GenerationBackend {
public:
    virtual ~GenerationBackend() = default;
    virtual std::string complete(const ChatRequest& request) = 0;
    /// Identifier recorded in outputs and cache keys.
    virtual std::string model_id() const = 0;
};

/// Where and how to reach a text-generation model.
struct BackendConfig {
    std::string name;      // label used in reports; defaults to `model`
    std::string base_url;  // "https://api.openai.com/v1", or "mock:<kind>"
    std::string model;
    std::string key_env;   // environment variable holding the API key
    std::chrono::seconds timeout{120};
};

/// OpenAI-compatible POST {base_url}/chat/completions.
class HttpChatBackend final : public GenerationBackend {
public:
    explicit HttpChatBackend(BackendConfig config);
    std::string complete(const ChatRequest& request) override;
    std::string model_id() const override { return model_id_; }

private:
    BackendConfig config_;
    std::string model_id_;
    std::string url_;
};

/// Deterministic in-process backend selected by the `mock:` scheme.
///   mock:echo         returns the user prompt
///   mock:simplify     (default) recognises the strategy templates and
///                     returns a deterministic edit of the payload
///   mock:constant:<t> always returns <t>
///   mock:fail         always throws BackendError
class MockBackend final : public GenerationBackend {
public:
    MockBackend(std::string kind, std::string model_id);
    std::string complete(const ChatRequest& request) override;
    std::string model_id() const override { return model_id_; }

private:
    std::string kind_;
    std::string model_id_;
};

/// Wraps a backend and counts calls that reach it.
class CountingBackend final : public GenerationBackend {
public:
    explicit CountingBackend(GenerationBackend& inner) : inner_(inner) {}
    std::string complete(const ChatRequest& request) override {
        calls_.fetch_add(1);
        return inner_.complete(request);
    }
    std::string model_id() const override { return inner_.model_id(); }
    long calls() const noexcept { return calls_.load(); }

private:
    GenerationBackend& inner_;
    std::atomic<long> calls_{0};
};

/// Builds a backend from its config; `mock:` URLs yield MockBackend.
std::unique_ptr<GenerationBackend> make_backend(const BackendConfig& config);

}  // namespace clts::prompting
