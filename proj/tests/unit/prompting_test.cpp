#include <gtest/gtest.h>

#include "clts/common/error.hpp"
#include "clts/prompting/backend.hpp"
#include "clts/prompting/cache.hpp"
#include "clts/prompting/output.hpp"
#include "clts/prompting/runner.hpp"
#include "clts/prompting/strategy.hpp"
#include "support/local_server.hpp"
#include "support/temp_dir.hpp"

namespace clts::prompting {
namespace {

using testing::TempDir;

corpus::SentencePair pair(const std::string& id, const std::string& source = "The committee approved it.") {
    corpus::SentencePair p;
    p.id = id;
    p.source = source;
    p.references = {"Le comité l'a approuvé."};
    p.corpus_id = "c";
    return p;
}

GenerationConfig fast_config() {
    GenerationConfig cfg;
    cfg.retry_base_delay = std::chrono::milliseconds{0};
    cfg.max_retries = 2;
    return cfg;
}

RunHooks fixed_clock() {
    RunHooks hooks;
    hooks.clock = [] { return std::string("2024-01-01T00:00:00Z"); };
    return hooks;
}

// Fails the first `failures` calls, then echoes.
class FlakyBackend final : public GenerationBackend {
public:
    explicit FlakyBackend(int failures) : failures_(failures) {}
    std::string complete(const ChatRequest& request) override {
        if (calls_++ < failures_) throw BackendError("flaky");
        return request.user_prompt;
    }
    std::string model_id() const override { return "flaky"; }
    int calls() const { return calls_; }

private:
    int failures_;
    std::atomic<int> calls_{0};
};

TEST(Strategy, NamesRoundTrip) {
    for (Strategy s : kAllStrategies) EXPECT_EQ(parse_strategy(to_string(s)), s);
    EXPECT_EQ(display_name(Strategy::comp_ts), "T>S Comp.");
    try {
        parse_strategy("Translate");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("DecompST"), std::string::npos);
    }
}

TEST(Strategy, CallsRequired) {
    int total = 0;
    for (Strategy s : kAllStrategies) total += calls_required(s);
    EXPECT_EQ(total, 7);
    EXPECT_TRUE(is_decomposition(Strategy::decomp_st));
    EXPECT_FALSE(is_decomposition(Strategy::comp_st));
}

TEST(Strategy, DecompositionPromptCarriesPlaceholder) {
    const auto prompts = build_prompts(Strategy::decomp_ts, "Text.", Language::en);
    ASSERT_EQ(prompts.size(), 2u);
    EXPECT_EQ(prompts[0], "Please translate the following text to English: Text.");
    EXPECT_EQ(prompts[1], "Please simplify the following text in English: <step-1 output>");
    EXPECT_THROW(build_prompts(Strategy::direct, "  ", Language::fr), InvalidArgument);
}

TEST(RunStrategy, DecompositionFeedsTrimmedFirstResponse) {
    MockBackend echo("echo", "m");
    const auto out = run_strategy(Strategy::decomp_st, pair("1", "Source."), echo, fast_config(), fixed_clock());
    ASSERT_EQ(out.prompt_log.size(), 2u);
    ASSERT_TRUE(out.intermediate);
    EXPECT_EQ(*out.intermediate, "Please simplify the following text: Source.");
    EXPECT_EQ(out.prompt_log[1].user_prompt,
              "Please translate the following text to French: Please simplify the following text: Source.");
    EXPECT_EQ(out.hypothesis, out.prompt_log[1].raw_response);
    EXPECT_EQ(out.created_at, "2024-01-01T00:00:00Z");
}

TEST(RunStrategy, DirectHasNoIntermediate) {
    MockBackend backend("simplify", "m");
    const auto out = run_strategy(Strategy::direct, pair("1"), backend, fast_config());
    EXPECT_FALSE(out.intermediate);
    EXPECT_EQ(out.prompt_log.size(), 1u);
    EXPECT_EQ(out.prompt_log[0].system_prompt, std::string(kDefaultSystemPrompt));
}

TEST(RunStrategy, RetriesTransientFailures) {
    FlakyBackend backend(2);
    const auto out = run_strategy(Strategy::direct, pair("1"), backend, fast_config());
    EXPECT_EQ(backend.calls(), 3);
    EXPECT_FALSE(out.hypothesis.empty());
    FlakyBackend hopeless(10);
    EXPECT_THROW(run_strategy(Strategy::direct, pair("1"), hopeless, fast_config()), BackendError);
    EXPECT_EQ(hopeless.calls(), 3);
}

TEST(RunStrategy, BlankResponseIsEmptyResponse) {
    MockBackend blank("constant:   ", "m");
    EXPECT_THROW(run_strategy(Strategy::direct, pair("1"), blank, fast_config()), EmptyResponse);
}

TEST(RunStrategy, CacheAvoidsRepeatCalls) {
    MockBackend inner("simplify", "m");
    CountingBackend counting(inner);
    ResponseCache cache;
    RunHooks hooks;
    hooks.cache = &cache;
    const auto first = run_strategy(Strategy::decomp_ts, pair("1"), counting, fast_config(), hooks);
    const auto second = run_strategy(Strategy::decomp_ts, pair("1"), counting, fast_config(), hooks);
    EXPECT_EQ(counting.calls(), 2);
    EXPECT_EQ(first.hypothesis, second.hypothesis);
    EXPECT_EQ(cache.size(), 2u);
}

TEST(GenerationConfig, ValidatesRanges) {
    GenerationConfig cfg;
    cfg.temperature = -0.1;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = {};
    cfg.top_p = 1.5;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = {};
    EXPECT_NO_THROW(cfg.validate());
}

TEST(RunMatrix, CountsCallsAndResumesFromFile) {
    TempDir dir;
    MockBackend inner("simplify", "m");
    CountingBackend counting(inner);
    std::vector<corpus::SentencePair> pairs = {pair("1"), pair("2", "Another rather complicated sentence.")};
    MatrixOptions options;
    options.outputs_path = dir / "outputs.jsonl";
    options.errors_path = dir / "errors.jsonl";
    const auto strategies = std::vector<Strategy>(kAllStrategies.begin(), kAllStrategies.end());
    const auto first = run_matrix(pairs, strategies, {&counting}, fast_config(), options);
    EXPECT_EQ(first.outputs.size(), 10u);
    EXPECT_EQ(first.backend_calls, 14);
    EXPECT_EQ(counting.calls(), 14);

    const auto second = run_matrix(pairs, strategies, {&counting}, fast_config(), options);
    EXPECT_EQ(second.backend_calls, 0);
    EXPECT_EQ(second.resumed, 10u);
    EXPECT_EQ(counting.calls(), 14);
    EXPECT_EQ(load_outputs(dir / "outputs.jsonl").size(), 10u);
}

TEST(RunMatrix, ItemFailuresGoToLedger) {
    TempDir dir;
    MockBackend good("simplify", "good");
    MockBackend bad("fail", "bad");
    MatrixOptions options;
    options.errors_path = dir / "errors.jsonl";
    const auto result = run_matrix({pair("1")}, {Strategy::direct, Strategy::comp_st}, {&good, &bad}, fast_config(), options);
    EXPECT_EQ(result.outputs.size(), 2u);
    EXPECT_EQ(result.errors.size(), 2u);
    for (const auto& e : result.errors) EXPECT_EQ(e.model_id, "bad");
    EXPECT_FALSE(testing::read_file(dir / "errors.jsonl").empty());
    EXPECT_THROW(run_matrix({pair("1")}, {Strategy::direct}, {&bad}, fast_config()), BackendError);
}

TEST(Outputs, JsonRoundTripAndTruncatedTail) {
    TempDir dir;
    MockBackend backend("simplify", "m");
    const auto out = run_strategy(Strategy::decomp_ts, pair("1"), backend, fast_config(), fixed_clock());
    EXPECT_EQ(output_from_json(to_json(out)), out);
    testing::write_file(dir / "o.jsonl", to_json(out).dump() + "\n{\"pair_id\": \"2\", \"corp");
    EXPECT_EQ(load_outputs(dir / "o.jsonl").size(), 1u);
    testing::write_file(dir / "bad.jsonl", "{oops}\n" + to_json(out).dump() + "\n");
    EXPECT_THROW(load_outputs(dir / "bad.jsonl"), FormatError);
    EXPECT_EQ(output_key("m", Strategy::comp_ts, "7"), "m|CompTS|7");
}

TEST(Cache, PersistsAcrossInstances) {
    TempDir dir;
    const auto key = ResponseCache::key("m", Strategy::direct, "1", ChatRequest{"sys", "user", 1.0, 1.0});
    {
        ResponseCache cache(dir / "cache.jsonl");
        cache.store(key, {"answer", "t"});
    }
    ResponseCache reopened(dir / "cache.jsonl");
    ASSERT_TRUE(reopened.find(key));
    EXPECT_EQ(reopened.find(key)->response, "answer");
    EXPECT_NE(key, ResponseCache::key("m", Strategy::direct, "1", ChatRequest{"sys", "user", 0.5, 1.0}));
}

TEST(HttpChatBackend, SpeaksChatCompletions) {
    ::setenv("CLTS_TEST_KEY", "secret", 1);
    testing::LocalServer server("/v1/chat/completions", [](const nlohmann::json& req, const httplib::Request& raw) {
        EXPECT_EQ(raw.get_header_value("Authorization"), "Bearer secret");
        EXPECT_EQ(req["model"], "gpt-test");
        EXPECT_EQ(req["messages"][0]["role"], "system");
        const std::string user = req["messages"][1]["content"];
        return std::pair{200, nlohmann::json{{"choices", {{{"message", {{"content", "re: " + user}}}}}}}};
    });
    BackendConfig config{"label", server.url("/v1"), "gpt-test", "CLTS_TEST_KEY", std::chrono::seconds{5}};
    HttpChatBackend backend(config);
    EXPECT_EQ(backend.model_id(), "label");
    EXPECT_EQ(backend.complete({"s", "hello", 0.2, 0.9}), "re: hello");
}

TEST(HttpChatBackend, ServerErrorIsBackendError) {
    testing::LocalServer server("/v1/chat/completions", [](const nlohmann::json&, const httplib::Request&) {
        return std::pair{500, nlohmann::json{{"error", "oops"}}};
    });
    HttpChatBackend backend({"", server.url("/v1"), "m", "", std::chrono::seconds{5}});
    EXPECT_THROW(backend.complete({"s", "u", 1, 1}), BackendError);
}

TEST(MockBackend, UnknownKindIsConfigError) {
    EXPECT_THROW(MockBackend("teleport", "m"), ConfigError);
    BackendConfig config;
    config.base_url = "mock:echo";
    config.model = "x";
    EXPECT_EQ(make_backend(config)->complete({"s", "u", 1, 1}), "u");
}

}  // namespace
}  // namespace clts::prompting
