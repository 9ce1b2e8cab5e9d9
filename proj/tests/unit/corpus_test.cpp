#include <cmath>

#include <gtest/gtest.h>

#include "clts/common/error.hpp"
#include "clts/corpus/corpus_io.hpp"
#include "clts/corpus/preprocess.hpp"
#include "clts/corpus/services.hpp"
#include "support/local_server.hpp"
#include "support/temp_dir.hpp"

namespace clts::corpus {
namespace {

using testing::TempDir;
using testing::write_file;

SentencePair make_pair(const std::string& id, const std::string& source, std::vector<std::string> refs) {
    SentencePair p;
    p.id = id;
    p.source = source;
    p.references = std::move(refs);
    p.corpus_id = "c";
    return p;
}

// Returns a preset vector per text.
class StubEmbedder final : public Embedder {
public:
    explicit StubEmbedder(std::map<std::string, Eigen::VectorXd> table) : table_(std::move(table)) {}
    std::vector<Eigen::VectorXd> embed(const std::vector<std::string>& texts) override {
        std::vector<Eigen::VectorXd> out;
        for (const auto& t : texts) out.push_back(table_.at(t));
        return out;
    }
    std::string name() const override { return "stub"; }

private:
    std::map<std::string, Eigen::VectorXd> table_;
};

Eigen::VectorXd vec(std::initializer_list<double> xs) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

// Unit vector at cosine `c` from the x axis.
Eigen::VectorXd at_cosine(double c) { return vec({c, std::sqrt(1 - c * c)}); }

class FailingTranslator final : public Translator {
public:
    std::vector<std::string> translate(const std::vector<std::string>& texts, Language, Language) override {
        if (texts.front().find("fail") != std::string::npos) throw TranslationBackendError("service down");
        return texts;
    }
    std::string name() const override { return "failing"; }
};

TEST(SentencePair, ValidationRules) {
    auto p = make_pair("1", "Source.", {"Ref."});
    EXPECT_EQ(validation_error(p), "");
    p.references.clear();
    EXPECT_NE(validation_error(p), "");
    p = make_pair("1", "Source.", {"Ref."});
    p.target_lang = Language::en;
    EXPECT_NE(validation_error(p), "");
    p.monolingual_origin = true;
    EXPECT_EQ(validation_error(p), "");
}

TEST(SentencePair, JsonRoundTrip) {
    auto p = make_pair("7", "Un texte.", {"A text.", "Text."});
    p.source_lang = Language::fr;
    p.target_lang = Language::en;
    p.provenance = Provenance{Language::fr, "orig", {"r"}, "translated", "mock"};
    EXPECT_EQ(pair_from_json(to_json(p)), p);
    EXPECT_THROW(pair_from_json(nlohmann::json{{"id", "x"}}), std::invalid_argument);
}

TEST(CorpusIo, LoadsTsvAndMergesReferences) {
    TempDir dir;
    write_file(dir / "c.tsv", "id\tsource\treference\n1\tA long sentence.\tShort.\n1\tA long sentence.\tBrief.\n2\tOther.\tO.\n");
    const auto result = load_corpus(dir / "c.tsv", CorpusFormat::tsv, {.corpus_id = "toy"});
    ASSERT_EQ(result.pairs.size(), 2u);
    EXPECT_EQ(result.pairs[0].references, (std::vector<std::string>{"Short.", "Brief."}));
    EXPECT_EQ(result.pairs[0].corpus_id, "toy");
}

TEST(CorpusIo, StrictModeReportsRow) {
    TempDir dir;
    write_file(dir / "c.tsv", "1\tA.\tB.\n2\tonly two\n");
    try {
        load_corpus(dir / "c.tsv", CorpusFormat::tsv);
        FAIL();
    } catch (const FormatError& e) {
        EXPECT_EQ(e.row(), 2u);
    }
    const auto lenient = load_corpus(dir / "c.tsv", CorpusFormat::tsv, {.strict = false});
    EXPECT_EQ(lenient.pairs.size(), 1u);
    ASSERT_EQ(lenient.rejected.size(), 1u);
    EXPECT_EQ(lenient.rejected[0].row, 2u);
}

TEST(CorpusIo, EmptyAndMissingFiles) {
    TempDir dir;
    write_file(dir / "empty.jsonl", "\n\n");
    EXPECT_THROW(load_corpus(dir / "empty.jsonl", CorpusFormat::jsonl), EmptyCorpus);
    EXPECT_THROW(load_corpus(dir / "absent.jsonl", CorpusFormat::jsonl), IoError);
    EXPECT_THROW(parse_corpus_format("xml"), ConfigError);
}

TEST(CorpusIo, JsonlSaveLoadRoundTrip) {
    TempDir dir;
    std::vector<SentencePair> pairs = {make_pair("a", "S one.", {"R one."}), make_pair("b", "S two.", {"R2", "R3"})};
    save_corpus(dir / "p.jsonl", pairs);
    EXPECT_EQ(load_corpus(dir / "p.jsonl", CorpusFormat::jsonl).pairs, pairs);
}

TEST(Filter, BoundaryScoreIsKept) {
    // 3/5 is exactly 0.6 in floating point.
    StubEmbedder embedder({{"s", vec({1, 0})}, {"r", vec({3, 4})}});
    const auto result = filter_by_similarity({make_pair("1", "s", {"r"})}, embedder, 0.6);
    ASSERT_EQ(result.decisions.size(), 1u);
    EXPECT_EQ(result.decisions[0].score, 0.6);
    EXPECT_TRUE(result.decisions[0].kept);
}

TEST(Filter, PartitionsInInputOrder) {
    StubEmbedder embedder({{"s", vec({1, 0})}, {"lo", at_cosine(0.2)}, {"hi", at_cosine(0.9)}});
    const auto result =
        filter_by_similarity({make_pair("1", "s", {"lo"}), make_pair("2", "s", {"hi"}),
                              make_pair("3", "s", {"lo", "hi"})},
                             embedder, 0.6);
    ASSERT_EQ(result.kept.size(), 2u);
    EXPECT_EQ(result.kept[0].id, "2");
    EXPECT_EQ(result.kept[1].id, "3");
    ASSERT_EQ(result.filtered.size(), 1u);
    EXPECT_NEAR(result.decisions[2].score, 0.9, 1e-12);
    EXPECT_EQ(result.kept.size() + result.filtered.size(), 3u);
}

TEST(Filter, RejectsBadInputs) {
    StubEmbedder embedder({{"s", vec({1, 0})}, {"r", vec({1, 0, 0})}, {"z", vec({0, 0})}});
    EXPECT_THROW(filter_by_similarity({make_pair("1", "s", {"r"})}, embedder), DimensionMismatch);
    EXPECT_THROW(filter_by_similarity({make_pair("1", "s", {"z"})}, embedder), ZeroNormVector);
    EXPECT_THROW(filter_by_similarity({make_pair("1", "s", {"s"})}, embedder, std::nan("")), InvalidArgument);
}

TEST(Filter, ConstantMockKeepsEverything) {
    MockEmbedder embedder(MockEmbedder::Kind::constant);
    const auto result = filter_by_similarity({make_pair("1", "a", {"b"}), make_pair("2", "c", {"d"})}, embedder);
    EXPECT_TRUE(result.filtered.empty());
}

TEST(Augment, TranslatesMonolingualPairsAndKeepsProvenance) {
    auto mono = make_pair("1", "Complex text.", {"Simple text."});
    mono.target_lang = Language::en;
    mono.monolingual_origin = true;
    const auto cross = make_pair("2", "Other.", {"Autre."});
    MockTranslator translator(MockTranslator::Kind::upper);
    const auto result = augment_with_translation({mono, cross}, translator);
    ASSERT_EQ(result.pairs.size(), 2u);
    const auto& t = result.pairs[0];
    EXPECT_EQ(t.target_lang, Language::fr);
    EXPECT_FALSE(t.monolingual_origin);
    EXPECT_EQ(t.source, "Complex text.");
    EXPECT_EQ(t.references, std::vector<std::string>{"SIMPLE TEXT."});
    ASSERT_TRUE(t.provenance);
    EXPECT_EQ(t.provenance->translated_source, "COMPLEX TEXT.");
    EXPECT_EQ(t.provenance->original_references, std::vector<std::string>{"Simple text."});
    EXPECT_EQ(result.pairs[1], cross);
}

TEST(Augment, FailuresAreReportedNotDropped) {
    auto ok = make_pair("ok", "fine", {"r"});
    auto bad = make_pair("bad", "fail here", {"r"});
    for (auto* p : {&ok, &bad}) p->target_lang = Language::en, p->monolingual_origin = true;
    FailingTranslator translator;
    const auto result = augment_with_translation({ok, bad}, translator);
    ASSERT_EQ(result.pairs.size(), 1u);
    ASSERT_EQ(result.failures.size(), 1u);
    EXPECT_EQ(result.failures[0].pair_id, "bad");
}

TEST(HttpServices, EmbedderBatchesRequests) {
    testing::LocalServer server("/embed", [](const nlohmann::json& req, const httplib::Request&) {
        nlohmann::json vectors = nlohmann::json::array();
        for (const auto& t : req["texts"]) vectors.push_back({static_cast<double>(t.get<std::string>().size()), 1.0});
        return std::pair{200, nlohmann::json{{"vectors", vectors}}};
    });
    ServiceConfig config;
    config.endpoint = server.url("/embed");
    config.batch_size = 2;
    HttpEmbedder embedder(config);
    const auto out = embedder.embed({"a", "bb", "ccc"});
    ASSERT_EQ(out.size(), 3u);
    EXPECT_EQ(out[2](0), 3.0);
    EXPECT_EQ(server.calls(), 2);
}

TEST(HttpServices, TranslatorRetriesServerErrors) {
    std::atomic<int> attempts{0};
    testing::LocalServer server("/translate", [&](const nlohmann::json& req, const httplib::Request&) {
        if (attempts++ == 0) return std::pair{503, nlohmann::json{{"error", "busy"}}};
        EXPECT_EQ(req["target_lang"], "fr");
        return std::pair{200, nlohmann::json{{"translations", req["texts"]}}};
    });
    ServiceConfig config;
    config.endpoint = server.url("/translate");
    config.retry = {2, std::chrono::milliseconds{1}, std::chrono::milliseconds{2}};
    HttpTranslator translator(config);
    EXPECT_EQ(translator.translate({"x"}, Language::en, Language::fr), std::vector<std::string>{"x"});
    EXPECT_EQ(server.calls(), 2);
}

TEST(HttpServices, ClientErrorsAreNotRetried) {
    testing::LocalServer server("/translate", [](const nlohmann::json&, const httplib::Request&) {
        return std::pair{400, nlohmann::json{{"error", "bad request"}}};
    });
    ServiceConfig config;
    config.endpoint = server.url("/translate");
    config.retry = {3, std::chrono::milliseconds{1}, std::chrono::milliseconds{2}};
    HttpTranslator translator(config);
    EXPECT_THROW(translator.translate({"x"}, Language::en, Language::fr), TranslationBackendError);
    EXPECT_EQ(server.calls(), 1);
}

TEST(Services, FactoryRejectsUnknownMocks) {
    ServiceConfig config;
    config.endpoint = "mock:nonsense";
    EXPECT_THROW(make_embedder(config), ConfigError);
    EXPECT_THROW(make_translator(config), ConfigError);
}

}  // namespace
}  // namespace clts::corpus
