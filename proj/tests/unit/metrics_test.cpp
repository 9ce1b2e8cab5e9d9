#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "clts/common/error.hpp"
#include "clts/metrics/bleu.hpp"
#include "clts/metrics/ngram.hpp"
#include "clts/metrics/sari.hpp"
#include "clts/metrics/scoring.hpp"
#include "clts/metrics/semantic.hpp"
#include "clts/metrics/token_embedder.hpp"
#include "clts/metrics/tokenize.hpp"
#include "oracle/ngram_oracle.hpp"
#include "support/local_server.hpp"
#include "support/temp_dir.hpp"

namespace clts::metrics {
namespace {

Tokens toks(const std::string& s) {
    std::istringstream in(s);
    Tokens out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

TEST(Tokenize, LowercasesAndSplitsPunctuation) {
    EXPECT_EQ(tokenize_for_metrics("The Cat, sat.", Language::en), (Tokens{"the", "cat", ",", "sat", "."}));
    EXPECT_EQ(tokenize_for_metrics("I don't pay 3.5 or 1,000!", Language::en),
              (Tokens{"i", "don't", "pay", "3.5", "or", "1,000", "!"}));
}

TEST(Tokenize, SplitsFrenchElision) {
    EXPECT_EQ(tokenize_for_metrics("L'homme d’affaires", Language::fr), (Tokens{"l'", "homme", "d'", "affaires"}));
}

TEST(NGram, MultisetOperations) {
    Vocabulary vocab;
    const auto a = vocab.ids(toks("a b a b"));
    const auto b = vocab.ids(toks("a b c"));
    const NGramMultiset ma(a, 1), mb(b, 1);
    EXPECT_EQ(ma.total(), 4);
    EXPECT_EQ(ma.intersect(mb).total(), 2);
    EXPECT_EQ(ma.unite(mb).total(), 5);
    EXPECT_EQ(ma.subtract(mb).total(), 2);
    EXPECT_EQ(ma.add(mb).total(), 7);
    EXPECT_EQ(NGramMultiset(a, 2).distinct(), 2u);
    EXPECT_EQ(NGramMultiset(a, 5).total(), 0);
}

TEST(Bleu, IdenticalIsHundredAndDisjointIsZero) {
    const auto h = toks("the quick brown fox jumps");
    EXPECT_EQ(bleu(std::vector<Tokens>{h}, std::vector<std::vector<Tokens>>{{h}}), 100.0);
    EXPECT_EQ(bleu(std::vector<Tokens>{toks("a b c d")}, std::vector<std::vector<Tokens>>{{toks("e f g h")}}), 0.0);
}

TEST(Bleu, ShortHypothesisUsesClosestReference) {
    // Orders 4 has no hypothesis n-grams, so its precision counts as 1.
    const std::vector<std::vector<Tokens>> refs = {{toks("the cat sat down"), toks("a cat sat")}};
    EXPECT_DOUBLE_EQ(bleu(std::vector<Tokens>{toks("the cat sat")}, refs), 100.0);
}

TEST(Bleu, BrevityPenaltyMatchesFormula) {
    const std::vector<std::vector<Tokens>> refs = {{toks("a b c d e f g h")}};
    const double expected = 100.0 * std::exp(1.0 - 8.0 / 4.0);
    EXPECT_NEAR(bleu(std::vector<Tokens>{toks("a b c d")}, refs), expected, 1e-12);
}

TEST(Bleu, ErrorsAndEmptyCorpus) {
    EXPECT_EQ(bleu(std::vector<Tokens>{}, std::vector<std::vector<Tokens>>{}), 0.0);
    EXPECT_THROW(bleu(std::vector<Tokens>{toks("a")}, std::vector<std::vector<Tokens>>{}), LengthMismatch);
    EXPECT_THROW(bleu_stats(toks("a"), {}), EmptyReference);
}

TEST(Bleu, SentenceLevelSmoothingStaysPositive) {
    const double s = sentence_bleu(toks("a b x y"), {toks("a b c d")});
    EXPECT_GT(s, 0.0);
    EXPECT_LT(s, 100.0);
}

TEST(Bleu, CorpusIsOrderIndependent) {
    std::vector<Tokens> hyps = {toks("a b c"), toks("d e f g"), toks("a a b")};
    std::vector<std::vector<Tokens>> refs = {{toks("a b c d")}, {toks("d e f")}, {toks("a b b")}};
    const double forward = bleu(hyps, refs);
    std::reverse(hyps.begin(), hyps.end());
    std::reverse(refs.begin(), refs.end());
    EXPECT_DOUBLE_EQ(bleu(hyps, refs), forward);
}

TEST(Sari, PublishedExample) {
    const auto source = toks("About 95 species are currently accepted .");
    const auto hyp = toks("About 95 you now get in .");
    const std::vector<Tokens> refs = {toks("About 95 species are currently known ."),
                                      toks("About 95 species are now accepted ."),
                                      toks("95 species are now accepted .")};
    EXPECT_NEAR(sentence_sari(source, hyp, refs), 26.827824116980747, 1e-9);
}

TEST(Sari, PerfectCopyAndPerfectDeletion) {
    EXPECT_DOUBLE_EQ(sentence_sari(toks("a b c"), toks("a b c"), {toks("a b c")}), 100.0);
    EXPECT_DOUBLE_EQ(sentence_sari(toks("a b c"), toks("a b"), {toks("a b")}), 100.0);
}

TEST(Sari, ComponentsAreBounded) {
    const auto c = sari_components(toks("a b c d"), toks("a x c"), {toks("a c"), toks("x d")});
    for (int n = 0; n < kMaxOrder; ++n) {
        EXPECT_GE(c.add_f1[n], 0.0);
        EXPECT_LE(c.add_f1[n], 1.0);
        EXPECT_GE(c.keep_f1[n], 0.0);
        EXPECT_LE(c.keep_f1[n], 1.0);
        EXPECT_GE(c.delete_precision[n], 0.0);
        EXPECT_LE(c.delete_precision[n], 1.0);
    }
}

TEST(Sari, CorpusIsMeanOfSentences) {
    const std::vector<Tokens> src = {toks("a b c"), toks("d e f")};
    const std::vector<Tokens> hyp = {toks("a b"), toks("d x")};
    const std::vector<std::vector<Tokens>> refs = {{toks("a b")}, {toks("d e")}};
    const double expected = (sentence_sari(src[0], hyp[0], refs[0]) + sentence_sari(src[1], hyp[1], refs[1])) / 2;
    EXPECT_DOUBLE_EQ(sari(src, hyp, refs), expected);
    EXPECT_THROW(sari(src, hyp, std::vector<std::vector<Tokens>>{{toks("a")}}), LengthMismatch);
}

// Random multi-reference inputs over a 4-symbol alphabet against the
// brute-force oracle.
TEST(OracleProperty, RandomMultiReferenceCases) {
    std::mt19937_64 rng(20240607);
    std::uniform_int_distribution<int> len(0, 7), sym(0, 3), nrefs(1, 3), nitems(1, 4);
    auto sentence = [&] {
        Tokens t;
        const int n = len(rng);
        for (int i = 0; i < n; ++i) t.push_back(std::string(1, static_cast<char>('a' + sym(rng))));
        return t;
    };
    for (int trial = 0; trial < 3000; ++trial) {
        std::vector<Tokens> hyps, srcs;
        std::vector<std::vector<Tokens>> refs;
        const int items = nitems(rng);
        for (int i = 0; i < items; ++i) {
            srcs.push_back(sentence());
            hyps.push_back(sentence());
            std::vector<Tokens> r;
            const int k = nrefs(rng);
            for (int j = 0; j < k; ++j) r.push_back(sentence());
            refs.push_back(r);
            ASSERT_NEAR(sentence_sari(srcs.back(), hyps.back(), r), oracle::sari(srcs.back(), hyps.back(), r), 1e-9);
        }
        ASSERT_NEAR(bleu(hyps, refs), oracle::bleu(hyps, refs), 1e-9);
    }
}

TEST(Semantic, GreedyMatchByHand) {
    Eigen::MatrixXd h(2, 2), r(2, 2);
    h << 1, 0, 1, 1;
    r << 1, 1, 0, 1;
    const auto m = greedy_match(h, r);
    const double expected = (1.0 + 1.0 / std::sqrt(2.0)) / 2.0;
    EXPECT_NEAR(m.precision, expected, 1e-15);
    EXPECT_NEAR(m.recall, expected, 1e-15);
    EXPECT_NEAR(m.f1, expected, 1e-15);
}

TEST(Semantic, IdenticalSequencesScoreOne) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Random(5, 8);
    const auto m = greedy_match(h, h);
    EXPECT_NEAR(m.f1, 1.0, 1e-12);
}

TEST(Semantic, NonPositiveScoresUseMinimum) {
    Eigen::MatrixXd h(1, 2), r(1, 2);
    h << 1, 0;
    r << -1, 0;
    const auto m = greedy_match(h, r);
    EXPECT_DOUBLE_EQ(m.f1, -1.0);
}

TEST(Semantic, Errors) {
    Eigen::MatrixXd empty(0, 3), a = Eigen::MatrixXd::Ones(2, 3), b = Eigen::MatrixXd::Ones(2, 4);
    EXPECT_THROW(greedy_match(empty, a), EmptySequence);
    EXPECT_THROW(greedy_match(a, b), DimensionMismatch);
}

TEST(TokenEmbedder, MockIsDeterministicPerToken) {
    MockTokenEmbedder embedder;
    const auto out = embedder.embed({"Le chat", "le chien"}, Language::fr);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0].tokens, (Tokens{"le", "chat"}));
    EXPECT_TRUE(out[0].vectors.row(0).isApprox(out[1].vectors.row(0)));
    EXPECT_LT(std::abs(out[0].vectors.row(1).normalized().dot(out[1].vectors.row(1).normalized())), 0.6);
}

TEST(TokenEmbedder, FileLookupByLanguage) {
    testing::TempDir dir;
    testing::write_file(dir / "emb.jsonl",
                        R"({"text": "hi", "lang": "en", "tokens": ["hi"], "vectors": [[1, 0]]})" "\n"
                        R"({"text": "hi", "tokens": ["hi"], "vectors": [[0, 1]]})" "\n");
    FileTokenEmbedder embedder((dir / "emb.jsonl").string());
    EXPECT_EQ(embedder.embed({"hi"}, Language::en)[0].vectors(0, 0), 1.0);
    EXPECT_EQ(embedder.embed({"hi"}, Language::fr)[0].vectors(0, 1), 1.0);
    EXPECT_THROW(embedder.embed({"unknown"}, Language::en), EmbeddingBackendError);
}

TEST(TokenEmbedder, HttpClient) {
    testing::LocalServer server("/tok", [](const nlohmann::json& req, const httplib::Request&) {
        nlohmann::json tokens = nlohmann::json::array(), vectors = nlohmann::json::array();
        for (const auto& t : req["texts"]) {
            tokens.push_back({t});
            vectors.push_back({{1.0, req["lang"] == "fr" ? 1.0 : 0.0}});
        }
        return std::pair{200, nlohmann::json{{"tokens", tokens}, {"vectors", vectors}}};
    });
    corpus::ServiceConfig config;
    config.endpoint = server.url("/tok");
    HttpTokenEmbedder embedder(config);
    const auto out = embedder.embed({"a", "b"}, Language::fr);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[1].vectors(0, 1), 1.0);
}

corpus::SentencePair make_pair(const std::string& id, const std::string& corpus) {
    corpus::SentencePair p;
    p.id = id;
    p.source = "The committee approved the extraordinary proposal.";
    p.references = {"Le comité a dit oui.", "Le comité accepte."};
    p.corpus_id = corpus;
    return p;
}

prompting::SystemOutput make_output(const std::string& pair_id, prompting::Strategy s, const std::string& hyp) {
    prompting::SystemOutput o;
    o.pair_id = pair_id;
    o.corpus_id = "c";
    o.strategy = s;
    o.model_id = "m";
    o.hypothesis = hyp;
    return o;
}

TEST(Scoring, ScoresRecordsAndAggregates) {
    const std::vector<corpus::SentencePair> pairs = {make_pair("1", "c"), make_pair("2", "c")};
    const std::vector<prompting::SystemOutput> outputs = {
        make_output("1", prompting::Strategy::comp_ts, "Le comité a dit oui."),
        make_output("2", prompting::Strategy::comp_ts, "Le comité accepte."),
        make_output("1", prompting::Strategy::direct, "Autre chose."),
    };
    MockTokenEmbedder embedder;
    const auto result = score_outputs(outputs, pairs, {{Language::fr, &embedder}});
    ASSERT_EQ(result.records.size(), 3u);
    EXPECT_NEAR(*result.records[0].semantic, 1.0, 1e-12);
    EXPECT_EQ(result.records[0].sari_source, "original_source");
    ASSERT_EQ(result.aggregates.size(), 2u);
    EXPECT_EQ(result.aggregates[0].strategy, "Direct");
    EXPECT_EQ(result.aggregates[1].n_items, 2u);
    EXPECT_DOUBLE_EQ(result.aggregates[1].bleu, 100.0);
}

TEST(Scoring, MissingEmbedderAndMissingPair) {
    const std::vector<corpus::SentencePair> pairs = {make_pair("1", "c")};
    const std::vector<prompting::SystemOutput> outputs = {make_output("1", prompting::Strategy::direct, "x")};
    const auto result = score_outputs(outputs, pairs, {});
    EXPECT_FALSE(result.records[0].semantic);
    EXPECT_EQ(result.records[0].semantic_reason, "no_embedder");
    EXPECT_FALSE(result.aggregates[0].semantic_f1);
    const std::vector<prompting::SystemOutput> orphan = {make_output("9", prompting::Strategy::direct, "x")};
    EXPECT_THROW(score_outputs(orphan, pairs, {}), MissingPair);
}

TEST(Scoring, CsvAndJsonRoundTrip) {
    std::vector<MetricAggregate> aggs = {{"c", "m", "Direct", 3, 12.5, 40.25, 0.75},
                                         {"c", "m", "CompTS", 3, 10.0, 38.0, std::nullopt}};
    std::stringstream ss;
    write_metric_csv(ss, aggs);
    const auto back = read_metric_csv(ss);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_DOUBLE_EQ(back[0].sari, 40.25);
    EXPECT_FALSE(back[1].semantic_f1);
    MetricRecord r{"1", "c", "Direct", "m", 1.5, 2.5, std::nullopt, "empty_hypothesis", "original_source"};
    EXPECT_EQ(metric_record_from_json(to_json(r)), r);
}

}  // namespace
}  // namespace clts::metrics
