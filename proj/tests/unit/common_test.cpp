#include <atomic>
#include <sstream>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "clts/common/csv.hpp"
#include "clts/common/error.hpp"
#include "clts/common/hash.hpp"
#include "clts/common/language.hpp"
#include "clts/common/parallel.hpp"
#include "clts/common/retry.hpp"
#include "clts/common/utf8.hpp"
#include "clts/common/vector_math.hpp"

namespace clts {
namespace {

TEST(Utf8, DecodesAndLowercasesLatin) {
    EXPECT_EQ(utf8::length("éléphant"), 8u);
    EXPECT_EQ(utf8::to_lower("ÉLÈVE Œuvre"), "élève œuvre");
    EXPECT_EQ(utf8::letter_count("l'homme, 42"), 6u);
    EXPECT_EQ(utf8::letters_lower("Aujourd'hui"), "aujourdhui");
    EXPECT_TRUE(utf8::contains_letter("3a"));
    EXPECT_FALSE(utf8::contains_letter("3.5,"));
}

TEST(Utf8, InvalidBytesBecomeReplacementCharacter) {
    const auto cps = utf8::decode(std::string("a\xff" "b"));
    ASSERT_EQ(cps.size(), 3u);
    EXPECT_EQ(cps[1], U'�');
}

TEST(Utf8, EncodeRoundTrips) {
    const std::string text = "Ça coûte 5 €, naïve";
    EXPECT_EQ(utf8::encode(utf8::decode(text)), text);
}

TEST(Csv, EscapesAndReadsQuotedFields) {
    std::ostringstream out;
    csv::write_row(out, {"plain", "with,comma", "with \"quote\"", "multi\nline"});
    std::istringstream in(out.str());
    std::vector<std::string> fields;
    std::size_t line = 0;
    ASSERT_TRUE(csv::read_row(in, fields, line));
    EXPECT_EQ(fields, (std::vector<std::string>{"plain", "with,comma", "with \"quote\"", "multi\nline"}));
    EXPECT_EQ(line, 2u);
    EXPECT_FALSE(csv::read_row(in, fields, line));
}

TEST(Csv, FormatsFixedPrecision) {
    EXPECT_EQ(csv::format_number(1.0 / 3.0), "0.333333");
    EXPECT_EQ(csv::format_number(2.5, 2), "2.50");
}

TEST(Hash, Sha256KnownVectors) {
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Hash, Fnv1aKnownVector) {
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
}

TEST(Language, ParsesCodes) {
    EXPECT_EQ(parse_language("en"), Language::en);
    EXPECT_EQ(parse_language("fr"), Language::fr);
    EXPECT_THROW(parse_language("de"), UnsupportedLanguage);
    EXPECT_EQ(other_language(Language::en), Language::fr);
}

TEST(VectorMath, CosineOfPythagoreanVectorsIsExact) {
    Eigen::Vector2d a(1, 0), b(3, 4);
    EXPECT_DOUBLE_EQ(cosine_similarity(a, b), 0.6);
}

TEST(VectorMath, CosineErrors) {
    Eigen::VectorXd a(2), b(3), z = Eigen::VectorXd::Zero(2);
    a << 1, 2;
    b << 1, 2, 3;
    EXPECT_THROW(cosine_similarity(a, b), DimensionMismatch);
    EXPECT_THROW(cosine_similarity(a, z), ZeroNormVector);
}

TEST(VectorMath, NormalizedRowsHaveUnitNorm) {
    Eigen::MatrixXd m(2, 3);
    m << 1, 2, 2, 0, 3, 4;
    const auto n = normalized_rows(m);
    EXPECT_NEAR(n.row(0).norm(), 1.0, 1e-15);
    EXPECT_NEAR(n(1, 1), 0.6, 1e-15);
}

TEST(Parallel, VisitsEveryIndexOnce) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), 8, [&](std::size_t i) { hits[i]++; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(Parallel, RethrowsFirstFailure) {
    EXPECT_THROW(parallel_for(100, 4,
                              [](std::size_t i) {
                                  if (i == 37) throw InvalidArgument("boom");
                              }),
                 InvalidArgument);
}

TEST(Retry, RetriesThenSucceeds) {
    RetryPolicy policy{3, std::chrono::milliseconds{0}, std::chrono::milliseconds{0}};
    int calls = 0;
    const int result = with_retries<BackendError>(policy, 1, [&] {
        if (++calls < 3) throw BackendError("transient");
        return 7;
    });
    EXPECT_EQ(result, 7);
    EXPECT_EQ(calls, 3);
}

TEST(Retry, GivesUpAfterMaxRetries) {
    RetryPolicy policy{2, std::chrono::milliseconds{0}, std::chrono::milliseconds{0}};
    int calls = 0;
    EXPECT_THROW(with_retries<BackendError>(policy, 1, [&]() -> int {
                     ++calls;
                     throw BackendError("down");
                 }),
                 BackendError);
    EXPECT_EQ(calls, 3);
}

TEST(Retry, BackoffIsBoundedByCap) {
    RetryPolicy policy{5, std::chrono::milliseconds{100}, std::chrono::milliseconds{250}};
    for (int attempt = 0; attempt < 6; ++attempt) {
        const auto d = backoff_delay(policy, attempt, 42);
        EXPECT_GE(d.count(), 0);
        EXPECT_LE(d.count(), std::min<long>(250, 100L << attempt));
    }
}

TEST(Errors, CategoriesMapToExitCodes) {
    EXPECT_EQ(ConfigError("x").exit_code(), 1);
    EXPECT_EQ(EmptyCorpus("x").exit_code(), 2);
    EXPECT_EQ(BackendError("x").exit_code(), 3);
    const FormatError e(7, "bad");
    EXPECT_EQ(e.row(), 7u);
    EXPECT_STREQ(e.what(), "row 7: bad");
}

}  // namespace
}  // namespace clts
