#include <cstdlib>
#include <fstream>

#include <gtest/gtest.h>

#include "clts/common/error.hpp"
#include "clts/pipeline/config.hpp"
#include "clts/pipeline/manifest.hpp"
#include "clts/pipeline/report.hpp"
#include "clts/pipeline/stages.hpp"
#include "clts/prompting/backend.hpp"
#include "support/e2e.hpp"
#include "support/temp_dir.hpp"

namespace clts::pipeline {
namespace {

using testing::read_file;
using testing::TempDir;
using testing::write_file;

const char* kMinimal = R"(
[[corpora]]
id = "c"
path = "c.tsv"
format = "tsv"
direction = "en-fr"

[[backends]]
model = "m"
base_url = "mock:simplify"
)";

RunConfig parse(const std::string& extra, const std::string& base = kMinimal) {
    return parse_config(extra + "\n" + base, "/base");
}

TEST(Config, DefaultsAndResolution) {
    const auto c = parse("");
    EXPECT_EQ(c.corpora.size(), 1u);
    EXPECT_EQ(c.corpora[0].path, std::filesystem::path("/base/c.tsv"));
    EXPECT_EQ(c.strategies.size(), 5u);
    EXPECT_DOUBLE_EQ(c.thresholds.similarity, 0.6);
    EXPECT_TRUE(c.thresholds.filter_after_translation);
    EXPECT_EQ(c.services.embedder.endpoint, "mock:constant");
    EXPECT_EQ(c.output_dir, std::filesystem::path("/base/run"));
    EXPECT_EQ(c.hash.size(), 64u);
    EXPECT_NO_THROW(c.validate());
}

TEST(Config, OverridesAndServices) {
    const auto c = parse(R"(
strategies = ["Direct", "DecompST"]
seed = 9
[thresholds]
similarity = 0.7
filter_after_translation = false
long_word_min_letters = 6
[services]
token_embedder_fr = { endpoint = "http://localhost:9000/tok", key_env = "TOK_KEY", batch_size = 8 }
)");
    EXPECT_EQ(c.strategies.size(), 2u);
    EXPECT_EQ(c.seed, 9u);
    EXPECT_FALSE(c.thresholds.filter_after_translation);
    EXPECT_EQ(c.thresholds.features.long_word_min_letters, 6);
    EXPECT_EQ(c.services.token_embedder_fr.batch_size, 8u);
    EXPECT_EQ(c.services.token_embedder_fr.key_env, "TOK_KEY");
    EXPECT_EQ(c.services.token_embedder_en.endpoint, "mock:hash");
}

TEST(Config, RejectsInvalidInput) {
    EXPECT_THROW(parse("strategies = [\"Telepathy\"]"), ConfigError);
    EXPECT_THROW(parse("[thresholds]\nsimilarity = 1.5").validate(), ConfigError);
    EXPECT_THROW(parse("", "[[backends]]\nmodel = \"m\"\nbase_url = \"mock:\"\n").validate(), ConfigError);
    EXPECT_THROW(parse("", std::string(kMinimal) + "api_key = \"sk-123\"\n"), ConfigError);
    EXPECT_THROW(parse("this is not toml"), ConfigError);
    EXPECT_THROW(parse("", std::string(kMinimal) + "[[corpora]]\nid = \"c\"\npath = \"d\"\ndirection = \"en-fr\"\n").validate(),
                 ConfigError);
    EXPECT_THROW(parse("[[corpora]]\nid = \"m\"\npath = \"m\"\ndirection = \"en-en\"\nmonolingual = true\n").validate(),
                 ConfigError);
}

TEST(Manifest, SaveLoadAndIntegrity) {
    TempDir dir;
    write_file(dir / "stage/a.txt", "hello");
    RunManifest m;
    m.config_hash = "abc";
    m.seed = 4;
    StageRecord rec;
    rec.counts["n"] = 3;
    rec.artifacts.push_back(make_artifact(dir.path(), "a", "stage/a.txt"));
    m.stages["stage"] = rec;
    m.save(dir.path());

    const auto back = RunManifest::load(dir.path());
    EXPECT_EQ(back.config_hash, "abc");
    EXPECT_EQ(back.stage("stage").counts.at("n"), 3);
    EXPECT_EQ(back.stage("stage").artifacts[0].sha256,
              "2cf24dba5fb0a30e26e83b2ac5b9e29e1b161e5c1fa7425e73043362938b9824");
    EXPECT_TRUE(back.stage_intact(dir.path(), "stage"));
    write_file(dir / "stage/a.txt", "tampered");
    EXPECT_FALSE(back.stage_intact(dir.path(), "stage"));
    EXPECT_THROW(back.stage("nope"), MissingArtifact);
    EXPECT_THROW(back.artifact_path(dir.path(), "stage", "b"), MissingArtifact);
    EXPECT_TRUE(RunManifest::load(dir / "empty").stages.empty());
}

TEST(Report, BestPerColumnMarksTiesAndSkipsNaN) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const auto marks = best_per_column({{1, 5, nan}, {3, 5, nan}, {2, 4, nan}});
    EXPECT_EQ(marks[1][0], true);
    EXPECT_EQ(marks[0][0], false);
    EXPECT_EQ(marks[0][1], true);
    EXPECT_EQ(marks[1][1], true);
    for (const auto& row : marks) EXPECT_FALSE(row[2]);
}

TEST(Report, MetricTableBoldsOneCellPerColumn) {
    std::vector<metrics::MetricAggregate> aggs;
    const double bleu[] = {20, 15, 12, 18, 10}, sari[] = {40, 44, 41, 39, 42}, sem[] = {0.8, 0.7, 0.75, 0.79, 0.6};
    for (int i = 0; i < 5; ++i)
        aggs.push_back({"c", "m", prompting::to_string(prompting::kAllStrategies[i]), 10, bleu[i], sari[i], sem[i]});
    const auto md = render_metric_table("c", aggs);
    std::size_t bold = 0;
    for (auto pos = md.find("**"); pos != std::string::npos; pos = md.find("**", pos + 2)) ++bold;
    EXPECT_EQ(bold, 6u);  // three bold cells, two markers each
    EXPECT_NE(md.find("**20.00**"), std::string::npos);
    EXPECT_NE(md.find("**44.00**"), std::string::npos);
    EXPECT_NE(md.find("**0.80**"), std::string::npos);
    EXPECT_NE(md.find("T>S Comp."), std::string::npos);
}

class StagesTest : public ::testing::Test {
protected:
    void SetUp() override {
        config = load_config(testing::write_e2e_inputs(dir.path(), 6, 3));
        ctx = RunContext::from_config(config);
        ctx.clock = [] { return std::string("2024-01-01T00:00:00Z"); };
    }
    TempDir dir;
    RunConfig config;
    RunContext ctx;
};

TEST_F(StagesTest, FullRunProducesReportBundle) {
    testing::run_full_pipeline(config, ctx);
    const auto manifest = RunManifest::load(ctx.run_dir);
    for (const char* stage : {kStagePreprocess, kStageGenerate, kStageFeatures, kStageMetrics, kStageStats,
                              kStageIaa, kStageReport})
        EXPECT_TRUE(manifest.stage_intact(ctx.run_dir, stage)) << stage;
    EXPECT_EQ(manifest.stage(kStageGenerate).counts.at("outputs"), 60);
    EXPECT_EQ(manifest.stage(kStageGenerate).counts.at("backend_calls"), 84);
    const auto md = read_file(ctx.run_dir / "report/report.md");
    for (const char* heading : {"Automatic metrics", "Human evaluation", "Linguistic features", "Significance"})
        EXPECT_NE(md.find(heading), std::string::npos) << heading;
    EXPECT_NE(md.find("EN to FR"), std::string::npos);
    for (const char* f : {"metrics.csv", "features.csv", "significance.csv", "human_means.csv"})
        EXPECT_TRUE(std::filesystem::exists(ctx.run_dir / "report" / f)) << f;
}

TEST_F(StagesTest, ResumeSkipsBackendCalls) {
    cmd_preprocess(config, ctx);
    cmd_generate(config, ctx);
    ctx.resume = true;
    const auto again = cmd_generate(config, ctx);
    EXPECT_EQ(again.counts.at("backend_calls"), 0);
    EXPECT_EQ(again.counts.at("resumed"), 60);
}

TEST_F(StagesTest, ReportWithoutStatsNamesStage) {
    cmd_preprocess(config, ctx);
    cmd_generate(config, ctx);
    testing::annotate_outputs(config, ctx);
    cmd_features(config, ctx);
    cmd_metrics(config, ctx);
    try {
        cmd_report(config, ctx);
        FAIL();
    } catch (const MissingArtifact& e) {
        EXPECT_STREQ(e.what(), "stats");
    }
}

TEST_F(StagesTest, PreprocessFailsOnMissingCorpus) {
    config.corpora[0].path = dir / "missing.jsonl";
    EXPECT_THROW(cmd_preprocess(config, ctx), ConfigError);
}

TEST_F(StagesTest, FeaturesNeedFrequencyLists) {
    cmd_preprocess(config, ctx);
    cmd_generate(config, ctx);
    testing::annotate_outputs(config, ctx);
    config.resources_fr.frequencies.clear();
    EXPECT_THROW(cmd_features(config, ctx), MissingResource);
}

TEST_F(StagesTest, PreprocessRecordsTranslationProvenance) {
    cmd_preprocess(config, ctx);
    const auto manifest = RunManifest::load(ctx.run_dir);
    const auto kept = read_file(manifest.artifact_path(ctx.run_dir, kStagePreprocess, "kept:med"));
    EXPECT_NE(kept.find("translated_source"), std::string::npos);
    EXPECT_EQ(manifest.stage(kStagePreprocess).counts.at("kept:wiki"), 6);
}

int run_cli(const std::string& args) {
    const int status = std::system((std::string(CLTS_CLI_PATH) + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
}

TEST(Cli, ExitCodesByErrorCategory) {
    TempDir dir;
    write_file(dir / "cfg.toml", std::string(kMinimal));
    EXPECT_EQ(run_cli("preprocess --config " + (dir / "cfg.toml").string()), 1);
    EXPECT_EQ(run_cli("report --config " + (dir / "cfg.toml").string()), 2);
    EXPECT_EQ(run_cli("bogus --config x"), 1);
    EXPECT_EQ(run_cli("--help"), 0);
    write_file(dir / "c.tsv", "1\tA sentence.\tUne phrase.\n");
    write_file(dir / "fail.toml", std::string(kMinimal).replace(std::string(kMinimal).find("mock:simplify"), 13, "mock:fail"));
    EXPECT_EQ(run_cli("preprocess --config " + (dir / "fail.toml").string()), 0);
    EXPECT_EQ(run_cli("generate --config " + (dir / "fail.toml").string()), 3);
}

}  // namespace
}  // namespace clts::pipeline
