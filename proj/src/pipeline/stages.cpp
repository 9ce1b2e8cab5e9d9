#include "clts/pipeline/stages.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include "clts/common/error.hpp"
#include "clts/common/parallel.hpp"
#include "clts/corpus/corpus_io.hpp"
#include "clts/corpus/preprocess.hpp"
#include "clts/features/conllu.hpp"
#include "clts/features/extract.hpp"
#include "clts/features/feature_table.hpp"
#include "clts/metrics/scoring.hpp"
#include "clts/pipeline/report.hpp"
#include "clts/prompting/cache.hpp"
#include "clts/prompting/output.hpp"
#include "clts/prompting/runner.hpp"
#include "clts/stats/compare.hpp"
#include "clts/stats/iaa.hpp"
#include "clts/stats/ratings.hpp"

namespace clts::pipeline {

namespace fs = std::filesystem;

namespace {

/// Opens a stage: returns the previous record when resuming over intact
/// artifacts, else starts a fresh record.
class StageRun {
public:
    StageRun(const RunConfig& config, const RunContext& ctx, std::string name)
        : config_(config), ctx_(ctx), name_(std::move(name)) {
        fs::create_directories(ctx_.run_dir / name_);
        manifest_ = RunManifest::load(ctx_.run_dir);
        record_.started_at = now();
    }

    bool reusable() const { return ctx_.resume && manifest_.stage_intact(ctx_.run_dir, name_); }
    const StageRecord& previous() const { return manifest_.stage(name_); }
    const RunManifest& manifest() const { return manifest_; }
    StageRecord& record() { return record_; }

    /// Path for a new artifact inside this stage's directory.
    fs::path path(const std::string& file) const { return ctx_.run_dir / name_ / file; }

    void add_artifact(const std::string& role, const std::string& file) {
        record_.artifacts.push_back(make_artifact(ctx_.run_dir, role, fs::path(name_) / file));
    }

    StageRecord finish() {
        record_.finished_at = now();
        RunManifest latest = RunManifest::load(ctx_.run_dir);
        latest.config_hash = config_.hash;
        latest.seed = ctx_.seed;
        latest.stages[name_] = record_;
        latest.save(ctx_.run_dir);
        return record_;
    }

private:
    std::string now() const { return ctx_.clock ? ctx_.clock() : prompting::utc_timestamp(); }

    const RunConfig& config_;
    const RunContext& ctx_;
    std::string name_;
    RunManifest manifest_;
    StageRecord record_;
};

template <typename Row, typename ToJson>
void write_jsonl(const fs::path& path, const std::vector<Row>& rows, ToJson to_json_fn) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    for (const auto& r : rows) out << to_json_fn(r).dump() << '\n';
}

template <typename Fn>
void write_text(const fs::path& path, Fn&& fn) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    fn(out);
}

std::vector<corpus::SentencePair> load_pairs(const RunConfig& config, const RunContext& ctx,
                                             const RunManifest& manifest) {
    std::vector<corpus::SentencePair> pairs;
    for (const auto& spec : config.corpora) {
        const auto path = manifest.artifact_path(ctx.run_dir, kStagePreprocess, "kept:" + spec.id);
        std::ifstream in(path);
        if (!in) throw IoError("cannot read " + path.string());
        std::string line;
        std::size_t row = 0;
        while (std::getline(in, line)) {
            ++row;
            if (line.empty()) continue;
            try {
                pairs.push_back(corpus::pair_from_json(nlohmann::json::parse(line)));
            } catch (const std::exception& e) {
                throw FormatError(row, path.string() + ": " + e.what());
            }
        }
    }
    return pairs;
}

std::size_t strategy_rank(const std::string& name) {
    for (std::size_t i = 0; i < prompting::kAllStrategies.size(); ++i)
        if (prompting::to_string(prompting::kAllStrategies[i]) == name) return i;
    return prompting::kAllStrategies.size();
}

/// Canonical output order: corpus, model, strategy, pair.
void sort_outputs(std::vector<prompting::SystemOutput>& outputs) {
    std::stable_sort(outputs.begin(), outputs.end(), [](const auto& a, const auto& b) {
        return std::make_tuple(a.corpus_id, a.model_id, static_cast<int>(a.strategy), a.pair_id) <
               std::make_tuple(b.corpus_id, b.model_id, static_cast<int>(b.strategy), b.pair_id);
    });
}

std::string upper(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace

RunContext RunContext::from_config(const RunConfig& config) {
    RunContext ctx;
    ctx.run_dir = config.output_dir;
    ctx.seed = config.seed;
    ctx.workers = config.workers;
    ctx.clock = prompting::utc_timestamp;
    return ctx;
}

StageRecord cmd_preprocess(const RunConfig& config, const RunContext& ctx) {
    for (const auto& spec : config.corpora)
        if (!fs::exists(spec.path))
            throw ConfigError("corpus '" + spec.id + "': file " + spec.path.string() + " does not exist");
    StageRun stage(config, ctx, kStagePreprocess);
    if (stage.reusable()) return stage.previous();

    std::unique_ptr<corpus::Translator> translator;
    const auto embedder = corpus::make_embedder(config.services.embedder);
    auto& rec = stage.record();

    for (const auto& spec : config.corpora) {
        corpus::LoadOptions options;
        options.source_lang = spec.source_lang;
        options.target_lang = spec.monolingual ? spec.source_lang : spec.target_lang;
        options.corpus_id = spec.id;
        options.monolingual_origin = spec.monolingual;
        auto loaded = corpus::load_corpus(spec.path, spec.format, options).pairs;
        for (auto& p : loaded) p.corpus_id = spec.id;
        rec.counts["loaded:" + spec.id] = static_cast<long>(loaded.size());

        auto augment = [&](const std::vector<corpus::SentencePair>& pairs) {
            if (!spec.monolingual) return corpus::AugmentResult{pairs, {}};
            if (!translator) translator = corpus::make_translator(config.services.translator);
            return corpus::augment_with_translation(pairs, *translator, ctx.workers);
        };
        corpus::AugmentResult augmented;
        corpus::FilterResult filtered;
        std::vector<corpus::SentencePair> kept;
        if (config.thresholds.filter_after_translation) {
            augmented = augment(loaded);
            filtered = corpus::filter_by_similarity(augmented.pairs, *embedder, config.thresholds.similarity);
            kept = filtered.kept;
        } else {
            filtered = corpus::filter_by_similarity(loaded, *embedder, config.thresholds.similarity);
            augmented = augment(filtered.kept);
            kept = augmented.pairs;
        }

        const std::string id = spec.id;
        corpus::save_corpus(stage.path(id + ".kept.jsonl"), kept);
        corpus::save_corpus(stage.path(id + ".filtered.jsonl"), filtered.filtered);
        write_jsonl(stage.path(id + ".decisions.jsonl"), filtered.decisions,
                    [](const corpus::SimilarityDecision& d) { return corpus::to_json(d); });
        write_jsonl(stage.path(id + ".translation_failures.jsonl"), augmented.failures,
                    [](const corpus::TranslationFailure& f) {
                        return nlohmann::json{{"pair_id", f.pair_id}, {"reason", f.reason}};
                    });
        stage.add_artifact("kept:" + id, id + ".kept.jsonl");
        stage.add_artifact("filtered:" + id, id + ".filtered.jsonl");
        stage.add_artifact("decisions:" + id, id + ".decisions.jsonl");
        stage.add_artifact("translation_failures:" + id, id + ".translation_failures.jsonl");
        rec.counts["kept:" + id] = static_cast<long>(kept.size());
        rec.counts["filtered:" + id] = static_cast<long>(filtered.filtered.size());
        if (!augmented.failures.empty())
            rec.errors["translation_failures"] += static_cast<long>(augmented.failures.size());
    }
    return stage.finish();
}

StageRecord cmd_generate(const RunConfig& config, const RunContext& ctx) {
    StageRun stage(config, ctx, kStageGenerate);
    const auto pairs = load_pairs(config, ctx, stage.manifest());

    std::vector<std::unique_ptr<prompting::GenerationBackend>> owned;
    std::vector<prompting::GenerationBackend*> backends;
    for (const auto& b : config.backends) {
        owned.push_back(ctx.backend_factory(b));
        backends.push_back(owned.back().get());
    }

    const auto outputs_path = stage.path("outputs.jsonl");
    const auto errors_path = stage.path("errors.jsonl");
    if (!ctx.resume) {
        fs::remove(outputs_path);
        fs::remove(errors_path);
    }
    prompting::ResponseCache cache(stage.path("cache.jsonl"));
    prompting::MatrixOptions options;
    options.outputs_path = outputs_path;
    options.errors_path = errors_path;
    options.cache = &cache;
    if (ctx.clock) options.clock = ctx.clock;

    const auto result = prompting::run_matrix(pairs, config.strategies, backends, config.generation, options);
    if (!fs::exists(outputs_path)) std::ofstream(outputs_path).flush();
    if (!fs::exists(errors_path)) std::ofstream(errors_path).flush();

    auto& rec = stage.record();
    rec.counts["pairs"] = static_cast<long>(pairs.size());
    rec.counts["outputs"] = static_cast<long>(result.outputs.size());
    rec.counts["backend_calls"] = result.backend_calls;
    rec.counts["resumed"] = static_cast<long>(result.resumed);
    rec.counts["errors"] = static_cast<long>(result.errors.size());
    if (!result.errors.empty()) rec.errors["item_failures"] = static_cast<long>(result.errors.size());
    stage.add_artifact("outputs", "outputs.jsonl");
    stage.add_artifact("errors", "errors.jsonl");
    stage.add_artifact("cache", "cache.jsonl");
    return stage.finish();
}

StageRecord cmd_features(const RunConfig& config, const RunContext& ctx) {
    StageRun stage(config, ctx, kStageFeatures);
    if (stage.reusable()) return stage.previous();
    const auto outputs =
        prompting::load_outputs(stage.manifest().artifact_path(ctx.run_dir, kStageGenerate, "outputs"));
    std::unordered_map<std::string, const prompting::SystemOutput*> by_key;
    for (const auto& o : outputs) by_key.emplace(prompting::output_key(o), &o);

    struct Job {
        features::AnnotatedDocument doc;
        const prompting::SystemOutput* output;
    };
    std::vector<Job> jobs;
    std::set<Language> languages;
    for (const auto& spec : config.corpora) {
        for (const auto& path : spec.annotations) {
            if (!fs::exists(path))
                throw ConfigError("corpus '" + spec.id + "': annotation file " + path.string() + " does not exist");
            for (auto& doc : features::parse_conllu(path, spec.target_lang)) {
                const auto it = by_key.find(doc.doc_id);
                if (it == by_key.end())
                    throw MissingPair("annotated document '" + doc.doc_id + "' matches no generated output");
                languages.insert(doc.lang);
                jobs.push_back({std::move(doc), it->second});
            }
        }
    }

    features::ResourceSet resources;
    for (Language lang : languages) {
        const auto& spec = config.resources(lang);
        if (spec.frequencies.empty())
            throw MissingResource("no frequency list configured for " + to_string(lang) + " (resources." +
                                  to_string(lang) + ".frequencies)");
        resources.load(lang, {spec.patterns.empty() ? features::bundled_patterns(CLTS_RESOURCE_DIR, lang)
                                                    : spec.patterns,
                              spec.frequencies});
    }

    std::vector<features::FeatureRecord> records(jobs.size());
    std::vector<std::size_t> repaired(jobs.size());
    parallel_for(jobs.size(), ctx.workers, [&](std::size_t i) {
        const auto& job = jobs[i];
        records[i] = {job.output->pair_id, job.output->corpus_id, prompting::to_string(job.output->strategy),
                      job.output->model_id,
                      features::extract_features(job.doc, resources, config.thresholds.features)};
        repaired[i] = features::entity_distance_features(job.doc).repaired_tags;
    });
    std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
        return std::make_tuple(a.corpus_id, a.model, strategy_rank(a.strategy), a.strategy, a.doc_id) <
               std::make_tuple(b.corpus_id, b.model, strategy_rank(b.strategy), b.strategy, b.doc_id);
    });

    write_text(stage.path("features.csv"), [&](std::ostream& out) { features::write_feature_csv(out, records); });
    stage.add_artifact("features", "features.csv");
    auto& rec = stage.record();
    rec.counts["documents"] = static_cast<long>(records.size());
    long repaired_total = 0;
    for (auto n : repaired) repaired_total += static_cast<long>(n);
    if (repaired_total > 0) rec.errors["repaired_bio_tags"] = repaired_total;
    return stage.finish();
}

StageRecord cmd_metrics(const RunConfig& config, const RunContext& ctx) {
    StageRun stage(config, ctx, kStageMetrics);
    if (stage.reusable()) return stage.previous();
    const auto pairs = load_pairs(config, ctx, stage.manifest());
    auto outputs = prompting::load_outputs(stage.manifest().artifact_path(ctx.run_dir, kStageGenerate, "outputs"));
    sort_outputs(outputs);

    std::set<Language> languages;
    for (const auto& p : pairs) languages.insert(p.target_lang);
    std::map<Language, std::unique_ptr<metrics::TokenEmbedder>> owned;
    metrics::EmbedderByLanguage embedders;
    for (Language lang : languages) {
        owned[lang] = metrics::make_token_embedder(lang == Language::en ? config.services.token_embedder_en
                                                                        : config.services.token_embedder_fr);
        embedders[lang] = owned[lang].get();
    }
    const auto scored = metrics::score_outputs(outputs, pairs, embedders);

    write_text(stage.path("metrics.csv"), [&](std::ostream& out) { metrics::write_metric_csv(out, scored.aggregates); });
    write_jsonl(stage.path("records.jsonl"), scored.records,
                [](const metrics::MetricRecord& r) { return metrics::to_json(r); });
    stage.add_artifact("metrics", "metrics.csv");
    stage.add_artifact("records", "records.jsonl");
    auto& rec = stage.record();
    rec.counts["records"] = static_cast<long>(scored.records.size());
    rec.counts["aggregates"] = static_cast<long>(scored.aggregates.size());
    long missing = 0;
    for (const auto& r : scored.records) missing += r.semantic ? 0 : 1;
    if (missing > 0) rec.errors["semantic_missing"] = missing;
    return stage.finish();
}

StageRecord cmd_stats(const RunConfig& config, const RunContext& ctx) {
    StageRun stage(config, ctx, kStageStats);
    if (stage.reusable()) return stage.previous();
    const auto records =
        metrics::load_metric_records(stage.manifest().artifact_path(ctx.run_dir, kStageMetrics, "records"));
    const auto feature_rows =
        features::read_feature_csv(stage.manifest().artifact_path(ctx.run_dir, kStageFeatures, "features"));

    std::vector<stats::ScoreRow> rows;
    for (const auto& r : records) {
        rows.push_back({r.corpus_id, r.model_id, r.strategy, "bleu", r.bleu});
        rows.push_back({r.corpus_id, r.model_id, r.strategy, "sari", r.sari});
        if (r.semantic) rows.push_back({r.corpus_id, r.model_id, r.strategy, "semantic", *r.semantic});
    }
    for (const auto& f : feature_rows)
        for (const auto& field : features::kFeatureFields)
            rows.push_back({f.corpus_id, f.model, f.strategy, std::string(field.name), f.values.*field.member});

    const auto comparisons = stats::compare_strategies(rows);
    write_text(stage.path("significance.csv"),
               [&](std::ostream& out) { stats::write_significance_csv(out, comparisons); });
    stage.add_artifact("significance", "significance.csv");
    auto& rec = stage.record();
    rec.counts["tests"] = static_cast<long>(comparisons.size());
    long significant = 0, degenerate = 0;
    for (const auto& c : comparisons) {
        significant += c.test.significant ? 1 : 0;
        degenerate += c.test.degenerate ? 1 : 0;
    }
    rec.counts["significant"] = significant;
    rec.counts["degenerate"] = degenerate;
    return stage.finish();
}

StageRecord cmd_iaa(const RunConfig& config, const RunContext& ctx) {
    if (!config.iaa.ratings) throw ConfigError("iaa.ratings is not set in the config");
    if (!fs::exists(*config.iaa.ratings))
        throw ConfigError("ratings file " + config.iaa.ratings->string() + " does not exist");
    StageRun stage(config, ctx, kStageIaa);
    if (stage.reusable()) return stage.previous();
    const auto ratings = stats::load_ratings(*config.iaa.ratings);

    std::vector<stats::KappaSimResult> results;
    for (stats::Dimension d : stats::kAllDimensions)
        results.push_back(stats::iaa_simulation(ratings, d, {config.iaa.n_repeats, ctx.seed, ctx.workers}));
    const auto means = stats::human_eval_summary(ratings);

    write_text(stage.path("iaa.csv"), [&](std::ostream& out) { stats::write_iaa_csv(out, results); });
    write_text(stage.path("human_means.csv"), [&](std::ostream& out) { stats::write_human_means_csv(out, means); });
    stage.add_artifact("iaa", "iaa.csv");
    stage.add_artifact("human_means", "human_means.csv");
    auto& rec = stage.record();
    rec.counts["ratings"] = static_cast<long>(ratings.size());
    rec.counts["items"] = static_cast<long>(results.front().items);
    return stage.finish();
}

StageRecord cmd_report(const RunConfig& config, const RunContext& ctx) {
    const RunManifest manifest = RunManifest::load(ctx.run_dir);
    for (const char* required : {kStageMetrics, kStageFeatures, kStageStats}) (void)manifest.stage(required);

    StageRun stage(config, ctx, kStageReport);
    if (stage.reusable()) return stage.previous();
    ReportInputs inputs;
    {
        std::ifstream in(manifest.artifact_path(ctx.run_dir, kStageMetrics, "metrics"));
        inputs.metrics = metrics::read_metric_csv(in);
    }
    inputs.features = features::read_feature_csv(manifest.artifact_path(ctx.run_dir, kStageFeatures, "features"));
    {
        std::ifstream in(manifest.artifact_path(ctx.run_dir, kStageStats, "significance"));
        inputs.significance = stats::read_significance_csv(in);
    }
    if (manifest.has_stage(kStageIaa)) {
        std::ifstream means(manifest.artifact_path(ctx.run_dir, kStageIaa, "human_means"));
        inputs.human_means = stats::read_human_means_csv(means);
        std::ifstream agreement(manifest.artifact_path(ctx.run_dir, kStageIaa, "iaa"));
        inputs.agreement = stats::read_iaa_csv(agreement);
    }
    for (const auto& spec : config.corpora)
        inputs.directions[spec.id] = upper(to_string(spec.source_lang)) + " to " + upper(to_string(spec.target_lang));

    for (const auto& file : write_report(ctx.run_dir / kStageReport, inputs)) stage.add_artifact(file, file);
    stage.record().counts["files"] = static_cast<long>(stage.record().artifacts.size());
    return stage.finish();
}

}  // namespace clts::pipeline
