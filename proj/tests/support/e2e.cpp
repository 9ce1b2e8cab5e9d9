#include "support/e2e.hpp"

#include <fstream>

#include "clts/corpus/corpus_io.hpp"
#include "clts/features/conllu.hpp"
#include "clts/prompting/output.hpp"
#include "support/synthetic.hpp"
#include "support/temp_dir.hpp"

namespace clts::testing {

namespace fs = std::filesystem;

fs::path write_e2e_inputs(const fs::path& root, std::size_t items_per_corpus, std::uint64_t seed) {
    fs::create_directories(root / "data");
    corpus::save_corpus(root / "data/wiki.jsonl",
                        synthetic_pairs(items_per_corpus, "wiki", Language::en, Language::fr, seed));
    auto med = synthetic_pairs(items_per_corpus, "med", Language::fr, Language::fr, seed + 1);
    for (auto& p : med) p.monolingual_origin = true;
    corpus::save_corpus(root / "data/med.jsonl", med);
    write_frequency_list(root / "data/freq_en.tsv", Language::en);
    write_frequency_list(root / "data/freq_fr.tsv", Language::fr);
    write_ratings(root / "data/ratings.csv", 70, 3, seed + 2);

    const auto config = root / "run.toml";
    write_file(config, R"(seed = )" + std::to_string(seed) + R"(
workers = 4
output_dir = "run"

[[corpora]]
id = "wiki"
path = "data/wiki.jsonl"
format = "jsonl"
direction = "en-fr"
annotations = ["annotations/wiki.conllu"]

[[corpora]]
id = "med"
path = "data/med.jsonl"
format = "jsonl"
direction = "fr-en"
monolingual = true
annotations = ["annotations/med.conllu"]

[[backends]]
model = "mock-simplifier"
base_url = "mock:simplify"

[thresholds]
similarity = 0.6
infrequent_top_k = 10

[generation]
retry_base_delay_ms = 0

[services]
translator = "mock:identity"
embedder = "mock:constant"
token_embedder = "mock:hash"

[resources.en]
frequencies = "data/freq_en.tsv"

[resources.fr]
frequencies = "data/freq_fr.tsv"

[iaa]
ratings = "data/ratings.csv"
n_repeats = 200
)");
    return config;
}

void annotate_outputs(const pipeline::RunConfig& config, const pipeline::RunContext& ctx) {
    const auto manifest = pipeline::RunManifest::load(ctx.run_dir);
    const auto outputs =
        prompting::load_outputs(manifest.artifact_path(ctx.run_dir, pipeline::kStageGenerate, "outputs"));
    for (const auto& spec : config.corpora) {
        std::vector<prompting::SystemOutput> mine;
        for (const auto& o : outputs)
            if (o.corpus_id == spec.id) mine.push_back(o);
        for (const auto& path : spec.annotations) {
            fs::create_directories(path.parent_path());
            std::ofstream out(path);
            features::write_conllu(out, naive_annotate(mine, spec.target_lang));
        }
    }
}

void run_full_pipeline(const pipeline::RunConfig& config, const pipeline::RunContext& ctx) {
    pipeline::cmd_preprocess(config, ctx);
    pipeline::cmd_generate(config, ctx);
    annotate_outputs(config, ctx);
    pipeline::cmd_features(config, ctx);
    pipeline::cmd_metrics(config, ctx);
    pipeline::cmd_stats(config, ctx);
    pipeline::cmd_iaa(config, ctx);
    pipeline::cmd_report(config, ctx);
}

}  // namespace clts::testing
