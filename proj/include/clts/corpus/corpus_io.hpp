#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "clts/corpus/sentence_pair.hpp"

namespace clts::corpus {

enum class CorpusFormat { jsonl, tsv };

CorpusFormat parse_corpus_format(const std::string& text);

struct LoadOptions {
    /// Strict loading throws FormatError at the first bad row; lenient
    /// loading skips it and records it in LoadResult::rejected.
    bool strict = true;

    // TSV rows carry no metadata, so it comes from here.
    Language source_lang = Language::en;
    Language target_lang = Language::fr;
    std::string corpus_id = "corpus";
    Split split = Split::test;
    bool monolingual_origin = false;
};

struct RejectedRow {
    std::size_t row;  // 1-based line number
    std::string reason;
};

struct LoadResult {
    std::vector<SentencePair> pairs;
    std::vector<RejectedRow> rejected;
};

/// Reads and validates a corpus file.
///
/// JSONL: one pair object per line; blank lines are ignored.
/// TSV: `id<TAB>source<TAB>reference`, an optional header line with exactly
/// those names, and rows sharing an id merged into one multi-reference pair
/// (the first row's source wins; a conflicting source is a row error).
///
/// Throws IoError, FormatError(row, reason) or EmptyCorpus.
LoadResult load_corpus(const std::filesystem::path& path, CorpusFormat format,
                       const LoadOptions& options = {});

/// Writes pairs as JSONL. Throws IoError.
void save_corpus(const std::filesystem::path& path, const std::vector<SentencePair>& pairs);

}  // namespace clts::corpus
