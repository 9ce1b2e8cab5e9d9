#include "clts/corpus/corpus_io.hpp"

#include <fstream>
#include <map>
#include <stdexcept>

#include "clts/common/error.hpp"
#include "clts/common/utf8.hpp"

namespace clts::corpus {

CorpusFormat parse_corpus_format(const std::string& text) {
    if (text == "jsonl") return CorpusFormat::jsonl;
    if (text == "tsv") return CorpusFormat::tsv;
    throw ConfigError("unknown corpus format '" + text + "' (expected jsonl or tsv)");
}

namespace {

class RowSink {
public:
    RowSink(const LoadOptions& options, LoadResult& result) : options_(options), result_(result) {}

    void reject(std::size_t row, const std::string& reason) {
        if (options_.strict) throw FormatError(row, reason);
        result_.rejected.push_back({row, reason});
    }

private:
    const LoadOptions& options_;
    LoadResult& result_;
};

void load_jsonl(std::istream& in, const LoadOptions& options, LoadResult& result) {
    RowSink sink(options, result);
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (utf8::trim(line).empty()) continue;
        try {
            result.pairs.push_back(pair_from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            sink.reject(row, std::string("invalid JSON: ") + e.what());
        } catch (const std::invalid_argument& e) {
            sink.reject(row, e.what());
        } catch (const UnsupportedLanguage& e) {
            sink.reject(row, e.what());
        }
    }
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto tab = line.find('\t', start);
        out.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
        if (tab == std::string::npos) break;
        start = tab + 1;
    }
    return out;
}

void load_tsv(std::istream& in, const LoadOptions& options, LoadResult& result) {
    RowSink sink(options, result);
    std::map<std::string, std::size_t> index;  // id -> position in result.pairs
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (utf8::trim(line).empty()) continue;
        const auto cols = split_tabs(line);
        if (row == 1 && cols.size() == 3 && cols[0] == "id" && cols[1] == "source" &&
            cols[2] == "reference")
            continue;
        if (cols.size() != 3) {
            sink.reject(row, "expected 3 tab-separated columns, found " + std::to_string(cols.size()));
            continue;
        }
        const std::string id = utf8::trim(cols[0]);
        if (id.empty() || utf8::trim(cols[1]).empty() || utf8::trim(cols[2]).empty()) {
            sink.reject(row, "empty field");
            continue;
        }
        if (auto it = index.find(id); it != index.end()) {
            auto& pair = result.pairs[it->second];
            if (pair.source != cols[1]) {
                sink.reject(row, "id '" + id + "' repeated with a different source");
                continue;
            }
            pair.references.push_back(cols[2]);
            continue;
        }
        SentencePair pair;
        pair.id = id;
        pair.source = cols[1];
        pair.references = {cols[2]};
        pair.source_lang = options.source_lang;
        pair.target_lang = options.target_lang;
        pair.corpus_id = options.corpus_id;
        pair.split = options.split;
        pair.monolingual_origin = options.monolingual_origin;
        if (const auto err = validation_error(pair); !err.empty()) {
            sink.reject(row, err);
            continue;
        }
        index.emplace(id, result.pairs.size());
        result.pairs.push_back(std::move(pair));
    }
}

}  // namespace

LoadResult load_corpus(const std::filesystem::path& path, CorpusFormat format,
                       const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read corpus file " + path.string());
    LoadResult result;
    if (format == CorpusFormat::jsonl) load_jsonl(in, options, result);
    else load_tsv(in, options, result);
    if (result.pairs.empty()) throw EmptyCorpus("no valid sentence pairs in " + path.string());
    return result;
}

void save_corpus(const std::filesystem::path& path, const std::vector<SentencePair>& pairs) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write corpus file " + path.string());
    for (const auto& p : pairs) out << to_json(p).dump() << '\n';
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace clts::corpus
