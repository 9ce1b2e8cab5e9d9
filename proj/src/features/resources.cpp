#include "clts/features/resources.hpp"

#include <charconv>
#include <fstream>

#include "clts/common/error.hpp"
#include "clts/common/utf8.hpp"

namespace clts::features {

FrequencyList FrequencyList::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MissingResource("frequency list not found: " + path.string());
    FrequencyList out;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (utf8::trim(line).empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw FormatError(row, "frequency list: expected word<TAB>rank");
        const std::string rank_text = utf8::trim(std::string_view(line).substr(tab + 1));
        long rank = 0;
        const auto [ptr, ec] = std::from_chars(rank_text.data(), rank_text.data() + rank_text.size(), rank);
        if (ec != std::errc{} || ptr != rank_text.data() + rank_text.size() || rank < 1)
            throw FormatError(row, "frequency list: invalid rank '" + rank_text + "'");
        out.add(line.substr(0, tab), rank);
    }
    if (out.size() == 0) throw MissingResource("frequency list is empty: " + path.string());
    return out;
}

void FrequencyList::add(const std::string& word, long rank) {
    const std::string key = utf8::to_lower(word);
    const auto [it, inserted] = ranks_.emplace(key, rank);
    if (!inserted) it->second = std::min(it->second, rank);
}

long FrequencyList::rank(const std::string& word) const {
    const auto it = ranks_.find(utf8::to_lower(word));
    return it == ranks_.end() ? 0 : it->second;
}

void ResourceSet::load(Language lang, const ResourcePaths& paths) {
    LanguageResources r;
    r.patterns = HyphenationPatterns::load(paths.patterns);
    r.frequencies = FrequencyList::load(paths.frequencies);
    insert(lang, std::move(r));
}

void ResourceSet::insert(Language lang, LanguageResources resources) {
    by_lang_.insert_or_assign(lang, std::move(resources));
}

const LanguageResources& ResourceSet::at(Language lang) const {
    const auto it = by_lang_.find(lang);
    if (it == by_lang_.end())
        throw MissingResource("no frequency list / hyphenation patterns loaded for language " + to_string(lang));
    return it->second;
}

std::filesystem::path bundled_patterns(const std::filesystem::path& resource_dir, Language lang) {
    return resource_dir / "hyphenation" / (lang == Language::en ? "hyph_en_US.dic" : "hyph_fr.dic");
}

}  // namespace clts::features
