#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clts/common/language.hpp"

namespace clts::features {

struct AnnotatedToken {
    int index = 0;  // 1-based within the sentence
    std::string form;
    std::string lemma;
    std::string upos;
    int head = 0;  // 0 = root
    std::string deprel;
    std::map<std::string, std::string> morph;  // FEATS column
    std::optional<std::string> ner;             // BIO tag from MISC NER=..., "O" omitted

    bool has_feature(const std::string& key, const std::string& value) const {
        const auto it = morph.find(key);
        return it != morph.end() && it->second == value;
    }
    /// Relation without subtype: "nsubj:pass" -> "nsubj".
    std::string base_deprel() const { return deprel.substr(0, deprel.find(':')); }
};

using Sentence = std::vector<AnnotatedToken>;

struct AnnotatedDocument {
    std::string doc_id;
    Language lang = Language::en;
    std::vector<Sentence> sentences;

    std::size_t token_count() const;
};

/// Reads CoNLL-U: 10 tab-separated columns per token, blank lines between
/// sentences, `# newdoc id = ...` starting a document and an optional
/// `# lang = en|fr` comment setting its language. Multiword ranges (1-2) and
/// empty nodes (1.1) are skipped. Tokens before any newdoc comment form a
/// document named `default_doc_id`.
///
/// Throws SyntaxError(line, reason), CycleError or MultiRootError.
std::vector<AnnotatedDocument> parse_conllu(std::istream& in, Language default_lang,
                                            const std::string& default_doc_id = "doc");
std::vector<AnnotatedDocument> parse_conllu(const std::filesystem::path& path, Language default_lang);

/// Checks the single-root and acyclic head structure of a sentence.
/// `line` is used in error messages.
void validate_tree(const Sentence& sentence, std::size_t line = 0);

/// Writes documents back as CoNLL-U (unknown columns as "_").
void write_conllu(std::ostream& out, const std::vector<AnnotatedDocument>& docs);

}  // namespace clts::features
