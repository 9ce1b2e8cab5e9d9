#include "clts/features/conllu.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "clts/common/error.hpp"
#include "clts/common/utf8.hpp"

namespace clts::features {

std::size_t AnnotatedDocument::token_count() const {
    std::size_t n = 0;
    for (const auto& s : sentences) n += s.size();
    return n;
}

void validate_tree(const Sentence& sentence, std::size_t line) {
    const int n = static_cast<int>(sentence.size());
    int roots = 0;
    for (const auto& t : sentence) {
        if (t.head < 0 || t.head > n)
            throw SyntaxError(line, "head " + std::to_string(t.head) + " of token " +
                                        std::to_string(t.index) + " is outside the sentence");
        if (t.head == t.index)
            throw CycleError("line " + std::to_string(line) + ": token " + std::to_string(t.index) +
                             " is its own head");
        if (t.head == 0) ++roots;
    }
    if (roots > 1)
        throw MultiRootError("line " + std::to_string(line) + ": sentence has " + std::to_string(roots) +
                             " roots");
    for (const auto& t : sentence) {
        int cur = t.index;
        for (int steps = 0; cur != 0; ++steps) {
            if (steps > n)
                throw CycleError("line " + std::to_string(line) + ": head chain from token " +
                                 std::to_string(t.index) + " does not reach the root");
            cur = sentence[static_cast<std::size_t>(cur - 1)].head;
        }
    }
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
        if (pos == std::string::npos) return out;
        start = pos + 1;
    }
}

bool parse_int(const std::string& s, int& out) {
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

std::string comment_value(const std::string& line, const std::string& key) {
    // "# key = value" or "# key value"
    std::string rest = utf8::trim(std::string_view(line).substr(1));
    if (rest.rfind(key, 0) != 0) return {};
    rest = utf8::trim(std::string_view(rest).substr(key.size()));
    if (!rest.empty() && rest.front() == '=') rest = utf8::trim(std::string_view(rest).substr(1));
    return rest;
}

class Parser {
public:
    Parser(Language default_lang, std::string default_doc_id)
        : default_lang_(default_lang), default_doc_id_(std::move(default_doc_id)) {}

    void line(const std::string& raw, std::size_t lineno) {
        std::string text = raw;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (utf8::trim(text).empty()) {
            end_sentence();
            return;
        }
        if (text.front() == '#') {
            comment(text, lineno);
            return;
        }
        token(text, lineno);
    }

    std::vector<AnnotatedDocument> finish() {
        end_sentence();
        return std::move(docs_);
    }

private:
    void comment(const std::string& text, std::size_t lineno) {
        if (text.rfind("# newdoc", 0) == 0) {
            end_sentence();
            AnnotatedDocument doc;
            doc.doc_id = comment_value(text, "newdoc id");
            if (doc.doc_id.empty()) doc.doc_id = default_doc_id_ + std::to_string(docs_.size() + 1);
            doc.lang = default_lang_;
            docs_.push_back(std::move(doc));
            return;
        }
        if (const auto lang = comment_value(text, "lang"); !lang.empty()) {
            try {
                current_doc().lang = parse_language(lang);
            } catch (const UnsupportedLanguage& e) {
                throw SyntaxError(lineno, e.what());
            }
        }
    }

    void token(const std::string& text, std::size_t lineno) {
        const auto cols = split(text, '\t');
        if (cols.size() != 10)
            throw SyntaxError(lineno, "expected 10 tab-separated columns, found " + std::to_string(cols.size()));
        const std::string& id = cols[0];
        if (id.find('-') != std::string::npos || id.find('.') != std::string::npos) return;

        AnnotatedToken tok;
        if (!parse_int(id, tok.index) || tok.index < 1)
            throw SyntaxError(lineno, "invalid token id '" + id + "'");
        if (tok.index != static_cast<int>(sentence_.size()) + 1)
            throw SyntaxError(lineno, "token id " + id + " out of sequence");
        tok.form = cols[1];
        tok.lemma = cols[2];
        tok.upos = cols[3];
        if (!parse_int(cols[6], tok.head) || tok.head < 0)
            throw SyntaxError(lineno, "invalid head '" + cols[6] + "'");
        tok.deprel = cols[7];
        if (cols[5] != "_") {
            for (const auto& kv : split(cols[5], '|')) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos || eq == 0)
                    throw SyntaxError(lineno, "malformed feature '" + kv + "'");
                tok.morph[kv.substr(0, eq)] = kv.substr(eq + 1);
            }
        }
        if (cols[9] != "_") {
            for (const auto& kv : split(cols[9], '|')) {
                if (kv.rfind("NER=", 0) == 0) {
                    const std::string tag = kv.substr(4);
                    if (tag != "O" && !tag.empty()) tok.ner = tag;
                }
            }
        }
        if (sentence_.empty()) sentence_start_ = lineno;
        sentence_.push_back(std::move(tok));
    }

    void end_sentence() {
        if (sentence_.empty()) return;
        const int n = static_cast<int>(sentence_.size());
        for (const auto& t : sentence_)
            if (t.head > n)
                throw SyntaxError(sentence_start_ + static_cast<std::size_t>(t.index) - 1,
                                  "head " + std::to_string(t.head) + " outside sentence of length " +
                                      std::to_string(n));
        validate_tree(sentence_, sentence_start_);
        current_doc().sentences.push_back(std::move(sentence_));
        sentence_.clear();
    }

    AnnotatedDocument& current_doc() {
        if (docs_.empty()) {
            AnnotatedDocument doc;
            doc.doc_id = default_doc_id_;
            doc.lang = default_lang_;
            docs_.push_back(std::move(doc));
        }
        return docs_.back();
    }

    Language default_lang_;
    std::string default_doc_id_;
    std::vector<AnnotatedDocument> docs_;
    Sentence sentence_;
    std::size_t sentence_start_ = 0;
};

}  // namespace

std::vector<AnnotatedDocument> parse_conllu(std::istream& in, Language default_lang,
                                            const std::string& default_doc_id) {
    Parser parser(default_lang, default_doc_id);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) parser.line(line, ++lineno);
    return parser.finish();
}

std::vector<AnnotatedDocument> parse_conllu(const std::filesystem::path& path, Language default_lang) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    return parse_conllu(in, default_lang, path.stem().string());
}

void write_conllu(std::ostream& out, const std::vector<AnnotatedDocument>& docs) {
    for (const auto& doc : docs) {
        out << "# newdoc id = " << doc.doc_id << '\n';
        out << "# lang = " << to_string(doc.lang) << '\n';
        for (const auto& sentence : doc.sentences) {
            for (const auto& t : sentence) {
                std::string feats;
                for (const auto& [k, v] : t.morph) feats += (feats.empty() ? "" : "|") + k + "=" + v;
                out << t.index << '\t' << t.form << '\t' << (t.lemma.empty() ? "_" : t.lemma) << '\t'
                    << (t.upos.empty() ? "_" : t.upos) << "\t_\t" << (feats.empty() ? "_" : feats) << '\t'
                    << t.head << '\t' << (t.deprel.empty() ? "_" : t.deprel) << "\t_\t"
                    << (t.ner ? "NER=" + *t.ner : std::string("_")) << '\n';
            }
            out << '\n';
        }
    }
}

}  // namespace clts::features
