#include "clts/features/extract.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "clts/common/error.hpp"
#include "clts/common/utf8.hpp"

namespace clts::features {

namespace {

bool one_of(const std::string& value, std::initializer_list<std::string_view> options) {
    return std::find(options.begin(), options.end(), value) != options.end();
}

double safe_div(double num, double den) { return den > 0 ? num / den : 0.0; }

std::size_t count_words(const Sentence& s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), is_word));
}

/// Children of each token, indexed by 1-based token index.
std::vector<std::vector<int>> children_of(const Sentence& s) {
    std::vector<std::vector<int>> children(s.size() + 1);
    for (const auto& t : s) children[static_cast<std::size_t>(t.head)].push_back(t.index);
    return children;
}

const AnnotatedToken* root_of(const Sentence& s) {
    for (const auto& t : s)
        if (t.head == 0) return &t;
    return nullptr;
}

bool is_past_perfect(const AnnotatedToken& verb, const Sentence& s,
                     const std::vector<int>& children, Language lang) {
    if (!verb.has_feature("VerbForm", "Part")) return false;
    if (lang == Language::en && !verb.has_feature("Tense", "Past")) return false;
    for (int c : children) {
        const auto& aux = s[static_cast<std::size_t>(c - 1)];
        if (aux.base_deprel() != "aux") continue;
        const std::string lemma = utf8::to_lower(aux.lemma);
        if (lang == Language::en) {
            if (lemma == "have" && aux.has_feature("Tense", "Past")) return true;
        } else if ((lemma == "avoir" || lemma == "être") && aux.has_feature("Tense", "Imp")) {
            return true;
        }
    }
    return false;
}

bool has_relative_clause(const Sentence& s, const std::vector<std::vector<int>>& children,
                         Language lang) {
    for (const auto& t : s) {
        if (t.deprel == "acl:relcl") return true;
        if (lang == Language::fr && t.deprel == "acl") {
            for (int c : children[static_cast<std::size_t>(t.index)])
                if (s[static_cast<std::size_t>(c - 1)].has_feature("PronType", "Rel")) return true;
        }
    }
    return false;
}

const std::set<std::string, std::less<>> kNegationLemmas = {"not", "n't", "ne", "pas", "plus",
                                                            "jamais"};

}  // namespace

bool is_word(const AnnotatedToken& token) { return utf8::contains_letter(token.form); }

int tree_depth(const Sentence& sentence) {
    validate_tree(sentence);
    std::vector<int> depth(sentence.size() + 1, 0);
    int best = 0;
    for (const auto& t : sentence) {
        // Walk up until a token with a known depth (or the root) is found.
        std::vector<int> path;
        int cur = t.index;
        while (cur != 0 && depth[static_cast<std::size_t>(cur)] == 0) {
            path.push_back(cur);
            cur = sentence[static_cast<std::size_t>(cur - 1)].head;
        }
        int d = cur == 0 ? 0 : depth[static_cast<std::size_t>(cur)];
        for (auto it = path.rbegin(); it != path.rend(); ++it)
            depth[static_cast<std::size_t>(*it)] = ++d;
        best = std::max(best, depth[static_cast<std::size_t>(t.index)]);
    }
    return best;
}

double flesch_reading_ease(Language lang, const ReadabilityInputs& in) {
    if (lang == Language::fr)
        return 207.0 - 1.015 * in.words_per_sentence - 73.6 * in.syllables_per_word;
    return 206.835 - 1.015 * in.words_per_sentence - 84.6 * in.syllables_per_word;
}

double flesch_kincaid_grade(const ReadabilityInputs& in) {
    return 0.39 * in.words_per_sentence + 11.8 * in.syllables_per_word - 15.59;
}

ReadabilityInputs readability_inputs(const AnnotatedDocument& doc,
                                     const HyphenationPatterns& patterns) {
    std::size_t words = 0;
    std::size_t syllables = 0;
    for (const auto& s : doc.sentences) {
        for (const auto& t : s) {
            if (!is_word(t)) continue;
            ++words;
            syllables += static_cast<std::size_t>(syllable_count(t.form, patterns));
        }
    }
    if (words == 0) throw EmptyDocument("document '" + doc.doc_id + "' has no words");
    return {static_cast<double>(words) / static_cast<double>(doc.sentences.size()),
            static_cast<double>(syllables) / static_cast<double>(words)};
}

double flesch_reading_ease(const AnnotatedDocument& doc, const HyphenationPatterns& patterns) {
    return flesch_reading_ease(doc.lang, readability_inputs(doc, patterns));
}

double flesch_kincaid_grade(const AnnotatedDocument& doc, const HyphenationPatterns& patterns) {
    return flesch_kincaid_grade(readability_inputs(doc, patterns));
}

EntityFeatures entity_distance_features(const AnnotatedDocument& doc) {
    struct Mention {
        std::size_t start;  // document-global token position, 1-based
        std::string identity;
    };
    EntityFeatures out;
    std::vector<Mention> mentions;
    double per_sentence_unique = 0;
    std::size_t position = 0;

    for (const auto& s : doc.sentences) {
        std::set<std::string> sentence_entities;
        std::string open_type;
        std::string surface;
        std::size_t open_start = 0;
        auto close = [&] {
            if (open_type.empty()) return;
            std::string identity = utf8::to_lower(surface);
            sentence_entities.insert(identity);
            mentions.push_back({open_start, std::move(identity)});
            open_type.clear();
            surface.clear();
        };
        for (const auto& t : s) {
            ++position;
            const std::string tag = t.ner.value_or("O");
            if (tag.size() < 2 || (tag[0] != 'B' && tag[0] != 'I') || tag[1] != '-') {
                close();
                continue;
            }
            const std::string type = tag.substr(2);
            const bool continues = tag[0] == 'I' && open_type == type;
            if (!continues) {
                if (tag[0] == 'I') ++out.repaired_tags;
                close();
                open_type = type;
                open_start = position;
                surface = t.form;
            } else {
                surface += ' ';
                surface += t.form;
            }
        }
        close();
        per_sentence_unique += static_cast<double>(sentence_entities.size());
    }

    std::set<std::string> unique;
    for (const auto& m : mentions) unique.insert(m.identity);
    out.unique_entities = static_cast<double>(unique.size());
    if (!doc.sentences.empty())
        out.unique_entities_average = per_sentence_unique / static_cast<double>(doc.sentences.size());
    out.entity_to_token_ratio = safe_div(static_cast<double>(mentions.size()), static_cast<double>(position));
    out.unique_to_total_entities =
        safe_div(static_cast<double>(unique.size()), static_cast<double>(mentions.size()));
    if (mentions.size() < 2) return out;

    double consecutive_sum = 0;
    for (std::size_t i = 1; i < mentions.size(); ++i)
        consecutive_sum += static_cast<double>(mentions[i].start - mentions[i - 1].start);
    out.consecutive_entity_distance = consecutive_sum / static_cast<double>(mentions.size() - 1);

    std::unordered_map<std::string, std::size_t> last_start;
    double same_sum = 0;
    std::size_t same_n = 0;
    double same_max = 0;
    for (const auto& m : mentions) {
        const auto it = last_start.find(m.identity);
        if (it != last_start.end()) {
            const double gap = static_cast<double>(m.start - it->second);
            same_sum += gap;
            ++same_n;
            same_max = std::max(same_max, gap);
        }
        last_start[m.identity] = m.start;
    }
    out.max_same_entity_distance = same_max;
    out.avg_same_entity_distance = safe_div(same_sum, static_cast<double>(same_n));
    return out;
}

FeatureVector extract_features(const AnnotatedDocument& doc, const ResourceSet& resources,
                               const FeatureConfig& config) {
    const LanguageResources& res = resources.at(doc.lang);
    if (doc.token_count() == 0) throw EmptyDocument("document '" + doc.doc_id + "' has no tokens");

    FeatureVector f;
    const double sentences = static_cast<double>(doc.sentences.size());
    std::size_t tokens = 0, words = 0, chars_total = 0, syllables = 0;
    std::size_t infrequent = 0, long_words = 0, content = 0, conjunctions = 0;
    std::size_t modifiers = 0, negations = 0, punctuation = 0, third_person = 0;
    std::size_t noun_phrases = 0, past_tense = 0, past_perfect = 0;
    std::size_t relative = 0, appositive = 0, conditional = 0, passive = 0, short_sentences = 0;
    double before_main_verb = 0;
    int max_depth = 0;
    std::unordered_set<std::string> forms;

    for (const auto& s : doc.sentences) {
        const auto children = children_of(s);
        bool has_appos = false, has_conditional = false, has_passive = false;
        for (const auto& t : s) {
            ++tokens;
            const std::string base = t.base_deprel();
            if (t.upos == "PUNCT") ++punctuation;
            if (t.has_feature("Tense", "Past")) ++past_tense;
            if (base == "appos") has_appos = true;
            if (t.deprel == "nsubj:pass" || t.deprel == "aux:pass") has_passive = true;
            if (base == "mark" && one_of(utf8::to_lower(t.lemma), {"if", "si"})) has_conditional = true;
            if (is_past_perfect(t, s, children[static_cast<std::size_t>(t.index)], doc.lang))
                ++past_perfect;
            if (!is_word(t)) continue;

            ++words;
            const std::string lower = utf8::to_lower(t.form);
            forms.insert(lower);
            const std::size_t letters = utf8::letter_count(t.form);
            chars_total += utf8::length(t.form);
            syllables += static_cast<std::size_t>(syllable_count(t.form, res.patterns));
            if (!res.frequencies.in_top(lower, config.infrequent_top_k)) ++infrequent;
            if (letters >= static_cast<std::size_t>(config.long_word_min_letters)) ++long_words;
            if (one_of(t.upos, {"NOUN", "PROPN", "VERB", "ADJ", "ADV"})) ++content;
            if (one_of(t.upos, {"CCONJ", "SCONJ"})) ++conjunctions;
            if (one_of(base, {"amod", "advmod", "nmod"})) ++modifiers;
            if (t.has_feature("Polarity", "Neg") ||
                (base == "advmod" && kNegationLemmas.contains(utf8::to_lower(t.lemma))))
                ++negations;
            if (t.upos == "PRON" && t.has_feature("Person", "3")) ++third_person;
            if (one_of(t.upos, {"NOUN", "PROPN", "PRON"}) &&
                !children[static_cast<std::size_t>(t.index)].empty())
                ++noun_phrases;
        }
        if (has_appos) ++appositive;
        if (has_conditional) ++conditional;
        if (has_passive) ++passive;
        if (has_relative_clause(s, children, doc.lang)) ++relative;
        if (count_words(s) <= static_cast<std::size_t>(config.short_sentence_max_words)) ++short_sentences;
        if (const auto* root = root_of(s); root && root->upos == "VERB")
            before_main_verb += root->index - 1;
        max_depth = std::max(max_depth, tree_depth(s));
    }

    const double w = static_cast<double>(words);
    f.lexical_richness = safe_div(static_cast<double>(forms.size()), w);
    f.infrequent_words_ratio = safe_div(static_cast<double>(infrequent), w);
    f.long_words_ratio = safe_div(static_cast<double>(long_words), w);
    f.content_words_ratio = safe_div(static_cast<double>(content), w);
    f.avg_word_length = safe_div(static_cast<double>(chars_total), w);

    f.words_before_main_verb = before_main_verb / sentences;
    f.noun_phrases_ratio = safe_div(static_cast<double>(noun_phrases), w);
    f.relative_clauses_ratio = static_cast<double>(relative) / sentences;
    f.appositions_ratio = static_cast<double>(appositive) / sentences;
    f.conditional_clauses_ratio = static_cast<double>(conditional) / sentences;
    f.conjunctions_ratio = safe_div(static_cast<double>(conjunctions), w);
    f.passive_voice_ratio = static_cast<double>(passive) / sentences;
    f.syntactic_tree_depth = max_depth;
    f.sentences_number = sentences;
    f.words_per_sentence = w / sentences;
    f.short_sentences_ratio = static_cast<double>(short_sentences) / sentences;

    if (words > 0) {
        const ReadabilityInputs in{w / sentences, static_cast<double>(syllables) / w};
        f.flesch_reading_ease = flesch_reading_ease(doc.lang, in);
        f.flesch_kincaid_grade = flesch_kincaid_grade(in);
        f.syllables_ratio = in.syllables_per_word;
    }

    const EntityFeatures e = entity_distance_features(doc);
    f.max_same_entity_distance = e.max_same_entity_distance;
    f.unique_entities = e.unique_entities;
    f.unique_entities_average = e.unique_entities_average;
    f.avg_same_entity_distance = e.avg_same_entity_distance;
    f.entity_to_token_ratio = e.entity_to_token_ratio;
    f.unique_to_total_entities = e.unique_to_total_entities;
    f.consecutive_entity_distance = e.consecutive_entity_distance;

    f.modifiers_ratio = safe_div(static_cast<double>(modifiers), w);
    f.negations_ratio = safe_div(static_cast<double>(negations), w);
    f.past_perfect_verbs = static_cast<double>(past_perfect) / sentences;
    f.past_tense_verbs = static_cast<double>(past_tense) / sentences;
    f.punctuation_ratio = static_cast<double>(punctuation) / static_cast<double>(tokens);
    f.third_person_pronouns_ratio = safe_div(static_cast<double>(third_person), w);
    return f;
}

}  // namespace clts::features
