#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "clts/common/language.hpp"

namespace clts::metrics {

using Tokens = std::vector<std::string>;

/// Tokenizer used by BLEU/SARI. Lowercases, splits every punctuation mark
/// into its own token, keeps digit groups like "3.5" and "1,000" whole, keeps
/// intra-word apostrophes in English ("don't") and splits French elision
/// clitics ("l'homme" -> "l'", "homme"). Typographic apostrophes are
/// normalised to '.
///
/// Not to be confused with the annotation-driven tokens used by the
/// feature extractor.
Tokens tokenize_for_metrics(std::string_view text, Language lang);

}  // namespace clts::metrics
