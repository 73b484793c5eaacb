#pragma once

// Rule-based text processing shared by labeling and summarization:
// tokenization, stopword filtering, plural folding, noun-phrase chunking and
// sentence segmentation.

#include <string>
#include <string_view>
#include <vector>

namespace cocite::text {

/// Lowercased tokens grouped by clause; clause and sentence punctuation,
/// digits-only tokens and single letters break clauses.
std::vector<std::vector<std::string>> clauses(std::string_view text);

/// True for articles, prepositions, pronouns, auxiliaries and the built-in
/// lexicon of common verbs and adverbs.
bool is_function_word(std::string_view token);

/// "-ies" -> "-y"; a trailing "s" is dropped when the word is longer than 3
/// characters and does not end in "ss", "us" or "is".
std::string fold_plural(std::string_view token);

/// Maximal runs of retained (non-function) tokens, folded, cut into pieces of
/// at most `max_words` tokens, joined by single spaces.
std::vector<std::string> extract_noun_phrases(std::string_view text, std::size_t max_words = 4);

/// The retained, folded tokens of `text` in order (the nominal-word
/// approximation used by the summarizer).
std::vector<std::string> content_tokens(std::string_view text);

/// Splits at . ! ? followed by whitespace and an uppercase letter or digit,
/// never inside parentheses or after a known abbreviation. A trailing
/// publisher copyright notice is dropped.
std::vector<std::string> segment_sentences(std::string_view text);

}  // namespace cocite::text
