#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "ptparl/model.hpp"

namespace ptparl::text {

// Lowercases and folds a UTF-8 string to ASCII: Portuguese diacritics are
// stripped (á→a, ç→c, ...), ordinal indicators map to their letter (ª→a),
// em/en dashes map to '-', and NBSP maps to a plain space. Bytes outside the
// known set pass through unchanged.
std::string fold(std::string_view s);

// Collapses runs of whitespace to single spaces and trims both ends.
std::string collapse_ws(std::string_view s);

std::string trim(std::string_view s);

// fold + collapse_ws; the canonical form used for pattern checks and the
// registry name index.
std::string norm_key(std::string_view s);

// fold, then keep only [a-z0-9]. Spaces and punctuation do not count toward
// edit distance, so "Alberto Alves" normalizes to a 12-character key.
std::string norm_name(std::string_view s);

// Removes a leading honorific ("O Sr.", "A Sr.ª", "A Sra.", with or without
// the final dot) and reports the gender it implies. Input and output are raw
// (unfolded) text; matching is fold-insensitive.
struct HonorificSplit {
    std::string rest;
    Gender gender = Gender::unknown;
    bool had_honorific = false;
};
HonorificSplit strip_honorific(std::string_view s);

// Splits a trailing parenthesized group: "Alberto Alves (AB)" ->
// {"Alberto Alves", "AB"}. Returns nullopt paren content when absent.
std::pair<std::string, std::optional<std::string>>
strip_trailing_paren(std::string_view s);

// True when a parenthesized group looks like a party code rather than a
// person's name: no internal space, or all-uppercase letters.
bool looks_like_party_code(std::string_view s);

std::size_t levenshtein(std::string_view a, std::string_view b);

// 1 - levenshtein/max(len); 0 when both strings are empty.
double similarity(std::string_view a, std::string_view b);

// Number of maximal non-whitespace runs.
int word_count(std::string_view s);

}  // namespace ptparl::text
