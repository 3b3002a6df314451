#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ptparl {

// Everything tunable about a run: header grammar, aside lexicon, opening
// formulas, president patterns, matching thresholds. Journals vary over four
// decades, so these are data, not code. Serialized as JSON; the serialized
// form participates in pipeline cache keys.
struct RunConfig {
    // clean_headers: regexes matched against folded (lowercase, de-accented,
    // dash-normalized, space-collapsed) leading lines of each page.
    std::vector<std::string> header_patterns = {
        R"(^i serie\s*-\s*numero\s+\d+.*$)",
        R"(^\d+$)",
        R"(^\d{1,2} de [a-z]+ de \d{4}$)",
        R"(^diario da assembleia da republica.*$)",
    };

    // detect_debate_bounds: a line whose folded form contains one of these
    // substrings opens the session.
    std::vector<std::string> opening_formulas = {
        "esta aberta a sessao",
        "declaro aberta a sessao",
        "esta reaberta a sessao",
    };

    // clean_asides: a standalone line is an aside when its first word (after
    // an optional opening parenthesis) is one of these and the line ends with
    // a period (optionally closing-parenthesized). Folded forms.
    std::vector<std::string> aside_lexicon = {
        "aplausos", "risos", "protestos", "vozes", "pausa",
    };

    // resolve_president: folded pattern strings; a speaker string matches if
    // its similarity to a pattern is >= president_threshold, or if it extends
    // a pattern with a suffix ("em exercicio").
    std::vector<std::string> president_patterns = {
        "o sr. presidente",
        "a sr.a presidente",
        "a sra. presidente",
    };

    double president_threshold = 0.90;
    double match_threshold = 0.85;

    // tag_utterances: accepted dashes after the colon, and spacing tolerance
    // around colon and dash (0..max_separator_spaces on each side).
    std::vector<std::string> dash_variants = {"—", "–", "-"};
    int max_separator_spaces = 2;
    int max_speaker_length = 120;

    // stats: population standard deviation by default.
    bool sample_stddev = false;

    bool strict = false;

    // Canonical JSON of the effective configuration.
    std::string to_json() const;
    static RunConfig from_json(const std::string& json_text);
    static RunConfig load_file(const std::string& path);
};

// FNV-1a over bytes; used for cache keys and the corpus manifest.
std::uint64_t fnv1a(std::string_view bytes);
std::string fnv1a_hex(std::string_view bytes);

}  // namespace ptparl
