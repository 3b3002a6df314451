#include "ptparl/textnorm.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <vector>

namespace ptparl::text {

namespace {

// Latin-1 supplement folding for bytes following 0xC3 in UTF-8.
char fold_c3(unsigned char b) {
    // 0xC3 0x80..0xBF covers À..ÿ
    switch (b) {
        case 0x80: case 0x81: case 0x82: case 0x83: case 0x84: case 0x85:
        case 0xA0: case 0xA1: case 0xA2: case 0xA3: case 0xA4: case 0xA5:
            return 'a';
        case 0x87: case 0xA7:
            return 'c';
        case 0x88: case 0x89: case 0x8A: case 0x8B:
        case 0xA8: case 0xA9: case 0xAA: case 0xAB:
            return 'e';
        case 0x8C: case 0x8D: case 0x8E: case 0x8F:
        case 0xAC: case 0xAD: case 0xAE: case 0xAF:
            return 'i';
        case 0x91: case 0xB1:
            return 'n';
        case 0x92: case 0x93: case 0x94: case 0x95: case 0x96:
        case 0xB2: case 0xB3: case 0xB4: case 0xB5: case 0xB6:
            return 'o';
        case 0x99: case 0x9A: case 0x9B: case 0x9C:
        case 0xB9: case 0xBA: case 0xBB: case 0xBC:
            return 'u';
        default:
            return 0;
    }
}

}  // namespace

std::string fold(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (c < 0x80) {
            out.push_back(static_cast<char>(std::tolower(c)));
            continue;
        }
        if (c == 0xC3 && i + 1 < s.size()) {
            char f = fold_c3(static_cast<unsigned char>(s[i + 1]));
            if (f) {
                out.push_back(f);
                ++i;
                continue;
            }
        }
        if (c == 0xC2 && i + 1 < s.size()) {
            unsigned char b = static_cast<unsigned char>(s[i + 1]);
            if (b == 0xAA) { out.push_back('a'); ++i; continue; }  // ª
            if (b == 0xBA) { out.push_back('o'); ++i; continue; }  // º
            if (b == 0xA0) { out.push_back(' '); ++i; continue; }  // NBSP
        }
        if (c == 0xE2 && i + 2 < s.size() &&
            static_cast<unsigned char>(s[i + 1]) == 0x80) {
            unsigned char b = static_cast<unsigned char>(s[i + 2]);
            if (b == 0x93 || b == 0x94) {  // en/em dash
                out.push_back('-');
                i += 2;
                continue;
            }
        }
        out.push_back(s[i]);
    }
    return out;
}

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string collapse_ws(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool in_ws = true;  // swallow leading whitespace
    for (char ch : s) {
        if (std::isspace(static_cast<unsigned char>(ch))) {
            in_ws = true;
        } else {
            if (in_ws && !out.empty()) out.push_back(' ');
            in_ws = false;
            out.push_back(ch);
        }
    }
    return out;
}

std::string norm_key(std::string_view s) {
    return collapse_ws(fold(s));
}

std::string norm_name(std::string_view s) {
    std::string folded = fold(s);
    std::string out;
    out.reserve(folded.size());
    for (char ch : folded)
        if (std::isalnum(static_cast<unsigned char>(ch))) out.push_back(ch);
    return out;
}

HonorificSplit strip_honorific(std::string_view s) {
    struct Prefix {
        const char* folded;
        Gender gender;
    };
    // Longer prefixes first, so "a sr.a" wins over "a sr".
    static const std::array<Prefix, 6> prefixes = {{
        {"a sr.a", Gender::feminine},   // also matches "A Sr.ª" after fold
        {"a sra.", Gender::feminine},
        {"a sra", Gender::feminine},
        {"o sr.", Gender::masculine},
        {"o sr", Gender::masculine},
        {"a sr", Gender::feminine},
    }};
    std::string raw = trim(s);
    std::string folded = fold(raw);
    for (const auto& p : prefixes) {
        std::string_view pf = p.folded;
        if (folded.size() <= pf.size()) continue;
        if (folded.compare(0, pf.size(), pf) != 0) continue;
        char next = folded[pf.size()];
        if (next != ' ' && next != '.') continue;
        // map the folded prefix length back to a raw byte offset (folding
        // shortens multibyte characters like the ª in "Sr.ª")
        size_t cut = 0;
        for (size_t consumed = 0; cut < raw.size() && consumed < pf.size();) {
            size_t char_len = 1;
            unsigned char lead = static_cast<unsigned char>(raw[cut]);
            if (lead >= 0xF0) char_len = 4;
            else if (lead >= 0xE0) char_len = 3;
            else if (lead >= 0xC0) char_len = 2;
            consumed += fold(std::string_view(raw).substr(cut, char_len)).size();
            cut += char_len;
        }
        // the honorific's own trailing dot
        if (cut < raw.size() && raw[cut] == '.') ++cut;
        HonorificSplit out;
        out.rest = trim(std::string_view(raw).substr(cut));
        out.gender = p.gender;
        out.had_honorific = true;
        return out;
    }
    return {raw, Gender::unknown, false};
}

std::pair<std::string, std::optional<std::string>>
strip_trailing_paren(std::string_view s) {
    std::string raw = trim(s);
    if (raw.empty() || raw.back() != ')')
        return {raw, std::nullopt};
    size_t open = raw.rfind('(');
    if (open == std::string::npos)
        return {raw, std::nullopt};
    std::string inner = trim(std::string_view(raw).substr(open + 1, raw.size() - open - 2));
    std::string rest = trim(std::string_view(raw).substr(0, open));
    return {rest, inner};
}

bool looks_like_party_code(std::string_view s) {
    if (s.empty()) return false;
    bool has_space = false;
    bool has_lower = false;
    for (size_t i = 0; i < s.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (c == ' ') has_space = true;
        if (std::islower(c)) has_lower = true;
    }
    return !has_space || !has_lower;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
    if (a.size() > b.size()) std::swap(a, b);
    std::vector<size_t> row(a.size() + 1);
    for (size_t i = 0; i <= a.size(); ++i) row[i] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
        size_t prev_diag = row[0];
        row[0] = j;
        for (size_t i = 1; i <= a.size(); ++i) {
            size_t cur = row[i];
            size_t cost = (a[i - 1] == b[j - 1]) ? 0 : 1;
            row[i] = std::min({row[i] + 1, row[i - 1] + 1, prev_diag + cost});
            prev_diag = cur;
        }
    }
    return row[a.size()];
}

double similarity(std::string_view a, std::string_view b) {
    size_t max_len = std::max(a.size(), b.size());
    if (max_len == 0) return 0.0;
    return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(max_len);
}

int word_count(std::string_view s) {
    int count = 0;
    bool in_word = false;
    for (char ch : s) {
        bool ws = std::isspace(static_cast<unsigned char>(ch)) != 0;
        if (!ws && !in_word) ++count;
        in_word = !ws;
    }
    return count;
}

}  // namespace ptparl::text
