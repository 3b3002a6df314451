#include "ptparl/segmenter.hpp"

#include <algorithm>
#include <cctype>

#include "ptparl/textnorm.hpp"

namespace ptparl {

namespace {

size_t skip_spaces(const std::string& s, size_t i, int max_spaces) {
    int n = 0;
    while (i < s.size() && s[i] == ' ' && n < max_spaces) {
        ++i;
        ++n;
    }
    return i;
}

// Matches one dash variant at position i; returns the position after it.
std::optional<size_t> match_dash(const std::string& s, size_t i,
                                 const RunConfig& config) {
    for (const std::string& dash : config.dash_variants)
        if (s.compare(i, dash.size(), dash) == 0) return i + dash.size();
    return std::nullopt;
}

bool folded_matches_time_expression(const std::string& folded) {
    // era|eram H horas [e M minutos].
    size_t i = 0;
    auto lit = [&](std::string_view word) {
        if (folded.compare(i, word.size(), word) != 0) return false;
        i += word.size();
        return true;
    };
    auto number = [&](int max_digits) {
        size_t start = i;
        while (i < folded.size() && std::isdigit(static_cast<unsigned char>(folded[i])))
            ++i;
        return i > start && i - start <= static_cast<size_t>(max_digits);
    };
    if (!lit("era")) return false;
    if (i < folded.size() && folded[i] == 'm') ++i;
    if (!lit(" ")) return false;
    if (!number(2)) return false;
    if (!lit(" horas")) return false;
    if (i < folded.size() && folded[i] == ' ') {
        if (!lit(" e ")) return false;
        if (!number(2)) return false;
        if (!lit(" minutos")) return false;
    }
    return lit(".") && i == folded.size();
}

}  // namespace

std::vector<BodyLine> flatten_pages(const PagedText& pt) {
    std::vector<BodyLine> out;
    for (const Page& page : pt.pages)
        for (const std::string& line : page.lines)
            out.push_back({line, page.number});
    return out;
}

std::optional<SpeakerLineMatch> match_speaker_line(const std::string& line,
                                                   const RunConfig& config) {
    size_t colon = line.find(':');
    if (colon == std::string::npos || colon == 0) return std::nullopt;
    if (colon > static_cast<size_t>(config.max_speaker_length)) return std::nullopt;
    std::string speaker = text::trim(std::string_view(line).substr(0, colon));
    if (speaker.empty()) return std::nullopt;
    if (std::isdigit(static_cast<unsigned char>(speaker.back()))) return std::nullopt;

    size_t i = skip_spaces(line, colon + 1, config.max_separator_spaces);
    auto after_dash = match_dash(line, i, config);
    if (!after_dash) return std::nullopt;
    i = skip_spaces(line, *after_dash, config.max_separator_spaces);
    return SpeakerLineMatch{std::move(speaker), std::string(line.substr(i))};
}

std::size_t detect_debate_bounds(const std::vector<BodyLine>& lines,
                                 const RunConfig& config) {
    for (size_t i = 0; i < lines.size(); ++i) {
        std::string folded = text::norm_key(lines[i].text);
        for (const std::string& formula : config.opening_formulas)
            if (folded.find(formula) != std::string::npos) return i;
    }
    for (size_t i = 0; i < lines.size(); ++i)
        if (match_speaker_line(lines[i].text, config)) return i;
    throw SegmenterError("no-debate-found",
                         "no session opening formula or utterance line found");
}

std::vector<BodyLine> clean_asides(const std::vector<BodyLine>& lines,
                                   const RunConfig& config, int* removed_count) {
    int removed = 0;
    std::vector<BodyLine> out;
    out.reserve(lines.size());
    for (const BodyLine& bl : lines) {
        std::string folded = text::norm_key(bl.text);
        std::string_view v = folded;
        if (!v.empty() && v.front() == '(') v.remove_prefix(1);
        bool ends_ok = !v.empty() && (v.back() == '.' ||
                                      (v.size() >= 2 && v.back() == ')' &&
                                       v[v.size() - 2] == '.'));
        bool is_aside = false;
        if (ends_ok) {
            for (const std::string& word : config.aside_lexicon) {
                if (v.size() > word.size() &&
                    v.compare(0, word.size(), word) == 0 &&
                    (v[word.size()] == ' ' || v[word.size()] == '.' ||
                     v[word.size()] == ',')) {
                    is_aside = true;
                    break;
                }
                if (v == word + ".") {
                    is_aside = true;
                    break;
                }
            }
        }
        if (is_aside)
            ++removed;
        else
            out.push_back(bl);
    }
    if (removed_count) *removed_count = removed;
    return out;
}

std::size_t detect_session_end(const std::vector<BodyLine>& lines, bool* warned) {
    for (size_t i = lines.size(); i-- > 0;) {
        if (folded_matches_time_expression(text::norm_key(lines[i].text))) {
            if (warned) *warned = false;
            return i;
        }
    }
    if (warned) *warned = true;
    return lines.size();
}

std::vector<RawUtterance> tag_utterances(const std::vector<BodyLine>& lines,
                                         const RunConfig& config) {
    std::vector<RawUtterance> out;
    RawUtterance current;
    bool in_block = false;
    auto flush = [&] {
        if (!in_block) return;
        current.text = text::trim(current.text);
        if (!current.text.empty()) {
            current.order = static_cast<int>(out.size()) + 1;
            out.push_back(std::move(current));
        }
        current = RawUtterance{};
        in_block = false;
    };
    for (const BodyLine& bl : lines) {
        if (auto m = match_speaker_line(bl.text, config)) {
            flush();
            in_block = true;
            current.page_start = bl.page;
            current.speaker_string = std::move(m->speaker);
            current.text = std::move(m->text);
        } else if (in_block) {
            if (!current.text.empty()) current.text += ' ';
            current.text += text::trim(bl.text);
        }
        // lines before the first speaker line are not utterance content
    }
    flush();
    if (out.empty())
        throw SegmenterError("no-utterances", "debate body contains no utterances");
    return out;
}

SegmentResult segment_debate(const PagedText& pt, const RunConfig& config) {
    SegmentResult result;
    std::vector<BodyLine> lines = flatten_pages(pt);
    size_t start = detect_debate_bounds(lines, config);
    std::vector<BodyLine> body(lines.begin() + static_cast<long>(start), lines.end());
    body = clean_asides(body, config, &result.asides_removed);
    bool no_end = false;
    size_t end = detect_session_end(body, &no_end);
    if (no_end) result.warnings.push_back("no-session-end");
    body.resize(end);
    result.utterances = tag_utterances(body, config);
    return result;
}

}  // namespace ptparl
