#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptparl/config.hpp"
#include "ptparl/ingest.hpp"
#include "ptparl/model.hpp"

namespace ptparl {

struct SegmenterError : std::runtime_error {
    SegmenterError(std::string code, const std::string& msg)
        : std::runtime_error(msg), code(std::move(code)) {}
    std::string code;  // "no-debate-found", "no-utterances"
};

struct RawUtterance {
    int order = 0;
    int page_start = 0;
    std::string speaker_string;
    std::string text;

    bool operator==(const RawUtterance&) const = default;
};

// One text line paired with the journal page it appears on.
struct BodyLine {
    std::string text;
    int page = 0;

    bool operator==(const BodyLine&) const = default;
};

std::vector<BodyLine> flatten_pages(const PagedText& pt);

// Result of matching one line against `<Speaker>: — <text>` (dash variants
// and 0..max_separator_spaces spaces around colon and dash accepted; the
// speaker segment is at most max_speaker_length bytes and must not end with
// a digit).
struct SpeakerLineMatch {
    std::string speaker;
    std::string text;
};
std::optional<SpeakerLineMatch> match_speaker_line(const std::string& line,
                                                   const RunConfig& config);

// Start of the debate body: first line matching a session-opening formula,
// else first line matching the utterance grammar. Throws "no-debate-found"
// when neither exists. The provisional end is lines.size().
std::size_t detect_debate_bounds(const std::vector<BodyLine>& lines,
                                 const RunConfig& config);

// Removes standalone aside lines (applause, laughter, protests, pauses).
// Aside text embedded inside an utterance line is left untouched.
std::vector<BodyLine> clean_asides(const std::vector<BodyLine>& lines,
                                   const RunConfig& config,
                                   int* removed_count = nullptr);

// Position of the closing time expression ("Eram 18 horas [e 30 minutos].")
// found scanning backwards; lines from that position on are discarded. When
// absent returns lines.size() and sets *warned.
std::size_t detect_session_end(const std::vector<BodyLine>& lines, bool* warned);

// Splits the cleaned, bounded body into raw utterances. Continuation lines
// join with a single space; order runs 1..N; page_start is the page of the
// block's first line. Throws "no-utterances" when nothing matches.
std::vector<RawUtterance> tag_utterances(const std::vector<BodyLine>& lines,
                                         const RunConfig& config);

struct SegmentResult {
    std::vector<RawUtterance> utterances;
    std::vector<std::string> warnings;
    int asides_removed = 0;
};

// bounds -> asides -> session end -> tagging, in one call.
SegmentResult segment_debate(const PagedText& pt, const RunConfig& config);

}  // namespace ptparl
