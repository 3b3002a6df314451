#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptparl/config.hpp"
#include "ptparl/model.hpp"

namespace ptparl {

enum class SourceKind { html, paged_text };

struct RawDocument {
    DebateMeta meta;
    std::string body;  // bytes, UTF-8 unless stated otherwise
    SourceKind kind = SourceKind::paged_text;
};

struct PagedText {
    DebateMeta meta;
    std::vector<Page> pages;

    bool operator==(const PagedText&) const = default;
};

struct EncodingError : std::runtime_error {
    EncodingError(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg + " at byte offset " + std::to_string(offset)),
          offset(offset) {}
    std::size_t offset;
};

// Removes all markup, decodes character entities, turns block-level
// boundaries into line breaks. Page breaks come from the marker comment
// <!-- page: N --> (N optional; defaults to previous+1); without markers the
// document is a single page numbered 1.
PagedText strip_html(const RawDocument& doc);

// Splits paged plain text into pages on form-feed characters: a line starting
// with FF opens a new page, and digits following the FF give its number.
// Without form feeds the document is a single page numbered 1.
PagedText load_paged_text(const RawDocument& doc);

// Dispatches on doc.kind.
PagedText ingest_document(const RawDocument& doc);

// Removes leading lines of each page matching the header grammar (series
// banner, date banner, bare page-number lines). Lines matching the
// utterance-start grammar are never removed. Idempotent.
PagedText clean_headers(const PagedText& pt, const RunConfig& config);

// Parses the input naming convention
// {period}-L{legislature}-S{session}-N{number}-{YYYY-MM-DD}.{html|txt}
std::optional<DebateMeta> meta_from_filename(const std::string& filename);

}  // namespace ptparl
