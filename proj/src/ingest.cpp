#include "ptparl/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

#include "ptparl/segmenter.hpp"
#include "ptparl/textnorm.hpp"

namespace ptparl {

namespace {

void check_utf8(const std::string& bytes) {
    size_t i = 0;
    while (i < bytes.size()) {
        unsigned char c = static_cast<unsigned char>(bytes[i]);
        size_t extra;
        if (c < 0x80) extra = 0;
        else if ((c & 0xE0) == 0xC0) extra = 1;
        else if ((c & 0xF0) == 0xE0) extra = 2;
        else if ((c & 0xF8) == 0xF0) extra = 3;
        else throw EncodingError("invalid UTF-8 lead byte", i);
        if (i + extra >= bytes.size())
            throw EncodingError("truncated UTF-8 sequence", i);
        for (size_t k = 1; k <= extra; ++k)
            if ((static_cast<unsigned char>(bytes[i + k]) & 0xC0) != 0x80)
                throw EncodingError("invalid UTF-8 continuation byte", i + k);
        i += extra + 1;
    }
}

bool is_block_tag(const std::string& name) {
    static const char* kBlock[] = {
        "p",  "div", "br",  "li", "ul", "ol",  "table", "tr",      "hr",
        "h1", "h2",  "h3",  "h4", "h5", "h6",  "head",  "body",    "html",
        "section", "article", "blockquote", "center", "title"};
    return std::find(std::begin(kBlock), std::end(kBlock), name) != std::end(kBlock);
}

std::string decode_entity(const std::string& ref) {
    if (ref == "amp") return "&";
    if (ref == "lt") return "<";
    if (ref == "gt") return ">";
    if (ref == "quot") return "\"";
    if (ref == "apos") return "'";
    if (ref == "nbsp") return " ";
    if (!ref.empty() && ref[0] == '#') {
        try {
            long cp = (ref.size() > 1 && (ref[1] == 'x' || ref[1] == 'X'))
                          ? std::stol(ref.substr(2), nullptr, 16)
                          : std::stol(ref.substr(1));
            std::string out;
            if (cp < 0x80) {
                out.push_back(static_cast<char>(cp));
            } else if (cp < 0x800) {
                out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
                out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
            } else {
                out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
                out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
                out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
            }
            return out;
        } catch (...) {
            return "&" + ref + ";";
        }
    }
    return "&" + ref + ";";  // unknown entities pass through verbatim
}

// Accumulates text into trimmed, blank-free lines grouped into pages.
class PageBuilder {
public:
    void text(char c) { current_line_.push_back(c); }
    void text(const std::string& s) { current_line_ += s; }

    void line_break() {
        std::string t = text::trim(current_line_);
        current_line_.clear();
        if (!t.empty()) lines_.push_back(std::move(t));
    }

    void page_break(std::optional<int> number) {
        line_break();
        flush_page();
        next_number_ = number ? *number : next_number_;
    }

    std::vector<Page> finish() {
        line_break();
        if (!lines_.empty() || pages_.empty()) flush_page();
        return std::move(pages_);
    }

private:
    void flush_page() {
        pages_.push_back(Page{next_number_, std::move(lines_)});
        lines_.clear();
        next_number_ = pages_.back().number + 1;
    }

    std::string current_line_;
    std::vector<std::string> lines_;
    std::vector<Page> pages_;
    int next_number_ = 1;
};

// "page: 12", "page 12", "page" inside a marker comment
std::optional<std::optional<int>> parse_page_marker(const std::string& comment) {
    std::string t = text::collapse_ws(comment);
    if (t.compare(0, 4, "page") != 0) return std::nullopt;
    std::string rest = text::trim(t.substr(4));
    if (!rest.empty() && rest[0] == ':') rest = text::trim(rest.substr(1));
    if (rest.empty())  // marker without a number: count up from the last page
        return std::optional<std::optional<int>>{std::in_place};
    try {
        size_t idx = 0;
        int n = std::stoi(rest, &idx);
        if (idx == rest.size() && n >= 1)
            return std::optional<std::optional<int>>{n};
    } catch (...) {
    }
    return std::nullopt;
}

}  // namespace

PagedText strip_html(const RawDocument& doc) {
    check_utf8(doc.body);
    const std::string& src = doc.body;
    PageBuilder builder;
    size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (c == '<') {
            if (src.compare(i, 4, "<!--") == 0) {
                size_t end = src.find("-->", i + 4);
                std::string comment = src.substr(i + 4, end == std::string::npos
                                                             ? std::string::npos
                                                             : end - i - 4);
                if (auto marker = parse_page_marker(comment))
                    builder.page_break(*marker);
                i = end == std::string::npos ? src.size() : end + 3;
                continue;
            }
            size_t end = src.find('>', i + 1);
            if (end == std::string::npos) {  // stray '<' at EOF, keep as text
                builder.text(c);
                ++i;
                continue;
            }
            std::string tag = src.substr(i + 1, end - i - 1);
            bool closing = !tag.empty() && tag[0] == '/';
            if (closing) tag = tag.substr(1);
            std::string name;
            for (char tc : tag) {
                if (std::isalnum(static_cast<unsigned char>(tc)))
                    name.push_back(static_cast<char>(
                        std::tolower(static_cast<unsigned char>(tc))));
                else
                    break;
            }
            if (!closing && (name == "script" || name == "style")) {
                size_t close = src.find("</" + name, end);
                i = close == std::string::npos ? src.size() : src.find('>', close) + 1;
                if (i == 0) i = src.size();  // npos+1 guard
                builder.line_break();
                continue;
            }
            if (is_block_tag(name)) builder.line_break();
            i = end + 1;
            continue;
        }
        if (c == '&') {
            size_t semi = src.find(';', i + 1);
            if (semi != std::string::npos && semi - i <= 10) {
                builder.text(decode_entity(src.substr(i + 1, semi - i - 1)));
                i = semi + 1;
                continue;
            }
            builder.text(c);
            ++i;
            continue;
        }
        if (c == '\n') {
            builder.line_break();
            ++i;
            continue;
        }
        builder.text(c);
        ++i;
    }
    return PagedText{doc.meta, builder.finish()};
}

PagedText load_paged_text(const RawDocument& doc) {
    check_utf8(doc.body);
    PageBuilder builder;
    size_t i = 0;
    const std::string& src = doc.body;
    bool at_line_start = true;
    while (i < src.size()) {
        char c = src[i];
        if (c == '\f' && at_line_start) {
            size_t j = i + 1;
            std::string digits;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
                digits.push_back(src[j++]);
            std::optional<int> number;
            if (!digits.empty()) number = std::stoi(digits);
            builder.page_break(number);
            i = j;
            continue;
        }
        if (c == '\n') {
            builder.line_break();
            at_line_start = true;
            ++i;
            continue;
        }
        if (c != '\r') {
            builder.text(c);
            if (c != '\f') at_line_start = false;
        }
        ++i;
    }
    return PagedText{doc.meta, builder.finish()};
}

PagedText ingest_document(const RawDocument& doc) {
    return doc.kind == SourceKind::html ? strip_html(doc) : load_paged_text(doc);
}

PagedText clean_headers(const PagedText& pt, const RunConfig& config) {
    std::vector<std::regex> patterns;
    patterns.reserve(config.header_patterns.size());
    for (const std::string& p : config.header_patterns)
        patterns.emplace_back(p, std::regex::ECMAScript | std::regex::optimize);

    PagedText out;
    out.meta = pt.meta;
    out.pages.reserve(pt.pages.size());
    for (const Page& page : pt.pages) {
        size_t keep_from = 0;
        while (keep_from < page.lines.size()) {
            const std::string& line = page.lines[keep_from];
            if (match_speaker_line(line, config)) break;
            std::string folded = text::norm_key(line);
            bool is_header = std::any_of(
                patterns.begin(), patterns.end(),
                [&](const std::regex& re) { return std::regex_match(folded, re); });
            if (!is_header) break;
            ++keep_from;
        }
        Page cleaned;
        cleaned.number = page.number;
        cleaned.lines.assign(page.lines.begin() + static_cast<long>(keep_from),
                             page.lines.end());
        out.pages.push_back(std::move(cleaned));
    }
    return out;
}

std::optional<DebateMeta> meta_from_filename(const std::string& filename) {
    std::string stem = filename;
    size_t slash = stem.find_last_of("/\\");
    if (slash != std::string::npos) stem = stem.substr(slash + 1);
    size_t dot = stem.rfind('.');
    if (dot != std::string::npos) stem = stem.substr(0, dot);

    static const std::regex re(
        R"(^([A-Za-z0-9]+)-L(\d+)-S(\d+)-N(\d+)-(\d{4}-\d{2}-\d{2})$)");
    std::smatch m;
    if (!std::regex_match(stem, m, re)) return std::nullopt;
    DebateMeta meta;
    meta.period = m[1];
    meta.legislature = std::stoi(m[2]);
    meta.session = std::stoi(m[3]);
    meta.number = std::stoi(m[4]);
    meta.date = m[5];
    return meta;
}

}  // namespace ptparl
