#include "ptparl/xml_reader.hpp"

#include <cctype>

namespace ptparl::xml {

const std::string* Element::attr(std::string_view name) const {
    for (const auto& [k, v] : attributes)
        if (k == name) return &v;
    return nullptr;
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    std::unique_ptr<Element> run() {
        skip_misc();
        if (eof()) fail("document has no root element");
        auto root = element();
        skip_misc();
        if (!eof()) fail("content after root element");
        return root;
    }

private:
    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1;

    [[noreturn]] void fail(const std::string& msg) const {
        throw XmlError(msg, line_);
    }

    bool eof() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }

    char take() {
        char c = src_[pos_++];
        if (c == '\n') ++line_;
        return c;
    }

    bool consume(std::string_view lit) {
        if (src_.compare(pos_, lit.size(), lit) != 0) return false;
        for (size_t i = 0; i < lit.size(); ++i) take();
        return true;
    }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) take();
    }

    // whitespace, XML declaration, comments
    void skip_misc() {
        for (;;) {
            skip_ws();
            if (consume("<?")) {
                while (!eof() && !consume("?>")) take();
            } else if (consume("<!--")) {
                while (!eof() && !consume("-->")) take();
            } else {
                return;
            }
        }
    }

    std::string name_token() {
        std::string out;
        while (!eof()) {
            char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
                c == '_' || c == '.' || c == ':') {
                out.push_back(take());
            } else {
                break;
            }
        }
        if (out.empty()) fail("expected a name");
        return out;
    }

    std::string entity() {
        // called after '&'
        std::string ref;
        while (!eof() && peek() != ';') {
            ref.push_back(take());
            if (ref.size() > 10) fail("unterminated entity reference");
        }
        if (eof()) fail("unterminated entity reference");
        take();  // ';'
        if (ref == "amp") return "&";
        if (ref == "lt") return "<";
        if (ref == "gt") return ">";
        if (ref == "quot") return "\"";
        if (ref == "apos") return "'";
        if (!ref.empty() && ref[0] == '#') {
            long cp = 0;
            try {
                cp = (ref.size() > 1 && (ref[1] == 'x' || ref[1] == 'X'))
                         ? std::stol(ref.substr(2), nullptr, 16)
                         : std::stol(ref.substr(1));
            } catch (...) {
                fail("bad character reference &" + ref + ";");
            }
            return encode_utf8(cp);
        }
        fail("unknown entity &" + ref + ";");
    }

    static std::string encode_utf8(long cp) {
        std::string out;
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
        return out;
    }

    std::string attr_value() {
        if (eof() || (peek() != '"' && peek() != '\'')) fail("expected attribute value");
        char quote = take();
        std::string out;
        while (!eof() && peek() != quote) {
            char c = take();
            if (c == '&') {
                out += entity();
            } else if (c == '<') {
                fail("'<' in attribute value");
            } else {
                out.push_back(c);
            }
        }
        if (eof()) fail("unterminated attribute value");
        take();
        return out;
    }

    std::unique_ptr<Element> element() {
        if (!consume("<")) fail("expected '<'");
        auto el = std::make_unique<Element>();
        el->line = line_;
        el->name = name_token();
        for (;;) {
            skip_ws();
            if (eof()) fail("unterminated start tag <" + el->name);
            if (consume("/>")) return el;
            if (consume(">")) break;
            std::string key = name_token();
            skip_ws();
            if (!consume("=")) fail("expected '=' after attribute " + key);
            skip_ws();
            for (const auto& [k, v] : el->attributes)
                if (k == key) fail("duplicate attribute " + key);
            el->attributes.emplace_back(key, attr_value());
        }
        // content
        for (;;) {
            if (eof()) fail("unterminated element <" + el->name + ">");
            if (consume("</")) {
                std::string close = name_token();
                if (close != el->name)
                    fail("mismatched close tag </" + close + "> for <" + el->name + ">");
                skip_ws();
                if (!consume(">")) fail("expected '>' in close tag");
                return el;
            }
            if (consume("<!--")) {
                while (!eof() && !consume("-->")) take();
                continue;
            }
            if (!eof() && peek() == '<') {
                el->children.push_back(element());
                continue;
            }
            char c = take();
            if (c == '&') {
                el->text += entity();
            } else {
                el->text.push_back(c);
            }
        }
    }
};

}  // namespace

std::unique_ptr<Element> parse(std::string_view bytes) {
    return Parser(bytes).run();
}

std::string escape_text(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string escape_attr(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\n': out += "&#10;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace ptparl::xml
