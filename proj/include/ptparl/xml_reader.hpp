#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ptparl::xml {

struct XmlError : std::runtime_error {
    XmlError(const std::string& msg, int line)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ")"),
          line(line) {}
    int line;
};

// A small DOM for the document subset this project emits and consumes:
// declaration, comments, elements, attributes (order preserved), text with
// the five predefined entities plus numeric references. No namespaces, no
// CDATA, no DTDs.
struct Element {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<std::unique_ptr<Element>> children;
    std::string text;  // concatenated character data of this element
    int line = 0;

    const std::string* attr(std::string_view name) const;
};

std::unique_ptr<Element> parse(std::string_view bytes);

std::string escape_text(std::string_view s);
std::string escape_attr(std::string_view s);

}  // namespace ptparl::xml
