#include "ptparl/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ptparl {

namespace {

using nlohmann::json;

json to_json_obj(const RunConfig& c) {
    return json{
        {"header_patterns", c.header_patterns},
        {"opening_formulas", c.opening_formulas},
        {"aside_lexicon", c.aside_lexicon},
        {"president_patterns", c.president_patterns},
        {"president_threshold", c.president_threshold},
        {"match_threshold", c.match_threshold},
        {"dash_variants", c.dash_variants},
        {"max_separator_spaces", c.max_separator_spaces},
        {"max_speaker_length", c.max_speaker_length},
        {"sample_stddev", c.sample_stddev},
        {"strict", c.strict},
    };
}

}  // namespace

std::string RunConfig::to_json() const {
    return to_json_obj(*this).dump(2) + "\n";
}

RunConfig RunConfig::from_json(const std::string& json_text) {
    json j = json::parse(json_text);
    RunConfig c;  // unspecified keys keep their defaults
    if (j.contains("header_patterns")) j.at("header_patterns").get_to(c.header_patterns);
    if (j.contains("opening_formulas")) j.at("opening_formulas").get_to(c.opening_formulas);
    if (j.contains("aside_lexicon")) j.at("aside_lexicon").get_to(c.aside_lexicon);
    if (j.contains("president_patterns")) j.at("president_patterns").get_to(c.president_patterns);
    if (j.contains("president_threshold")) j.at("president_threshold").get_to(c.president_threshold);
    if (j.contains("match_threshold")) j.at("match_threshold").get_to(c.match_threshold);
    if (j.contains("dash_variants")) j.at("dash_variants").get_to(c.dash_variants);
    if (j.contains("max_separator_spaces")) j.at("max_separator_spaces").get_to(c.max_separator_spaces);
    if (j.contains("max_speaker_length")) j.at("max_speaker_length").get_to(c.max_speaker_length);
    if (j.contains("sample_stddev")) j.at("sample_stddev").get_to(c.sample_stddev);
    if (j.contains("strict")) j.at("strict").get_to(c.strict);
    return c;
}

RunConfig RunConfig::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fnv1a_hex(std::string_view bytes) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a(bytes);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

}  // namespace ptparl
