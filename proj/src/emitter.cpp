#include "ptparl/emitter.hpp"

#include <algorithm>

#include "ptparl/xml_reader.hpp"

namespace ptparl {

namespace {

constexpr const char* kIndent = "    ";

void append_attr(std::string& out, const char* key, std::string_view value) {
    out += ' ';
    out += key;
    out += "=\"";
    out += xml::escape_attr(value);
    out += '"';
}

int require_int_attr(const xml::Element& el, const std::string& path,
                     const char* key, int min_value) {
    const std::string* v = el.attr(key);
    if (!v)
        throw ParseError(path + ": missing attribute '" + key + "' (line " +
                         std::to_string(el.line) + ")");
    try {
        size_t idx = 0;
        int n = std::stoi(*v, &idx);
        if (idx != v->size() || n < min_value) throw std::invalid_argument(*v);
        return n;
    } catch (...) {
        throw ParseError(path + ": bad value '" + *v + "' for attribute '" + key +
                         "' (line " + std::to_string(el.line) + ")");
    }
}

std::string require_attr(const xml::Element& el, const std::string& path,
                         const char* key) {
    const std::string* v = el.attr(key);
    if (!v)
        throw ParseError(path + ": missing attribute '" + key + "' (line " +
                         std::to_string(el.line) + ")");
    return *v;
}

void check_known_attrs(const xml::Element& el, const std::string& path,
                       const std::vector<std::string_view>& known, bool strict,
                       std::vector<std::string>* warnings) {
    for (const auto& [key, value] : el.attributes) {
        if (std::find(known.begin(), known.end(), key) != known.end()) continue;
        std::string msg = path + ": unknown attribute '" + key + "' (line " +
                          std::to_string(el.line) + ")";
        if (strict) throw ParseError(msg);
        if (warnings) warnings->push_back(msg);
    }
}

}  // namespace

std::string emit_debate_xml(const AnnotatedDebate& d, bool strict) {
    std::vector<Violation> violations = validate_debate(d);
    if (!violations.empty()) {
        std::string msg = "refusing to emit invalid debate:";
        for (const Violation& v : violations)
            msg += "\n  " + v.path + ": [" + v.rule + "] " + v.message;
        throw EmitError(msg, std::move(violations));
    }

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<debate";
    append_attr(out, "period", d.meta.period);
    append_attr(out, "legislature", std::to_string(d.meta.legislature));
    append_attr(out, "session", std::to_string(d.meta.session));
    append_attr(out, "number", std::to_string(d.meta.number));
    append_attr(out, "date", d.meta.date);
    out += ">\n";
    for (const auto& [page_number, utterances] : d.pages) {
        out += kIndent;
        out += "<page";
        append_attr(out, "number", std::to_string(page_number));
        out += ">\n";
        for (const Utterance& u : utterances) {
            out += kIndent;
            out += kIndent;
            out += "<utterance";
            append_attr(out, "page-start", std::to_string(u.page_start));
            const SpeakerRef& s = u.speaker;
            if (s.status == SpeakerStatus::resolved) {
                append_attr(out, "speaker-id", *s.speaker_id);
                append_attr(out, "speaker-name", *s.speaker_name);
                if (s.speaker_party)
                    append_attr(out, "speaker-party", *s.speaker_party);
            }
            append_attr(out, "speaker-string", u.speaker_string);
            if (s.status == SpeakerStatus::president)
                append_attr(out, "speaker-role", *s.speaker_role);
            if (s.status == SpeakerStatus::ambiguous && !strict)
                append_attr(out, "candidates-count",
                            std::to_string(s.candidates.size()));
            append_attr(out, "order", std::to_string(u.order));
            out += ">";
            out += xml::escape_text(u.text);
            out += "</utterance>\n";
        }
        out += kIndent;
        out += "</page>\n";
    }
    out += "</debate>\n";
    return out;
}

AnnotatedDebate parse_debate_xml(std::string_view bytes, bool strict,
                                 std::vector<std::string>* warnings) {
    std::unique_ptr<xml::Element> root;
    try {
        root = xml::parse(bytes);
    } catch (const xml::XmlError& e) {
        throw ParseError(std::string("not well-formed: ") + e.what());
    }
    if (root->name != "debate")
        throw ParseError("/" + root->name + ": expected root element <debate> (line " +
                         std::to_string(root->line) + ")");
    check_known_attrs(*root, "/debate",
                      {"period", "legislature", "session", "number", "date"},
                      strict, warnings);

    AnnotatedDebate d;
    d.meta.period = require_attr(*root, "/debate", "period");
    d.meta.legislature = require_int_attr(*root, "/debate", "legislature", 1);
    d.meta.session = require_int_attr(*root, "/debate", "session", 1);
    d.meta.number = require_int_attr(*root, "/debate", "number", 1);
    d.meta.date = require_attr(*root, "/debate", "date");

    int page_index = 0;
    for (const auto& page_el : root->children) {
        ++page_index;
        std::string ppath = "/debate/page[" + std::to_string(page_index) + "]";
        if (page_el->name != "page")
            throw ParseError(ppath + ": unexpected element <" + page_el->name +
                             "> (line " + std::to_string(page_el->line) + ")");
        check_known_attrs(*page_el, ppath, {"number"}, strict, warnings);
        int number = require_int_attr(*page_el, ppath, "number", 1);
        std::vector<Utterance> utterances;
        int utt_index = 0;
        for (const auto& utt_el : page_el->children) {
            ++utt_index;
            std::string upath = ppath + "/utterance[" + std::to_string(utt_index) + "]";
            if (utt_el->name != "utterance")
                throw ParseError(upath + ": unexpected element <" + utt_el->name +
                                 "> (line " + std::to_string(utt_el->line) + ")");
            check_known_attrs(*utt_el, upath,
                              {"page-start", "speaker-id", "speaker-name",
                               "speaker-party", "speaker-string", "speaker-role",
                               "candidates-count", "order"},
                              strict, warnings);
            Utterance u;
            u.page_start = require_int_attr(*utt_el, upath, "page-start", 1);
            u.order = require_int_attr(*utt_el, upath, "order", 1);
            u.speaker_string = require_attr(*utt_el, upath, "speaker-string");
            u.text = utt_el->text;
            if (!utt_el->children.empty())
                throw ParseError(upath + ": utterances must not contain elements");

            const std::string* role = utt_el->attr("speaker-role");
            const std::string* id = utt_el->attr("speaker-id");
            if (role) {
                if (*role != "president")
                    throw ParseError(upath + ": unsupported speaker-role '" + *role +
                                     "' (line " + std::to_string(utt_el->line) + ")");
                if (id)
                    throw ParseError(upath + ": speaker-role and speaker-id together");
                u.speaker = SpeakerRef::make_president();
            } else if (id) {
                const std::string* name = utt_el->attr("speaker-name");
                if (!name)
                    throw ParseError(upath + ": speaker-id without speaker-name (line " +
                                     std::to_string(utt_el->line) + ")");
                const std::string* party = utt_el->attr("speaker-party");
                u.speaker = SpeakerRef::make_resolved(
                    *id, *name,
                    party ? std::optional<std::string>(*party) : std::nullopt);
            } else {
                if (utt_el->attr("candidates-count") && warnings)
                    warnings->push_back(upath +
                                        ": ambiguous candidates are not recoverable; "
                                        "parsed as unresolved");
                u.speaker = SpeakerRef::make_unresolved();
            }
            utterances.push_back(std::move(u));
        }
        d.pages.emplace_back(number, std::move(utterances));
    }

    return d;
}

}  // namespace ptparl
