#include "ptparl/registry.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ptparl/textnorm.hpp"
#include "ptparl/xml_reader.hpp"

namespace ptparl {

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

Gender gender_from_string(const std::string& s) {
    if (s == "masculine" || s == "m") return Gender::masculine;
    if (s == "feminine" || s == "f") return Gender::feminine;
    return Gender::unknown;
}

int parse_positive_int(const std::string& s, const std::string& what,
                       const std::string& where) {
    try {
        size_t idx = 0;
        int v = std::stoi(s, &idx);
        if (idx != s.size() || v < 1) throw std::invalid_argument(s);
        return v;
    } catch (...) {
        throw RegistryError(where + ": bad " + what + " value '" + s + "'");
    }
}

MPRecord record_from_fields(const std::string& where, const std::string& id,
                            const std::string& full_name, const std::string& short_name,
                            const std::string& gender, const std::string& legislature,
                            const std::string& session_from, const std::string& session_to,
                            const std::string& party, const std::string& role,
                            const std::string& cabinet_name) {
    if (id.empty()) throw RegistryError(where + ": empty speaker_id");
    if (full_name.empty()) throw RegistryError(where + ": empty full_name");
    MPRecord rec;
    rec.speaker_id = id;
    rec.full_name = full_name;
    rec.short_name = short_name.empty() ? full_name : short_name;
    rec.gender = gender_from_string(gender);
    Mandate m;
    m.legislature = parse_positive_int(legislature, "legislature", where);
    m.session_from = parse_positive_int(session_from, "session_from", where);
    m.session_to = parse_positive_int(session_to, "session_to", where);
    if (m.session_from > m.session_to)
        throw RegistryError(where + ": inverted-session-range " +
                            session_from + ".." + session_to);
    m.party = party;
    auto r = mandate_role_from_string(role.empty() ? "MP" : role);
    if (!r) throw RegistryError(where + ": unknown role '" + role + "'");
    m.role = *r;
    rec.mandates.push_back(m);
    if (!cabinet_name.empty()) rec.cabinet_name = cabinet_name;
    return rec;
}

const std::vector<std::string> kCsvColumns = {
    "speaker_id", "full_name", "short_name", "gender", "legislature",
    "session_from", "session_to", "party", "role", "cabinet_name"};

}  // namespace

void Registry::load_csv(std::istream& in, const std::string& source_name) {
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line))
        throw RegistryError(source_name + ": empty file (header row required)");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split_csv_row(line);
    if (header != kCsvColumns)
        throw RegistryError(source_name + ":1: unexpected header row");

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto f = split_csv_row(line);
        std::string where = source_name + ":" + std::to_string(line_no);
        if (f.size() != kCsvColumns.size())
            throw RegistryError(where + ": expected " +
                                std::to_string(kCsvColumns.size()) +
                                " fields, found " + std::to_string(f.size()));
        add(record_from_fields(where, f[0], f[1], f[2], f[3], f[4], f[5], f[6],
                               f[7], f[8], f[9]));
    }
}

void Registry::load_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw RegistryError("cannot open registry file: " + path);
    load_csv(in, path);
}

void Registry::load_xml(const std::string& bytes, const std::string& source_name) {
    std::unique_ptr<xml::Element> root;
    try {
        root = xml::parse(bytes);
    } catch (const xml::XmlError& e) {
        throw RegistryError(source_name + ": " + e.what());
    }
    if (root->name != "registry")
        throw RegistryError(source_name + ": /" + root->name +
                            ": expected root element <registry>");
    auto attr_or = [](const xml::Element& el, const char* key) {
        const std::string* v = el.attr(key);
        return v ? *v : std::string();
    };
    int person_no = 0;
    for (const auto& person : root->children) {
        ++person_no;
        std::string where = source_name + ": /registry/person[" +
                            std::to_string(person_no) + "]";
        if (person->name != "person")
            throw RegistryError(where + ": unexpected element <" + person->name + ">");
        std::string id = attr_or(*person, "speaker-id");
        std::string full_name = attr_or(*person, "full-name");
        std::string short_name = attr_or(*person, "short-name");
        std::string gender = attr_or(*person, "gender");
        std::string cabinet = attr_or(*person, "cabinet");
        if (person->children.empty())
            throw RegistryError(where + ": person has no <mandate> children");
        int mandate_no = 0;
        for (const auto& mandate : person->children) {
            ++mandate_no;
            std::string mwhere = where + "/mandate[" + std::to_string(mandate_no) + "]";
            if (mandate->name != "mandate")
                throw RegistryError(mwhere + ": unexpected element <" + mandate->name + ">");
            add(record_from_fields(mwhere, id, full_name, short_name, gender,
                                   attr_or(*mandate, "legislature"),
                                   attr_or(*mandate, "session-from"),
                                   attr_or(*mandate, "session-to"),
                                   attr_or(*mandate, "party"),
                                   attr_or(*mandate, "role"), cabinet));
        }
    }
}

void Registry::load_xml_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw RegistryError("cannot open registry file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    load_xml(buf.str(), path);
}

void Registry::load_file(const std::string& path) {
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".xml")
        load_xml_file(path);
    else
        load_csv_file(path);
}

void Registry::add(const MPRecord& rec) {
    auto it = records_.find(rec.speaker_id);
    if (it == records_.end()) {
        records_.emplace(rec.speaker_id, rec);
        index_names(rec);
        return;
    }
    MPRecord& existing = it->second;
    if (existing.full_name != rec.full_name)
        throw RegistryError("conflicting full_name for speaker_id " +
                            rec.speaker_id + ": '" + existing.full_name +
                            "' vs '" + rec.full_name + "'");
    if (existing.gender == Gender::unknown) existing.gender = rec.gender;
    if (!existing.cabinet_name && rec.cabinet_name)
        existing.cabinet_name = rec.cabinet_name;
    for (const Mandate& m : rec.mandates) {
        // exact duplicates are dropped, so reloading a file is idempotent
        if (std::find(existing.mandates.begin(), existing.mandates.end(), m) ==
            existing.mandates.end())
            existing.mandates.push_back(m);
    }
}

void Registry::index_names(const MPRecord& rec) {
    auto put = [&](const std::string& name) {
        std::string key = text::norm_name(name);
        if (key.empty()) return;
        auto& ids = name_index_[key];
        if (std::find(ids.begin(), ids.end(), rec.speaker_id) == ids.end())
            ids.push_back(rec.speaker_id);
    };
    put(rec.full_name);
    put(rec.short_name);
}

const MPRecord* Registry::find(const std::string& speaker_id) const {
    auto it = records_.find(speaker_id);
    return it == records_.end() ? nullptr : &it->second;
}

const std::vector<std::string>* Registry::ids_for_name(
    const std::string& normalized) const {
    auto it = name_index_.find(normalized);
    return it == name_index_.end() ? nullptr : &it->second;
}

std::vector<const MPRecord*> Registry::candidates_for_session(
    int legislature, int session, std::optional<MandateRole> role_filter) const {
    std::vector<const MPRecord*> out;
    for (const auto& [id, rec] : records_) {
        for (const Mandate& m : rec.mandates) {
            if (m.legislature != legislature) continue;
            if (session < m.session_from || session > m.session_to) continue;
            if (role_filter && m.role != *role_filter) continue;
            out.push_back(&rec);
            break;
        }
    }
    return out;  // records_ iterates in speaker_id order
}

std::string Registry::to_csv() const {
    auto field = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += "\"\"";
            else out.push_back(c);
        }
        out += '"';
        return out;
    };
    std::string out;
    for (size_t i = 0; i < kCsvColumns.size(); ++i)
        out += (i ? "," : "") + kCsvColumns[i];
    out += '\n';
    for (const auto& [id, rec] : records_) {
        for (const Mandate& m : rec.mandates) {
            out += field(id) + "," + field(rec.full_name) + "," +
                   field(rec.short_name) + "," + to_string(rec.gender) + "," +
                   std::to_string(m.legislature) + "," +
                   std::to_string(m.session_from) + "," +
                   std::to_string(m.session_to) + "," + field(m.party) + "," +
                   to_string(m.role) + "," +
                   field(rec.cabinet_name.value_or("")) + "\n";
        }
    }
    return out;
}

}  // namespace ptparl
