#pragma once

#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ptparl/model.hpp"

namespace ptparl {

struct RegistryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Temporal database of MPs and Government members. Built single-threaded
// from CSV and/or XML biography files, then used read-only by the resolver.
class Registry {
public:
    // CSV columns: speaker_id, full_name, short_name, gender, legislature,
    // session_from, session_to, party, role, cabinet_name. Header required.
    // Rows for the same speaker_id merge mandates under one record.
    void load_csv(std::istream& in, const std::string& source_name = "<csv>");
    void load_csv_file(const std::string& path);

    // XML biography file: <registry> of <person> elements with <mandate>
    // children; same field set and merge semantics as CSV.
    void load_xml(const std::string& bytes, const std::string& source_name = "<xml>");
    void load_xml_file(const std::string& path);

    // Loads by extension (.csv / .xml).
    void load_file(const std::string& path);

    void add(const MPRecord& rec);

    const MPRecord* find(const std::string& speaker_id) const;

    // IDs of records whose full or short name normalizes to norm_name(name).
    const std::vector<std::string>* ids_for_name(const std::string& normalized) const;

    // Records holding a mandate covering (legislature, session), optionally
    // filtered by role; ordered by speaker_id.
    std::vector<const MPRecord*> candidates_for_session(
        int legislature, int session,
        std::optional<MandateRole> role_filter = std::nullopt) const;

    std::size_t size() const { return records_.size(); }
    const std::map<std::string, MPRecord>& records() const { return records_; }

    // Canonical CSV dump (same column set the loader accepts); records and
    // mandates in deterministic order.
    std::string to_csv() const;

private:
    void index_names(const MPRecord& rec);

    std::map<std::string, MPRecord> records_;
    std::unordered_map<std::string, std::vector<std::string>> name_index_;
};

}  // namespace ptparl
