#include "ptparl/model.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace ptparl {

const char* to_string(SpeakerStatus s) {
    switch (s) {
        case SpeakerStatus::resolved: return "resolved";
        case SpeakerStatus::president: return "president";
        case SpeakerStatus::unresolved: return "unresolved";
        case SpeakerStatus::ambiguous: return "ambiguous";
    }
    return "?";
}

const char* to_string(Gender g) {
    switch (g) {
        case Gender::masculine: return "masculine";
        case Gender::feminine: return "feminine";
        case Gender::unknown: return "unknown";
    }
    return "?";
}

const char* to_string(MandateRole r) {
    switch (r) {
        case MandateRole::mp: return "MP";
        case MandateRole::government: return "government";
        case MandateRole::president_of_assembly: return "president-of-assembly";
        case MandateRole::secretary: return "secretary";
        case MandateRole::guest: return "guest";
    }
    return "?";
}

std::optional<MandateRole> mandate_role_from_string(const std::string& s) {
    if (s == "MP") return MandateRole::mp;
    if (s == "government") return MandateRole::government;
    if (s == "president-of-assembly") return MandateRole::president_of_assembly;
    if (s == "secretary") return MandateRole::secretary;
    if (s == "guest") return MandateRole::guest;
    return std::nullopt;
}

SpeakerRef SpeakerRef::make_resolved(std::string id, std::string name,
                                     std::optional<std::string> party) {
    SpeakerRef r;
    r.status = SpeakerStatus::resolved;
    r.speaker_id = std::move(id);
    r.speaker_name = std::move(name);
    r.speaker_party = std::move(party);
    return r;
}

SpeakerRef SpeakerRef::make_president() {
    SpeakerRef r;
    r.status = SpeakerStatus::president;
    r.speaker_role = "president";
    return r;
}

SpeakerRef SpeakerRef::make_unresolved() {
    return SpeakerRef{};
}

SpeakerRef SpeakerRef::make_ambiguous(
    std::vector<std::pair<std::string, double>> candidates) {
    SpeakerRef r;
    r.status = SpeakerStatus::ambiguous;
    r.candidates = std::move(candidates);
    return r;
}

namespace {

bool is_trimmed_empty(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isspace(c) != 0;
    });
}

bool valid_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    int year = std::stoi(s.substr(0, 4));
    int month = std::stoi(s.substr(5, 2));
    int day = std::stoi(s.substr(8, 2));
    if (year < 1 || month < 1 || month > 12 || day < 1) return false;
    static const int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int max_day = days[month - 1];
    bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    if (month == 2 && leap) max_day = 29;
    return day <= max_day;
}

bool speaker_fields_consistent(const SpeakerRef& s) {
    switch (s.status) {
        case SpeakerStatus::resolved:
            return s.speaker_id && s.speaker_name && !s.speaker_role;
        case SpeakerStatus::president:
            return s.speaker_role && *s.speaker_role == "president";
        case SpeakerStatus::unresolved:
            return !s.speaker_id && !s.speaker_role;
        case SpeakerStatus::ambiguous: {
            if (s.candidates.size() < 2) return false;
            double top = s.candidates.front().second;
            return s.candidates.size() >= 2 && s.candidates[1].second == top;
        }
    }
    return false;
}

}  // namespace

std::vector<Violation> validate_debate(const AnnotatedDebate& d) {
    std::vector<Violation> out;
    auto add = [&](std::string path, std::string rule, std::string msg) {
        out.push_back({std::move(path), std::move(rule), std::move(msg)});
    };

    if (d.meta.period.empty())
        add("meta/period", "empty-period", "period must be non-empty");
    if (d.meta.legislature < 1)
        add("meta/legislature", "non-positive", "legislature must be >= 1");
    if (d.meta.session < 1)
        add("meta/session", "non-positive", "session must be >= 1");
    if (d.meta.number < 1)
        add("meta/number", "non-positive", "number must be >= 1");
    if (!valid_date(d.meta.date))
        add("meta/date", "bad-date", "date must be a valid YYYY-MM-DD: '" + d.meta.date + "'");

    std::set<int> page_numbers;
    int prev_page = 0;
    for (size_t p = 0; p < d.pages.size(); ++p) {
        const std::string path = "page[" + std::to_string(d.pages[p].first) + "]";
        int num = d.pages[p].first;
        if (num < 1) add(path, "non-positive", "page number must be >= 1");
        if (num <= prev_page)
            add(path, "page-order", "page numbers must be strictly increasing");
        prev_page = num;
        page_numbers.insert(num);
    }

    int expected_order = 1;
    for (const auto& [page_num, utts] : d.pages) {
        for (size_t i = 0; i < utts.size(); ++i) {
            const Utterance& u = utts[i];
            const std::string path = "page[" + std::to_string(page_num) +
                                     "]/utterance[" + std::to_string(u.order) + "]";
            if (u.order != expected_order)
                add(path, "order-gap",
                    "expected order " + std::to_string(expected_order) +
                        ", found " + std::to_string(u.order));
            expected_order = u.order + 1;
            if (is_trimmed_empty(u.text))
                add(path, "empty-text", "utterance text is empty after trimming");
            if (u.speaker_string.empty())
                add(path, "empty-speaker-string", "speaker_string is empty");
            if (!page_numbers.contains(u.page_start))
                add(path, "dangling-page",
                    "page_start " + std::to_string(u.page_start) +
                        " is not a page of this document");
            if (!speaker_fields_consistent(u.speaker))
                add(path, "speaker-fields",
                    std::string("speaker fields inconsistent with status ") +
                        to_string(u.speaker.status));
        }
    }
    return out;
}

}  // namespace ptparl
