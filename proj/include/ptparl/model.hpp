#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ptparl {

// Identity of one parliamentary sitting.
struct DebateMeta {
    std::string period = "r3";
    int legislature = 0;
    int session = 0;
    int number = 0;
    std::string date;  // YYYY-MM-DD

    bool operator==(const DebateMeta&) const = default;
};

// One journal page of raw text.
struct Page {
    int number = 0;
    std::vector<std::string> lines;

    bool operator==(const Page&) const = default;
};

enum class SpeakerStatus { resolved, president, unresolved, ambiguous };

const char* to_string(SpeakerStatus s);

// Resolution outcome for an utterance's speaker string. Use the factory
// functions; they enforce the status/field-presence rules.
struct SpeakerRef {
    SpeakerStatus status = SpeakerStatus::unresolved;
    std::optional<std::string> speaker_id;
    std::optional<std::string> speaker_name;
    std::optional<std::string> speaker_party;
    std::optional<std::string> speaker_role;  // only "president"
    std::vector<std::pair<std::string, double>> candidates;  // ambiguous only

    static SpeakerRef make_resolved(std::string id, std::string name,
                                    std::optional<std::string> party);
    static SpeakerRef make_president();
    static SpeakerRef make_unresolved();
    static SpeakerRef make_ambiguous(
        std::vector<std::pair<std::string, double>> candidates);

    bool operator==(const SpeakerRef&) const = default;
};

struct Utterance {
    int order = 0;
    int page_start = 0;
    std::string speaker_string;
    SpeakerRef speaker;
    std::string text;

    bool operator==(const Utterance&) const = default;
};

struct AnnotatedDebate {
    DebateMeta meta;
    // (page number, utterances starting on that page), page order preserved
    std::vector<std::pair<int, std::vector<Utterance>>> pages;

    bool operator==(const AnnotatedDebate&) const = default;
};

enum class Gender { masculine, feminine, unknown };

const char* to_string(Gender g);

enum class MandateRole { mp, government, president_of_assembly, secretary, guest };

const char* to_string(MandateRole r);
std::optional<MandateRole> mandate_role_from_string(const std::string& s);

struct Mandate {
    int legislature = 0;
    int session_from = 0;
    int session_to = 0;
    std::string party;
    MandateRole role = MandateRole::mp;

    bool operator==(const Mandate&) const = default;
};

// Registry entry for an MP or Government member.
struct MPRecord {
    std::string speaker_id;
    std::string full_name;
    std::string short_name;
    Gender gender = Gender::unknown;
    std::vector<Mandate> mandates;
    std::optional<std::string> cabinet_name;

    bool operator==(const MPRecord&) const = default;
};

// One invariant violation found by validate_debate.
struct Violation {
    std::string path;     // e.g. "page[3]/utterance[2]"
    std::string rule;     // e.g. "order-gap"
    std::string message;
};

// Checks every AnnotatedDebate invariant. Violations are data, not failures,
// so a whole corpus can be validated in one pass.
std::vector<Violation> validate_debate(const AnnotatedDebate& d);

}  // namespace ptparl
