#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptparl/config.hpp"
#include "ptparl/model.hpp"
#include "ptparl/registry.hpp"
#include "ptparl/segmenter.hpp"

namespace ptparl {

struct ResolutionReport {
    int resolved = 0;
    int president = 0;
    int unresolved = 0;
    int ambiguous = 0;

    struct Issue {
        int order = 0;
        int page_start = 0;
        std::string speaker_string;
        std::string status;  // "unresolved" or "ambiguous"
        std::string reason;
    };
    std::vector<Issue> issues;

    int total() const { return resolved + president + unresolved + ambiguous; }
};

// President reference when the speaker string fuzzy-matches a president
// pattern (similarity >= president_threshold, or a pattern extended by a
// suffix such as "em exercício"); nullopt otherwise.
std::optional<SpeakerRef> resolve_president(const std::string& speaker_string,
                                            const RunConfig& config);

// One registry candidate scoped to the debate's session, carrying the party
// of the covering mandate.
struct SessionCandidate {
    const MPRecord* record = nullptr;
    std::string party;
};

// Fuzzy name match: score = 1 - editdistance(norm(s'), norm(name))/max(len)
// over honorific- and party-stripped names. Best candidate wins if its score
// reaches match_threshold and strictly exceeds the runner-up; a party in the
// speaker string vetoes candidates with a different mandate party; equal top
// scores produce an ambiguous reference.
SpeakerRef match_speaker(const std::string& speaker_string,
                         const std::vector<SessionCandidate>& candidates,
                         const RunConfig& config,
                         std::string* reason = nullptr);

// True when the speaker string is an Orador back-reference form; reports the
// gender of the form.
std::optional<Gender> orador_form(const std::string& speaker_string);

// Nearest preceding resolved, non-president utterance whose gender (registry
// gender, else honorific inference) matches the Orador form. `preceding` are
// the already-resolved utterances before the Orador one, in document order.
SpeakerRef resolve_orador(const std::vector<Utterance>& preceding,
                          Gender form_gender, const Registry& registry,
                          std::string* reason = nullptr);

// president -> speaker match -> Orador back-reference, one forward pass.
std::pair<std::vector<Utterance>, ResolutionReport> resolve_debate(
    const std::vector<RawUtterance>& utterances, const Registry& registry,
    const DebateMeta& meta, const RunConfig& config);

// Groups resolved utterances into <page> buckets by page_start.
AnnotatedDebate assemble_debate(const DebateMeta& meta,
                                const std::vector<Utterance>& utterances);

}  // namespace ptparl
