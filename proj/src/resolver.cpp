#include "ptparl/resolver.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "ptparl/textnorm.hpp"

namespace ptparl {

namespace {

// Party of the first mandate covering (legislature, session), preferring the
// given role.
std::optional<std::string> party_for_session(const MPRecord& rec, int legislature,
                                             int session, MandateRole role) {
    for (const Mandate& m : rec.mandates)
        if (m.role == role && m.legislature == legislature &&
            session >= m.session_from && session <= m.session_to)
            return m.party;
    return std::nullopt;
}

Gender effective_gender(const Utterance& u, const Registry& registry) {
    if (u.speaker.speaker_id) {
        if (const MPRecord* rec = registry.find(*u.speaker.speaker_id);
            rec && rec->gender != Gender::unknown)
            return rec->gender;
    }
    return text::strip_honorific(u.speaker_string).gender;
}

}  // namespace

std::optional<SpeakerRef> resolve_president(const std::string& speaker_string,
                                            const RunConfig& config) {
    std::string norm = text::norm_key(speaker_string);
    for (const std::string& pattern : config.president_patterns) {
        if (text::similarity(norm, pattern) >= config.president_threshold)
            return SpeakerRef::make_president();
        // suffixed forms: "o sr. presidente em exercicio"
        if (norm.size() > pattern.size() && norm[pattern.size()] == ' ' &&
            text::similarity(norm.substr(0, pattern.size()), pattern) >=
                config.president_threshold)
            return SpeakerRef::make_president();
    }
    return std::nullopt;
}

SpeakerRef match_speaker(const std::string& speaker_string,
                         const std::vector<SessionCandidate>& candidates,
                         const RunConfig& config, std::string* reason) {
    auto set_reason = [&](const char* r) {
        if (reason) *reason = r;
    };
    if (candidates.empty()) {
        set_reason("no-candidates");
        return SpeakerRef::make_unresolved();
    }

    auto split = text::strip_honorific(speaker_string);
    auto [name_part, paren] = text::strip_trailing_paren(split.rest);
    std::optional<std::string> party;
    if (paren) {
        if (text::looks_like_party_code(*paren))
            party = *paren;
        else
            name_part = *paren;  // "(Carlos Mota)" after a cabinet title
    }
    std::string query = text::norm_name(name_part);
    if (query.empty()) {
        set_reason("empty-name");
        return SpeakerRef::make_unresolved();
    }

    double best = -1.0;
    std::vector<std::pair<const SessionCandidate*, double>> at_best;
    bool any_party_veto = false;
    const double min_keep = config.match_threshold;
    for (const SessionCandidate& c : candidates) {
        if (party && c.party != *party) {
            any_party_veto = true;
            continue;
        }
        auto score_vs = [&](const std::string& name) {
            std::string key = text::norm_name(name);
            size_t max_len = std::max(query.size(), key.size());
            if (max_len == 0) return 0.0;
            // length difference alone already bounds the score
            size_t diff = query.size() > key.size() ? query.size() - key.size()
                                                    : key.size() - query.size();
            if (1.0 - static_cast<double>(diff) / static_cast<double>(max_len) <
                min_keep)
                return 0.0;
            return text::similarity(query, key);
        };
        double score = std::max(score_vs(c.record->full_name),
                                score_vs(c.record->short_name));
        if (score > best) {
            best = score;
            at_best.clear();
        }
        if (score == best) at_best.emplace_back(&c, score);
    }

    if (best < config.match_threshold) {
        set_reason(any_party_veto && best <= 0.0 ? "party-veto" : "below-threshold");
        return SpeakerRef::make_unresolved();
    }
    if (at_best.size() > 1) {
        std::vector<std::pair<std::string, double>> ids;
        for (const auto& [c, score] : at_best)
            ids.emplace_back(c->record->speaker_id, score);
        std::sort(ids.begin(), ids.end());
        set_reason("tie");
        return SpeakerRef::make_ambiguous(std::move(ids));
    }
    const SessionCandidate& winner = *at_best.front().first;
    return SpeakerRef::make_resolved(winner.record->speaker_id,
                                     winner.record->short_name,
                                     winner.party.empty()
                                         ? std::nullopt
                                         : std::optional<std::string>(winner.party));
}

std::optional<Gender> orador_form(const std::string& speaker_string) {
    std::string norm = text::norm_key(speaker_string);
    if (norm == "o orador") return Gender::masculine;
    if (norm == "a oradora") return Gender::feminine;
    return std::nullopt;
}

SpeakerRef resolve_orador(const std::vector<Utterance>& preceding,
                          Gender form_gender, const Registry& registry,
                          std::string* reason) {
    for (size_t j = preceding.size(); j-- > 0;) {
        const Utterance& u = preceding[j];
        if (u.speaker.status != SpeakerStatus::resolved) continue;
        Gender g = effective_gender(u, registry);
        if (g == form_gender) return u.speaker;
    }
    if (reason) *reason = "orador-no-antecedent";
    return SpeakerRef::make_unresolved();
}

std::pair<std::vector<Utterance>, ResolutionReport> resolve_debate(
    const std::vector<RawUtterance>& utterances, const Registry& registry,
    const DebateMeta& meta, const RunConfig& config) {
    std::vector<SessionCandidate> mp_candidates;
    std::vector<SessionCandidate> gov_candidates;
    for (const MPRecord* rec :
         registry.candidates_for_session(meta.legislature, meta.session)) {
        if (auto party = party_for_session(*rec, meta.legislature, meta.session,
                                           MandateRole::mp))
            mp_candidates.push_back({rec, *party});
        if (auto party = party_for_session(*rec, meta.legislature, meta.session,
                                           MandateRole::government))
            gov_candidates.push_back({rec, *party});
    }

    // folded cabinet names of in-session government members
    std::vector<std::pair<std::string, const SessionCandidate*>> cabinets;
    for (const SessionCandidate& c : gov_candidates)
        if (c.record->cabinet_name)
            cabinets.emplace_back(text::norm_key(*c.record->cabinet_name), &c);

    std::vector<Utterance> out;
    out.reserve(utterances.size());
    ResolutionReport report;
    // identical speaker strings within one debate resolve identically
    std::unordered_map<std::string, std::pair<SpeakerRef, std::string>> memo;

    for (const RawUtterance& raw : utterances) {
        Utterance u;
        u.order = raw.order;
        u.page_start = raw.page_start;
        u.speaker_string = raw.speaker_string;
        u.text = raw.text;

        std::string reason;
        if (auto form = orador_form(raw.speaker_string)) {
            u.speaker = resolve_orador(out, *form, registry, &reason);
        } else if (auto it = memo.find(raw.speaker_string); it != memo.end()) {
            u.speaker = it->second.first;
            reason = it->second.second;
        } else {
            if (auto pres = resolve_president(raw.speaker_string, config)) {
                u.speaker = *pres;
            } else {
                // cabinet name in the speaker string scopes to Government
                std::string folded = text::norm_key(raw.speaker_string);
                std::vector<SessionCandidate> cabinet_scope;
                for (const auto& [cab, cand] : cabinets)
                    if (folded.find(cab) != std::string::npos)
                        cabinet_scope.push_back(*cand);
                if (!cabinet_scope.empty()) {
                    u.speaker = match_speaker(raw.speaker_string, cabinet_scope,
                                              config, &reason);
                    // a cabinet title names its holder even without a name
                    if (u.speaker.status == SpeakerStatus::unresolved &&
                        cabinet_scope.size() == 1) {
                        const SessionCandidate& c = cabinet_scope.front();
                        u.speaker = SpeakerRef::make_resolved(
                            c.record->speaker_id, c.record->short_name,
                            c.party.empty() ? std::nullopt
                                            : std::optional<std::string>(c.party));
                        reason.clear();
                    }
                } else {
                    u.speaker = match_speaker(raw.speaker_string, mp_candidates,
                                              config, &reason);
                }
            }
            memo.emplace(raw.speaker_string, std::make_pair(u.speaker, reason));
        }

        switch (u.speaker.status) {
            case SpeakerStatus::resolved: ++report.resolved; break;
            case SpeakerStatus::president: ++report.president; break;
            case SpeakerStatus::unresolved:
                ++report.unresolved;
                report.issues.push_back({u.order, u.page_start, u.speaker_string,
                                         "unresolved", reason});
                break;
            case SpeakerStatus::ambiguous:
                ++report.ambiguous;
                report.issues.push_back({u.order, u.page_start, u.speaker_string,
                                         "ambiguous", reason});
                break;
        }
        out.push_back(std::move(u));
    }
    return {std::move(out), std::move(report)};
}

AnnotatedDebate assemble_debate(const DebateMeta& meta,
                                const std::vector<Utterance>& utterances) {
    AnnotatedDebate d;
    d.meta = meta;
    for (const Utterance& u : utterances) {
        if (d.pages.empty() || d.pages.back().first != u.page_start)
            d.pages.emplace_back(u.page_start, std::vector<Utterance>{});
        d.pages.back().second.push_back(u);
    }
    return d;
}

}  // namespace ptparl
