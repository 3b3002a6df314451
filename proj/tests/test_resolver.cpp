#include "doctest.h"

#include <random>

#include "ptparl/resolver.hpp"
#include "ptparl/textnorm.hpp"
#include "support/generator.hpp"

using namespace ptparl;

namespace {

const RunConfig kConfig;

MPRecord mp(const std::string& id, const std::string& full_name,
            const std::string& party, Gender gender = Gender::masculine) {
    MPRecord rec;
    rec.speaker_id = id;
    rec.full_name = full_name;
    rec.short_name = full_name;
    rec.gender = gender;
    rec.mandates.push_back({1, 1, 4, party, MandateRole::mp});
    return rec;
}

Utterance resolved_utterance(int order, const std::string& speaker_string,
                             const std::string& id, const std::string& name) {
    Utterance u;
    u.order = order;
    u.page_start = 1;
    u.speaker_string = speaker_string;
    u.text = "texto";
    u.speaker = SpeakerRef::make_resolved(id, name, std::nullopt);
    return u;
}

}  // namespace

TEST_CASE("president patterns") {
    CHECK(resolve_president("O Sr. Presidente", kConfig).has_value());
    CHECK(resolve_president("A Sr.ª Presidente", kConfig).has_value());
    CHECK(resolve_president("O Sr. Presidente em exercício", kConfig).has_value());
    CHECK_FALSE(resolve_president("O Sr. Alberto Alves (AB)", kConfig).has_value());
    CHECK_FALSE(resolve_president("O Sr. Primeiro-Ministro", kConfig).has_value());
}

TEST_CASE("match_speaker resolves the canonical one-edit example") {
    MPRecord alves = mp("123", "Alberto Alves", "AB");
    std::vector<SessionCandidate> candidates = {{&alves, "AB"}};
    SpeakerRef ref = match_speaker("O Sr. Alberto Alves (AB)", candidates, kConfig);
    REQUIRE(ref.status == SpeakerStatus::resolved);
    CHECK(*ref.speaker_id == "123");
    CHECK(*ref.speaker_name == "Alberto Alves");
    CHECK(*ref.speaker_party == "AB");
}

TEST_CASE("single-character OCR noise still resolves") {
    MPRecord alves = mp("123", "Alberto Alves", "AB");
    std::vector<SessionCandidate> candidates = {{&alves, "AB"}};
    // similarity 1 - 1/12 over the space-free normalization
    SpeakerRef ref = match_speaker("O Sr. Alberto A1ves (AB)", candidates, kConfig);
    CHECK(ref.status == SpeakerStatus::resolved);
}

TEST_CASE("equal top scores produce an ambiguous reference") {
    MPRecord first = mp("1", "António Silva", "PS");
    MPRecord second = mp("2", "Antonio Silva", "PS");
    std::vector<SessionCandidate> candidates = {{&first, "PS"}, {&second, "PS"}};
    SpeakerRef ref = match_speaker("O Sr. António Silva (PS)", candidates, kConfig);
    REQUIRE(ref.status == SpeakerStatus::ambiguous);
    REQUIRE(ref.candidates.size() == 2);
    CHECK(ref.candidates[0].second == ref.candidates[1].second);
}

TEST_CASE("a party mismatch vetoes an otherwise perfect candidate") {
    MPRecord alves = mp("123", "Alberto Alves", "AB");
    std::vector<SessionCandidate> candidates = {{&alves, "AB"}};
    std::string reason;
    SpeakerRef ref =
        match_speaker("O Sr. Alberto Alves (XY)", candidates, kConfig, &reason);
    CHECK(ref.status == SpeakerStatus::unresolved);
    CHECK(reason == "party-veto");
}

TEST_CASE("empty candidate set reports no-candidates") {
    std::string reason;
    SpeakerRef ref = match_speaker("O Sr. Alberto Alves (AB)", {}, kConfig, &reason);
    CHECK(ref.status == SpeakerStatus::unresolved);
    CHECK(reason == "no-candidates");
}

TEST_CASE("below-threshold names stay unresolved") {
    MPRecord alves = mp("123", "Alberto Alves", "AB");
    std::vector<SessionCandidate> candidates = {{&alves, "AB"}};
    std::string reason;
    SpeakerRef ref = match_speaker("O Sr. Rui Costa", candidates, kConfig, &reason);
    CHECK(ref.status == SpeakerStatus::unresolved);
    CHECK(reason == "below-threshold");
}

TEST_CASE("orador back-reference skips the president and matches gender") {
    Registry registry;
    registry.add(mp("1", "Alberto Alves", "AB", Gender::masculine));
    registry.add(mp("2", "Teresa Cardoso", "PS", Gender::feminine));

    SUBCASE("masculine chain over a presidential interruption") {
        std::vector<Utterance> preceding = {
            resolved_utterance(1, "O Sr. Alberto Alves (AB)", "1", "Alberto Alves")};
        Utterance pres;
        pres.order = 2;
        pres.page_start = 1;
        pres.speaker_string = "O Sr. Presidente";
        pres.speaker = SpeakerRef::make_president();
        pres.text = "interrompo";
        preceding.push_back(pres);

        SpeakerRef ref = resolve_orador(preceding, Gender::masculine, registry);
        REQUIRE(ref.status == SpeakerStatus::resolved);
        CHECK(*ref.speaker_id == "1");
    }

    SUBCASE("feminine form skips a masculine heckler") {
        std::vector<Utterance> preceding = {
            resolved_utterance(1, "A Sr.ª Teresa Cardoso (PS)", "2",
                               "Teresa Cardoso"),
            resolved_utterance(2, "O Sr. Alberto Alves (AB)", "1", "Alberto Alves")};
        SpeakerRef ref = resolve_orador(preceding, Gender::feminine, registry);
        REQUIRE(ref.status == SpeakerStatus::resolved);
        CHECK(*ref.speaker_id == "2");
    }

    SUBCASE("no antecedent") {
        std::string reason;
        SpeakerRef ref = resolve_orador({}, Gender::masculine, registry, &reason);
        CHECK(ref.status == SpeakerStatus::unresolved);
        CHECK(reason == "orador-no-antecedent");
    }
}

TEST_CASE("gender inference falls back to the honorific") {
    Registry registry;
    registry.add(mp("1", "Alberto Alves", "AB", Gender::unknown));
    std::vector<Utterance> preceding = {
        resolved_utterance(1, "O Sr. Alberto Alves (AB)", "1", "Alberto Alves")};
    SpeakerRef ref = resolve_orador(preceding, Gender::masculine, registry);
    CHECK(ref.status == SpeakerStatus::resolved);
}

TEST_CASE("resolve_debate composes and the report adds up") {
    Registry registry;
    registry.add(mp("1", "Alberto Alves", "AB", Gender::masculine));
    std::vector<RawUtterance> raw = {
        {1, 1, "O Sr. Presidente", "abre a sessao"},
        {2, 1, "O Sr. Alberto Alves (AB)", "primeira fala"},
        {3, 1, "O Sr. Presidente", "interrompe"},
        {4, 1, "O Orador", "continua"},
        {5, 2, "O Sr. Desconhecido (ZZ)", "quem sou eu"},
    };
    DebateMeta meta{"r3", 1, 1, 1, "1976-06-03"};
    auto [utterances, report] = resolve_debate(raw, registry, meta, kConfig);
    REQUIRE(utterances.size() == 5);
    CHECK(utterances[0].speaker.status == SpeakerStatus::president);
    CHECK(*utterances[1].speaker.speaker_id == "1");
    CHECK(*utterances[3].speaker.speaker_id == "1");  // Orador -> Alves
    CHECK(utterances[4].speaker.status == SpeakerStatus::unresolved);
    CHECK(report.resolved == 2);
    CHECK(report.president == 2);
    CHECK(report.unresolved == 1);
    CHECK(report.total() == 5);
    REQUIRE(report.issues.size() == 1);
    CHECK(report.issues[0].order == 5);
}

TEST_CASE("government members match through their cabinet name") {
    Registry registry;
    MPRecord minister;
    minister.speaker_id = "9";
    minister.full_name = "Carlos Mota";
    minister.short_name = "Carlos Mota";
    minister.gender = Gender::masculine;
    minister.cabinet_name = "Ministro das Finanças";
    minister.mandates.push_back({1, 1, 4, "GOV", MandateRole::government});
    registry.add(minister);

    DebateMeta meta{"r3", 1, 1, 1, "1976-06-03"};
    SUBCASE("cabinet plus name in parentheses") {
        std::vector<RawUtterance> raw = {
            {1, 1, "O Sr. Ministro das Finanças (Carlos Mota)", "orçamento"}};
        auto [utterances, report] = resolve_debate(raw, registry, meta, kConfig);
        REQUIRE(utterances[0].speaker.status == SpeakerStatus::resolved);
        CHECK(*utterances[0].speaker.speaker_id == "9");
    }
    SUBCASE("bare cabinet title with a unique holder") {
        std::vector<RawUtterance> raw = {
            {1, 1, "O Sr. Ministro das Finanças", "orçamento"}};
        auto [utterances, report] = resolve_debate(raw, registry, meta, kConfig);
        REQUIRE(utterances[0].speaker.status == SpeakerStatus::resolved);
        CHECK(*utterances[0].speaker.speaker_id == "9");
    }
}

TEST_CASE("a debate of only president utterances resolves as all-president") {
    Registry registry;
    std::vector<RawUtterance> raw = {{1, 1, "O Sr. Presidente", "um"},
                                     {2, 1, "O Sr. Presidente", "dois"}};
    DebateMeta meta{"r3", 1, 1, 1, "1976-06-03"};
    auto [utterances, report] = resolve_debate(raw, registry, meta, kConfig);
    CHECK(report.president == 2);
    CHECK(report.total() == 2);
}

TEST_CASE("an empty registry leaves all non-president utterances unresolved") {
    Registry registry;
    std::vector<RawUtterance> raw = {{1, 1, "O Sr. Presidente", "um"},
                                     {2, 1, "O Sr. Alberto Alves (AB)", "dois"}};
    DebateMeta meta{"r3", 1, 1, 1, "1976-06-03"};
    auto [utterances, report] = resolve_debate(raw, registry, meta, kConfig);
    CHECK(report.president == 1);
    CHECK(report.unresolved == 1);
}

TEST_CASE("resolution of a generated debate matches the generator's labels") {
    std::mt19937 rng(5);
    auto reg = testgen::make_registry(rng, 10, 2, 1);
    DebateMeta meta{"r3", 1, 1, 1, "1976-06-03"};
    testgen::DiaryOptions options;
    options.n_utterances = 40;
    auto diary = testgen::make_diary(rng, reg, meta, options);

    std::vector<RawUtterance> raw;
    for (const auto& e : diary.expected) raw.push_back(e.raw);
    auto [utterances, report] = resolve_debate(raw, reg.registry, meta, kConfig);
    REQUIRE(utterances.size() == diary.expected.size());
    for (size_t i = 0; i < utterances.size(); ++i) {
        const auto& expected = diary.expected[i];
        CHECK(utterances[i].speaker.status == expected.status);
        if (expected.status == SpeakerStatus::resolved)
            CHECK(*utterances[i].speaker.speaker_id == expected.speaker_id);
    }
    CHECK(report.total() == static_cast<int>(utterances.size()));
}

TEST_CASE("resolution is deterministic") {
    std::mt19937 rng(6);
    auto reg = testgen::make_registry(rng, 8, 1, 1);
    DebateMeta meta{"r3", 1, 2, 3, "1977-01-10"};
    testgen::DiaryOptions options;
    options.n_utterances = 25;
    auto diary = testgen::make_diary(rng, reg, meta, options);
    std::vector<RawUtterance> raw;
    for (const auto& e : diary.expected) raw.push_back(e.raw);
    auto first = resolve_debate(raw, reg.registry, meta, kConfig);
    auto second = resolve_debate(raw, reg.registry, meta, kConfig);
    CHECK(first.first == second.first);
}

TEST_CASE("assemble_debate groups by page and validates") {
    std::vector<Utterance> utterances = {
        resolved_utterance(1, "O Sr. Alberto Alves (AB)", "1", "Alberto Alves"),
        resolved_utterance(2, "O Sr. Alberto Alves (AB)", "1", "Alberto Alves")};
    utterances[1].page_start = 2;
    DebateMeta meta{"r3", 1, 1, 1, "1976-06-03"};
    AnnotatedDebate d = assemble_debate(meta, utterances);
    REQUIRE(d.pages.size() == 2);
    CHECK(d.pages[0].first == 1);
    CHECK(d.pages[1].first == 2);
    CHECK(validate_debate(d).empty());
}
