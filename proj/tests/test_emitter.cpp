#include "doctest.h"

#include <random>

#include "ptparl/emitter.hpp"
#include "support/generator.hpp"

using namespace ptparl;

namespace {

AnnotatedDebate scheme_example() {
    AnnotatedDebate d;
    d.meta = {"r3", 1, 1, 1, "1976-06-03"};
    Utterance first;
    first.order = 1;
    first.page_start = 1;
    first.speaker_string = "O Sr. Presidente";
    first.speaker = SpeakerRef::make_president();
    first.text = "Dou a palavra ao senhor Alberto Alves";
    Utterance second;
    second.order = 2;
    second.page_start = 1;
    second.speaker_string = "O Sr. Alberto Alves (AB)";
    second.speaker = SpeakerRef::make_resolved("123", "Alberto Alves", "AB");
    second.text = "Blah";
    d.pages.emplace_back(1, std::vector<Utterance>{first, second});
    return d;
}

}  // namespace

TEST_CASE("the scheme example emits exactly") {
    const char* expected =
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<debate period=\"r3\" legislature=\"1\" session=\"1\" number=\"1\" "
        "date=\"1976-06-03\">\n"
        "    <page number=\"1\">\n"
        "        <utterance page-start=\"1\" speaker-string=\"O Sr. Presidente\" "
        "speaker-role=\"president\" order=\"1\">Dou a palavra ao senhor Alberto "
        "Alves</utterance>\n"
        "        <utterance page-start=\"1\" speaker-id=\"123\" "
        "speaker-name=\"Alberto Alves\" speaker-party=\"AB\" "
        "speaker-string=\"O Sr. Alberto Alves (AB)\" order=\"2\">Blah</utterance>\n"
        "    </page>\n"
        "</debate>\n";
    CHECK(emit_debate_xml(scheme_example()) == expected);
}

TEST_CASE("markup characters in text and attributes are escaped") {
    AnnotatedDebate d = scheme_example();
    d.pages[0].second[1].text = "a < b & c";
    d.pages[0].second[1].speaker_string = "O Sr. \"X\" <Y>";
    std::string xml = emit_debate_xml(d);
    CHECK(xml.find("a &lt; b &amp; c") != std::string::npos);
    CHECK(xml.find("O Sr. &quot;X&quot; &lt;Y&gt;") != std::string::npos);
    CHECK(parse_debate_xml(xml) == d);
}

TEST_CASE("president utterances carry no speaker-id; unresolved carry string only") {
    AnnotatedDebate d = scheme_example();
    d.pages[0].second[1].speaker = SpeakerRef::make_unresolved();
    std::string xml = emit_debate_xml(d);
    // first utterance line: president
    size_t pres = xml.find("speaker-role=\"president\"");
    REQUIRE(pres != std::string::npos);
    size_t line_start = xml.rfind('\n', pres);
    size_t line_end = xml.find('\n', pres);
    std::string line = xml.substr(line_start, line_end - line_start);
    CHECK(line.find("speaker-id") == std::string::npos);
    // second utterance: no speaker-id / name / party / role
    size_t second = xml.find("order=\"2\"");
    std::string second_line = xml.substr(xml.rfind('\n', second), second);
    CHECK(second_line.find("speaker-id") == std::string::npos);
    CHECK(second_line.find("speaker-role") == std::string::npos);
    CHECK(second_line.find("speaker-string") != std::string::npos);
}

TEST_CASE("invalid debates are refused with the validator's violations") {
    AnnotatedDebate d = scheme_example();
    d.pages[0].second[1].order = 7;
    try {
        emit_debate_xml(d);
        FAIL("expected EmitError");
    } catch (const EmitError& e) {
        REQUIRE_FALSE(e.violations.empty());
        CHECK(e.violations[0].rule == "order-gap");
    }
}

TEST_CASE("emission is deterministic") {
    std::mt19937 rng(21);
    AnnotatedDebate d = testgen::make_random_debate(rng);
    CHECK(emit_debate_xml(d) == emit_debate_xml(d));
}

TEST_CASE("round trip over randomized valid debates") {
    std::mt19937 rng(22);
    for (int i = 0; i < 300; ++i) {
        AnnotatedDebate d = testgen::make_random_debate(rng);
        AnnotatedDebate back = parse_debate_xml(emit_debate_xml(d));
        CHECK(back == d);
    }
}

TEST_CASE("missing order attribute is a schema error") {
    std::string xml =
        "<debate period=\"r3\" legislature=\"1\" session=\"1\" number=\"1\" "
        "date=\"1976-06-03\"><page number=\"1\">"
        "<utterance page-start=\"1\" speaker-string=\"X\">texto</utterance>"
        "</page></debate>";
    CHECK_THROWS_WITH_AS(parse_debate_xml(xml), doctest::Contains("order"),
                         ParseError);
}

TEST_CASE("unknown attributes: strict errors, lax warns") {
    std::string xml =
        "<debate period=\"r3\" legislature=\"1\" session=\"1\" number=\"1\" "
        "date=\"1976-06-03\"><page number=\"1\">"
        "<utterance page-start=\"1\" speaker-string=\"X\" order=\"1\" "
        "mystery=\"y\">texto</utterance></page></debate>";
    CHECK_THROWS_WITH_AS(parse_debate_xml(xml, /*strict=*/true),
                         doctest::Contains("mystery"), ParseError);
    std::vector<std::string> warnings;
    AnnotatedDebate d = parse_debate_xml(xml, /*strict=*/false, &warnings);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("mystery") != std::string::npos);
    CHECK(d.pages[0].second[0].speaker_string == "X");
}

TEST_CASE("ambiguous speakers emit candidates-count unless strict") {
    AnnotatedDebate d = scheme_example();
    d.pages[0].second[1].speaker = SpeakerRef::make_ambiguous(
        {{"5", 0.9}, {"6", 0.9}});
    std::string lax = emit_debate_xml(d, /*strict=*/false);
    CHECK(lax.find("candidates-count=\"2\"") != std::string::npos);
    std::string strict = emit_debate_xml(d, /*strict=*/true);
    CHECK(strict.find("candidates-count") == std::string::npos);
    // lax output parses back with the ambiguity downgraded to unresolved
    std::vector<std::string> warnings;
    AnnotatedDebate back = parse_debate_xml(lax, false, &warnings);
    CHECK(back.pages[0].second[1].speaker.status == SpeakerStatus::unresolved);
    CHECK_FALSE(warnings.empty());
}

TEST_CASE("parse errors carry the element path") {
    std::string xml =
        "<debate period=\"r3\" legislature=\"1\" session=\"1\" number=\"1\" "
        "date=\"1976-06-03\"><page number=\"1\"><utterance page-start=\"0\" "
        "speaker-string=\"X\" order=\"1\">t</utterance></page></debate>";
    CHECK_THROWS_WITH_AS(parse_debate_xml(xml),
                         doctest::Contains("/debate/page[1]/utterance[1]"),
                         ParseError);
}
