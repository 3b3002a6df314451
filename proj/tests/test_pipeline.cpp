#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "ptparl/emitter.hpp"
#include "ptparl/pipeline.hpp"
#include "support/generator.hpp"

using namespace ptparl;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("ptparl-test-" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << bytes;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string diary_filename(const DebateMeta& m) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s-L%d-S%d-N%d-%s.txt", m.period.c_str(),
                  m.legislature, m.session, m.number, m.date.c_str());
    return buf;
}

struct Corpus {
    fs::path input;
    fs::path output;
    fs::path registry_csv;
    std::vector<testgen::GeneratedDiary> diaries;
};

Corpus make_corpus(const std::string& tag, int n_docs, unsigned seed) {
    std::mt19937 rng(seed);
    Corpus c;
    c.input = fresh_dir(tag + "-in");
    c.output = fresh_dir(tag + "-out");
    testgen::GeneratedRegistry reg = testgen::make_registry(rng, 12, 3, 5);
    c.registry_csv = c.input / "registry.csv";  // .csv: not picked up as input
    write(c.registry_csv, reg.registry.to_csv());
    for (int i = 0; i < n_docs; ++i) {
        DebateMeta meta{"r3", 5, 1, i + 1,
                        "1990-03-" + std::string(i + 1 < 10 ? "0" : "") +
                            std::to_string(i + 1)};
        testgen::GeneratedDiary d = testgen::make_diary(rng, reg, meta, {});
        write(c.input / diary_filename(meta), d.text);
        c.diaries.push_back(std::move(d));
    }
    return c;
}

AnnotateOptions options_for(const Corpus& c) {
    AnnotateOptions opt;
    opt.input_dir = c.input.string();
    opt.registry_paths = {c.registry_csv.string()};
    opt.output_dir = c.output.string();
    opt.quiet = true;
    return opt;
}

}  // namespace

TEST_CASE("annotate processes a corpus end to end") {
    Corpus c = make_corpus("e2e", 3, 41);
    RunSummary s = annotate(options_for(c));
    CHECK(s.documents == 3);
    CHECK(s.succeeded == 3);
    CHECK(s.failed == 0);
    CHECK(s.cached == 0);
    CHECK(s.stages_executed == 15);  // five stages per document

    for (const testgen::GeneratedDiary& d : c.diaries) {
        fs::path xml_path =
            c.output / (fs::path(diary_filename(d.meta)).stem().string() + ".xml");
        REQUIRE(fs::exists(xml_path));
        AnnotatedDebate debate = parse_debate_xml(slurp(xml_path));
        CHECK(debate.meta == d.meta);
        size_t n = 0;
        for (const auto& [page, utts] : debate.pages) n += utts.size();
        CHECK(n == d.expected.size());
    }
    CHECK(fs::exists(c.output / "reports" / "resolution.jsonl"));
    CHECK(fs::exists(c.output / "reports" / "summary.csv"));
    CHECK(fs::exists(c.output / "manifest.json"));

    std::string csv = slurp(c.output / "reports" / "summary.csv");
    CHECK(csv.find(",ok,") != std::string::npos);
    CHECK(csv.find("failed") == std::string::npos);
}

TEST_CASE("an unchanged rerun executes zero stages") {
    Corpus c = make_corpus("cache", 3, 42);
    AnnotateOptions opt = options_for(c);
    RunSummary first = annotate(opt);
    REQUIRE(first.failed == 0);

    RunSummary second = annotate(opt);
    CHECK(second.cached == 3);
    CHECK(second.succeeded == 3);
    CHECK(second.stages_executed == 0);
}

TEST_CASE("touching one source reprocesses only that document") {
    Corpus c = make_corpus("touch", 3, 43);
    AnnotateOptions opt = options_for(c);
    annotate(opt);

    fs::path target = c.input / diary_filename(c.diaries[1].meta);
    write(target, slurp(target) + "\n");
    RunSummary s = annotate(opt);
    CHECK(s.cached == 2);
    CHECK(s.stages_executed == 5);
}

TEST_CASE("a config change invalidates the cache") {
    Corpus c = make_corpus("cfg", 2, 44);
    AnnotateOptions opt = options_for(c);
    annotate(opt);
    opt.config.match_threshold = 0.9;
    RunSummary s = annotate(opt);
    CHECK(s.cached == 0);
    CHECK(s.succeeded == 2);
}

TEST_CASE("a deleted output is rebuilt even with a warm cache") {
    Corpus c = make_corpus("lost", 2, 45);
    AnnotateOptions opt = options_for(c);
    annotate(opt);
    fs::path lost =
        c.output / (fs::path(diary_filename(c.diaries[0].meta)).stem().string() + ".xml");
    fs::remove(lost);
    RunSummary s = annotate(opt);
    CHECK(s.cached == 1);
    CHECK(s.succeeded == 2);
    CHECK(fs::exists(lost));
}

TEST_CASE("one failing document does not block the others") {
    Corpus c = make_corpus("isolate", 2, 46);
    write(c.input / "DAR-L5-S1-N9-1990-04-01.txt",
          "Linhas sem qualquer estrutura de debate.\nMais texto corrido.\n");
    RunSummary s = annotate(options_for(c));
    CHECK(s.documents == 3);
    CHECK(s.succeeded == 2);
    CHECK(s.failed == 1);
    auto failed = std::find_if(s.results.begin(), s.results.end(),
                               [](const DocumentResult& r) { return !r.ok; });
    REQUIRE(failed != s.results.end());
    CHECK(failed->doc_id == "DAR-L5-S1-N9-1990-04-01");
    CHECK(failed->error.find("no-debate-found") != std::string::npos);
    std::string csv = slurp(c.output / "reports" / "summary.csv");
    CHECK(csv.find("DAR-L5-S1-N9-1990-04-01,failed") != std::string::npos);
}

TEST_CASE("a file outside the naming convention uses the sidecar manifest") {
    Corpus c = make_corpus("sidecar", 1, 47);
    std::mt19937 rng(470);
    testgen::GeneratedRegistry reg = testgen::make_registry(rng, 8, 2, 5);
    write(c.registry_csv, reg.registry.to_csv());
    // regenerate the conventional diary against the new registry
    fs::remove_all(c.input);
    fs::create_directories(c.input);
    write(c.registry_csv, reg.registry.to_csv());
    DebateMeta meta{"r3", 5, 1, 77, "1990-05-05"};
    testgen::GeneratedDiary d = testgen::make_diary(rng, reg, meta, {});
    write(c.input / "sessao-extra.txt", d.text);
    write(c.input / "manifest.json",
          R"({"files": [{"file": "sessao-extra.txt", "legislature": 5,
               "session": 1, "number": 77, "date": "1990-05-05"}]})");
    RunSummary s = annotate(options_for(c));
    CHECK(s.succeeded == 1);
    AnnotatedDebate parsed = parse_debate_xml(slurp(c.output / "sessao-extra.xml"));
    CHECK(parsed.meta == meta);
}

TEST_CASE("a file with no resolvable meta is reported, not fatal") {
    Corpus c = make_corpus("nometa", 1, 48);
    write(c.input / "avulso.txt", "qualquer coisa\n");
    RunSummary s = annotate(options_for(c));
    CHECK(s.documents == 2);
    CHECK(s.succeeded == 1);
    CHECK(s.failed == 1);
}

TEST_CASE("a missing input directory is a setup error") {
    Corpus c = make_corpus("setup", 1, 49);
    AnnotateOptions opt = options_for(c);
    opt.input_dir = (c.input / "nao-existe").string();
    CHECK_THROWS_AS(annotate(opt), PipelineSetupError);
    opt = options_for(c);
    opt.registry_paths = {(c.input / "registo-fantasma.csv").string()};
    CHECK_THROWS_AS(annotate(opt), PipelineSetupError);
}

TEST_CASE("outputs are byte-identical across job counts") {
    Corpus base = make_corpus("jobs1", 6, 50);
    AnnotateOptions opt1 = options_for(base);
    opt1.jobs = 1;
    annotate(opt1);

    fs::path out8 = fresh_dir("jobs8-out");
    AnnotateOptions opt8 = options_for(base);
    opt8.output_dir = out8.string();
    opt8.jobs = 8;
    annotate(opt8);

    for (const std::string& file : list_xml_files(base.output.string())) {
        fs::path name = fs::path(file).filename();
        CHECK(slurp(file) == slurp(out8 / name));
    }
    CHECK(slurp(base.output / "manifest.json") == slurp(out8 / "manifest.json"));
}

TEST_CASE("stats command aggregates a corpus and skips malformed files") {
    Corpus c = make_corpus("stats", 4, 51);
    annotate(options_for(c));
    write(c.output / "broken.xml", "<debate><unclosed>");

    fs::path prefix = c.output / "reports" / "corpus-stats";
    StatsCommandResult r =
        stats_command(c.output.string(), prefix.string(), RunConfig{});
    CHECK(r.stats.n_debates == 4);
    REQUIRE(r.skipped_files.size() == 1);
    CHECK(r.skipped_files[0].find("broken.xml") != std::string::npos);
    CHECK(fs::exists(prefix.string() + ".csv"));
    CHECK(fs::exists(prefix.string() + ".json"));

    std::int64_t expected_utts = 0;
    for (const auto& d : c.diaries)
        expected_utts += static_cast<std::int64_t>(d.expected.size());
    REQUIRE(r.stats.utterances_per_debate);
    CHECK(r.stats.utterances_per_debate->n == 4);
    CHECK(r.stats.utterances_per_debate->mean ==
          doctest::Approx(static_cast<double>(expected_utts) / 4.0));
}

TEST_CASE("validate command reports invariant violations per file") {
    Corpus c = make_corpus("validate", 2, 52);
    annotate(options_for(c));
    CHECK(validate_command(c.output.string()).empty());

    write(c.output / "zz-gap.xml",
          "<debate period=\"r3\" legislature=\"1\" session=\"1\" number=\"1\" "
          "date=\"1980-01-01\"><page number=\"1\">"
          "<utterance page-start=\"1\" speaker-string=\"X\" order=\"1\">a</utterance>"
          "<utterance page-start=\"1\" speaker-string=\"Y\" order=\"3\">b</utterance>"
          "</page></debate>");
    write(c.output / "zz-junk.xml", "nem sequer xml");
    std::vector<FileViolations> v = validate_command(c.output.string());
    REQUIRE(v.size() == 2);
    CHECK(v[0].file.find("zz-gap.xml") != std::string::npos);
    CHECK(v[0].violations[0].rule == "order-gap");
    CHECK(v[1].violations[0].rule == "not-parseable");
}
