#include "ptparl/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "ptparl/emitter.hpp"
#include "ptparl/ingest.hpp"
#include "ptparl/stats.hpp"

namespace ptparl {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << bytes;
}

std::string serialize_paged(const PagedText& pt) {
    std::string out = pt.meta.period + "|" + std::to_string(pt.meta.legislature) +
                      "|" + std::to_string(pt.meta.session) + "|" +
                      std::to_string(pt.meta.number) + "|" + pt.meta.date + "\n";
    for (const Page& p : pt.pages) {
        out += "#" + std::to_string(p.number) + "\n";
        for (const std::string& line : p.lines) out += line + "\n";
    }
    return out;
}

std::string serialize_raw_utterances(const std::vector<RawUtterance>& utterances) {
    std::string out;
    for (const RawUtterance& u : utterances)
        out += std::to_string(u.order) + "|" + std::to_string(u.page_start) + "|" +
               u.speaker_string + "|" + u.text + "\n";
    return out;
}

std::string serialize_resolved(const std::vector<Utterance>& utterances) {
    std::string out;
    for (const Utterance& u : utterances) {
        out += std::to_string(u.order) + "|" + std::to_string(u.page_start) + "|" +
               u.speaker_string + "|" + to_string(u.speaker.status) + "|" +
               u.speaker.speaker_id.value_or("") + "|" + u.text + "\n";
    }
    return out;
}

struct SourceDoc {
    std::string doc_id;
    fs::path path;
    DebateMeta meta;
    SourceKind kind = SourceKind::paged_text;
};

std::vector<SourceDoc> discover_inputs(const fs::path& input_dir,
                                       std::vector<std::string>* problems) {
    if (!fs::is_directory(input_dir))
        throw PipelineSetupError("input directory does not exist: " +
                                 input_dir.string());

    // optional sidecar manifest for files that do not follow the naming
    // convention
    std::map<std::string, DebateMeta> manifest;
    fs::path manifest_path = input_dir / "manifest.json";
    if (fs::exists(manifest_path)) {
        try {
            json j = json::parse(read_file(manifest_path));
            for (const json& entry : j.at("files")) {
                DebateMeta meta;
                meta.period = entry.value("period", "r3");
                meta.legislature = entry.at("legislature").get<int>();
                meta.session = entry.at("session").get<int>();
                meta.number = entry.at("number").get<int>();
                meta.date = entry.at("date").get<std::string>();
                manifest[entry.at("file").get<std::string>()] = meta;
            }
        } catch (const std::exception& e) {
            throw PipelineSetupError("bad manifest.json: " + std::string(e.what()));
        }
    }

    std::vector<SourceDoc> out;
    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(input_dir))
        if (entry.is_regular_file()) paths.push_back(entry.path());
    std::sort(paths.begin(), paths.end());

    for (const fs::path& path : paths) {
        std::string ext = path.extension().string();
        if (ext != ".html" && ext != ".txt") continue;
        SourceDoc doc;
        doc.doc_id = path.stem().string();
        doc.path = path;
        doc.kind = ext == ".html" ? SourceKind::html : SourceKind::paged_text;
        auto manifest_it = manifest.find(path.filename().string());
        if (manifest_it != manifest.end()) {
            doc.meta = manifest_it->second;
        } else if (auto meta = meta_from_filename(path.filename().string())) {
            doc.meta = *meta;
        } else {
            if (problems)
                problems->push_back(doc.doc_id +
                                    ": no meta (filename convention or manifest)");
            continue;
        }
        out.push_back(std::move(doc));
    }
    return out;
}

class StageTimer {
public:
    StageTimer() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

DocumentResult process_document(const SourceDoc& doc, const std::string& source_bytes,
                                const Registry& registry, const RunConfig& config,
                                const fs::path& output_path) {
    DocumentResult result;
    result.doc_id = doc.doc_id;
    std::string stage;
    auto record = [&](const std::string& name, const std::string& in_hash,
                      const std::string& out_hash, double ms,
                      std::vector<std::string> warnings = {}) {
        result.stages.push_back({doc.doc_id, name, in_hash, out_hash, "ok",
                                 std::move(warnings), ms});
    };
    try {
        stage = "ingest";
        StageTimer t1;
        RawDocument raw{doc.meta, source_bytes, doc.kind};
        PagedText paged = ingest_document(raw);
        std::string paged_ser = serialize_paged(paged);
        record(stage, fnv1a_hex(source_bytes), fnv1a_hex(paged_ser), t1.ms());

        stage = "clean";
        StageTimer t2;
        PagedText cleaned = clean_headers(paged, config);
        std::string cleaned_ser = serialize_paged(cleaned);
        record(stage, fnv1a_hex(paged_ser), fnv1a_hex(cleaned_ser), t2.ms());

        stage = "segment";
        StageTimer t3;
        SegmentResult segmented = segment_debate(cleaned, config);
        std::string seg_ser = serialize_raw_utterances(segmented.utterances);
        record(stage, fnv1a_hex(cleaned_ser), fnv1a_hex(seg_ser), t3.ms(),
               segmented.warnings);

        stage = "resolve";
        StageTimer t4;
        auto [resolved, report] =
            resolve_debate(segmented.utterances, registry, doc.meta, config);
        std::string res_ser = serialize_resolved(resolved);
        record(stage, fnv1a_hex(seg_ser), fnv1a_hex(res_ser), t4.ms());
        result.report = std::move(report);

        stage = "emit";
        StageTimer t5;
        AnnotatedDebate debate = assemble_debate(doc.meta, resolved);
        std::string xml = emit_debate_xml(debate, config.strict);
        write_file(output_path, xml);
        record(stage, fnv1a_hex(res_ser), fnv1a_hex(xml), t5.ms());

        result.ok = true;
    } catch (const SegmenterError& e) {
        result.error = stage + ": " + e.code + ": " + e.what();
    } catch (const std::exception& e) {
        result.error = stage + ": " + e.what();
    }
    return result;
}

void log_document(const AnnotateOptions& options, const DocumentResult& r,
                  std::mutex& mu) {
    if (options.quiet) return;
    std::lock_guard lock(mu);
    if (options.log_format == "jsonl") {
        json j{{"doc", r.doc_id},
               {"status", r.ok ? (r.cached ? "cached" : "ok") : "failed"},
               {"stages", r.stages.size()}};
        if (!r.error.empty()) j["error"] = r.error;
        std::fprintf(stdout, "%s\n", j.dump().c_str());
    } else {
        std::fprintf(stdout, "[%s] %s%s\n",
                     r.ok ? (r.cached ? "cache" : " ok  ") : "FAIL ",
                     r.doc_id.c_str(),
                     r.error.empty() ? "" : (" — " + r.error).c_str());
    }
}

json resolution_json(const DocumentResult& r) {
    json issues = json::array();
    for (const auto& issue : r.report.issues)
        issues.push_back(json{{"order", issue.order},
                              {"page_start", issue.page_start},
                              {"speaker_string", issue.speaker_string},
                              {"status", issue.status},
                              {"reason", issue.reason}});
    return json{{"doc", r.doc_id},
                {"resolved", r.report.resolved},
                {"president", r.report.president},
                {"unresolved", r.report.unresolved},
                {"ambiguous", r.report.ambiguous},
                {"issues", issues}};
}

}  // namespace

RunSummary annotate(const AnnotateOptions& options) {
    Registry registry;
    for (const std::string& path : options.registry_paths) {
        try {
            registry.load_file(path);
        } catch (const std::exception& e) {
            throw PipelineSetupError("registry: " + std::string(e.what()));
        }
    }

    std::vector<std::string> meta_problems;
    std::vector<SourceDoc> docs = discover_inputs(options.input_dir, &meta_problems);
    if (docs.empty() && meta_problems.empty())
        throw PipelineSetupError("no input documents in " + options.input_dir);

    fs::create_directories(options.output_dir);
    fs::create_directories(fs::path(options.output_dir) / "reports");

    const std::string config_json = options.config.to_json();
    const std::string registry_fp = fnv1a_hex(registry.to_csv());

    // cache state from the previous run
    fs::path cache_path = fs::path(options.output_dir) / ".ptparl-cache.json";
    json cache = json::object();
    if (fs::exists(cache_path)) {
        try {
            cache = json::parse(read_file(cache_path));
        } catch (...) {
            cache = json::object();  // corrupt cache: rebuild everything
        }
    }

    std::vector<DocumentResult> results(docs.size());
    std::atomic<size_t> next{0};
    std::mutex log_mu;
    int jobs = std::max(1, options.jobs);

    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= docs.size()) return;
            const SourceDoc& doc = docs[i];
            fs::path output_path =
                fs::path(options.output_dir) / (doc.doc_id + ".xml");
            DocumentResult r;
            try {
                std::string bytes = read_file(doc.path);
                std::string key = fnv1a_hex(bytes + "\x1f" + config_json + "\x1f" +
                                            registry_fp);
                if (auto it = cache.find(doc.doc_id);
                    it != cache.end() && (*it)["key"] == key &&
                    fs::exists(output_path) &&
                    fnv1a_hex(read_file(output_path)) == (*it)["output_hash"]) {
                    r.doc_id = doc.doc_id;
                    r.ok = true;
                    r.cached = true;
                } else {
                    r = process_document(doc, bytes, registry, options.config,
                                         output_path);
                }
                results[i] = std::move(r);
            } catch (const std::exception& e) {
                results[i].doc_id = doc.doc_id;
                results[i].error = e.what();
            }
            log_document(options, results[i], log_mu);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }

    for (const std::string& problem : meta_problems) {
        DocumentResult r;
        r.doc_id = problem.substr(0, problem.find(':'));
        r.error = problem;
        results.push_back(std::move(r));
    }
    std::sort(results.begin(), results.end(),
              [](const auto& a, const auto& b) { return a.doc_id < b.doc_id; });

    RunSummary summary;
    summary.documents = static_cast<int>(results.size());
    json new_cache = json::object();
    std::string jsonl;
    std::string summary_csv =
        "doc,status,resolved,president,unresolved,ambiguous\n";
    json manifest = json::array();
    for (const DocumentResult& r : results) {
        if (r.ok) {
            ++summary.succeeded;
            if (r.cached) ++summary.cached;
        } else {
            ++summary.failed;
        }
        summary.stages_executed += static_cast<int>(r.stages.size());
        if (r.ok && !r.cached) jsonl += resolution_json(r).dump() + "\n";
        summary_csv += r.doc_id + "," +
                       (r.ok ? (r.cached ? "cached" : "ok") : "failed") + "," +
                       std::to_string(r.report.resolved) + "," +
                       std::to_string(r.report.president) + "," +
                       std::to_string(r.report.unresolved) + "," +
                       std::to_string(r.report.ambiguous) + "\n";
        if (r.ok) {
            fs::path output_path = fs::path(options.output_dir) / (r.doc_id + ".xml");
            std::string xml = read_file(output_path);
            std::string out_hash = fnv1a_hex(xml);
            manifest.push_back(json{{"file", r.doc_id + ".xml"}, {"fnv1a", out_hash}});
            // source bytes were already hashed into the cache key above
            auto doc_it = std::find_if(docs.begin(), docs.end(), [&](const SourceDoc& d) {
                return d.doc_id == r.doc_id;
            });
            if (doc_it != docs.end()) {
                std::string key = fnv1a_hex(read_file(doc_it->path) + "\x1f" +
                                            config_json + "\x1f" + registry_fp);
                new_cache[r.doc_id] = json{{"key", key}, {"output_hash", out_hash}};
            }
        }
    }
    write_file(fs::path(options.output_dir) / "reports" / "resolution.jsonl", jsonl);
    write_file(fs::path(options.output_dir) / "reports" / "summary.csv", summary_csv);
    write_file(fs::path(options.output_dir) / "manifest.json",
               manifest.dump(2) + "\n");
    write_file(cache_path, new_cache.dump(2) + "\n");
    summary.results = std::move(results);
    return summary;
}

std::vector<std::string> list_xml_files(const std::string& dir) {
    std::vector<std::string> out;
    if (!fs::is_directory(dir)) return out;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".xml")
            out.push_back(entry.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

StatsCommandResult stats_command(const std::string& corpus_dir,
                                 const std::string& out_prefix,
                                 const RunConfig& config) {
    StatsCommandResult result;
    StatsAccumulator acc;
    for (const std::string& file : list_xml_files(corpus_dir)) {
        try {
            acc.add(parse_debate_xml(read_file(file), config.strict));
        } catch (const std::exception&) {
            result.skipped_files.push_back(file);
        }
    }
    result.stats = acc.finalize(config.sample_stddev);
    if (!out_prefix.empty()) {
        write_file(out_prefix + ".csv", result.stats.to_csv());
        write_file(out_prefix + ".json", result.stats.to_json(config.sample_stddev));
    }
    return result;
}

std::vector<FileViolations> validate_command(const std::string& corpus_dir) {
    std::vector<FileViolations> out;
    for (const std::string& file : list_xml_files(corpus_dir)) {
        try {
            // the parser enforces the schema; re-run the validator to report
            // every rule violation, not just the first
            AnnotatedDebate d = parse_debate_xml(read_file(file));
            std::vector<Violation> violations = validate_debate(d);
            if (!violations.empty())
                out.push_back({file, std::move(violations)});
        } catch (const std::exception& e) {
            out.push_back({file, {{"/", "not-parseable", e.what()}}});
        }
    }
    return out;
}

}  // namespace ptparl
