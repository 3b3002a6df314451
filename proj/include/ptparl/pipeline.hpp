#pragma once

#include <string>
#include <vector>

#include "ptparl/config.hpp"
#include "ptparl/registry.hpp"
#include "ptparl/resolver.hpp"
#include "ptparl/stats.hpp"

namespace ptparl {

// Fatal setup problem (unreadable registry, bad config): nothing was
// processed. Maps to exit code 2 in the CLI.
struct PipelineSetupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StageRecord {
    std::string doc_id;
    std::string stage;  // ingest, clean, segment, resolve, emit
    std::string input_hash;
    std::string output_hash;
    std::string status;  // "ok" or "failed"
    std::vector<std::string> warnings;
    double duration_ms = 0.0;
};

struct DocumentResult {
    std::string doc_id;
    bool ok = false;
    bool cached = false;  // skipped entirely, zero stages executed
    std::string error;
    std::vector<StageRecord> stages;
    ResolutionReport report;
};

struct AnnotateOptions {
    std::string input_dir;
    std::vector<std::string> registry_paths;
    std::string output_dir;
    RunConfig config;
    int jobs = 1;
    std::string log_format = "text";  // or "jsonl"
    bool quiet = false;
};

struct RunSummary {
    int documents = 0;
    int succeeded = 0;
    int failed = 0;
    int cached = 0;
    int stages_executed = 0;
    std::vector<DocumentResult> results;  // sorted by doc_id
};

// Annotates every source document under input_dir into output_dir.
// Incremental: a document whose source, config, and registry hashes are
// unchanged since the cache entry was written, and whose output is intact,
// executes zero stages. One document's failure never blocks the others.
RunSummary annotate(const AnnotateOptions& options);

struct StatsCommandResult {
    CorpusStats stats;
    std::vector<std::string> skipped_files;  // malformed XML inputs
};

// Parses every .xml under corpus_dir and writes <out_prefix>.csv and
// <out_prefix>.json reports. Malformed files are listed and skipped.
StatsCommandResult stats_command(const std::string& corpus_dir,
                                 const std::string& out_prefix,
                                 const RunConfig& config);

struct FileViolations {
    std::string file;
    std::vector<Violation> violations;  // parse failures use rule "not-parseable"
};

// parse + validate_debate over every .xml under corpus_dir.
std::vector<FileViolations> validate_command(const std::string& corpus_dir);

// Sorted .xml files directly under dir (report files excluded).
std::vector<std::string> list_xml_files(const std::string& dir);

}  // namespace ptparl
