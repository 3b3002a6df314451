#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ptparl/emitter.hpp"
#include "ptparl/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDocumentFailures = 1;
constexpr int kExitSetupFailure = 2;

int env_jobs(int cli_jobs) {
    if (const char* env = std::getenv("PTPARL_JOBS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return cli_jobs;
}

bool env_quiet() {
    const char* env = std::getenv("PTPARL_LOG_LEVEL");
    return env && std::string(env) == "quiet";
}

ptparl::RunConfig load_config(const std::string& path, bool strict) {
    ptparl::RunConfig config =
        path.empty() ? ptparl::RunConfig{} : ptparl::RunConfig::load_file(path);
    if (strict) config.strict = true;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Speaker-attribution annotation toolkit for Portuguese parliamentary diaries"};
    app.require_subcommand(1);

    std::string input_dir, output_dir, config_path, log_format = "text";
    std::vector<std::string> registry_paths;
    bool strict = false;
    int jobs = 1;

    auto* annotate = app.add_subcommand(
        "annotate", "Annotate a directory of diaries into XML debates");
    annotate->add_option("--input", input_dir, "Directory of .html/.txt diaries")
        ->required();
    annotate->add_option("--output", output_dir, "Output corpus directory")
        ->required();
    annotate->add_option("--registry", registry_paths,
                         "Registry file (.csv or .xml); repeatable");
    annotate->add_option("--config", config_path, "Run configuration JSON");
    annotate->add_flag("--strict", strict, "Strict emission and parsing");
    annotate->add_option("--jobs", jobs, "Parallel workers (env PTPARL_JOBS)");
    annotate->add_option("--log-format", log_format, "text or jsonl")
        ->check(CLI::IsMember({"text", "jsonl"}));

    auto* stats = app.add_subcommand("stats", "Corpus statistics over emitted XML");
    stats->add_option("--input", input_dir, "Corpus directory of .xml debates")
        ->required();
    stats->add_option("--output", output_dir, "Report path prefix")->required();
    stats->add_option("--config", config_path, "Run configuration JSON");
    stats->add_flag("--strict", strict, "Nonzero exit on malformed files");

    auto* validate = app.add_subcommand("validate", "Validate emitted XML debates");
    validate->add_option("--input", input_dir, "Corpus directory of .xml debates")
        ->required();

    auto* registry_import = app.add_subcommand(
        "registry-import", "Merge registry files into one canonical CSV");
    registry_import
        ->add_option("--registry", registry_paths,
                     "Registry file (.csv or .xml); repeatable")
        ->required();
    registry_import->add_option("--output", output_dir, "Merged CSV path")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*annotate) {
            ptparl::AnnotateOptions options;
            options.input_dir = input_dir;
            options.output_dir = output_dir;
            options.registry_paths = registry_paths;
            options.config = load_config(config_path, strict);
            options.jobs = env_jobs(jobs);
            options.log_format = log_format;
            options.quiet = env_quiet();
            ptparl::RunSummary summary = ptparl::annotate(options);
            std::fprintf(stdout,
                         "%d documents: %d ok (%d cached), %d failed, "
                         "%d stages executed\n",
                         summary.documents, summary.succeeded, summary.cached,
                         summary.failed, summary.stages_executed);
            return summary.failed == 0 ? kExitOk : kExitDocumentFailures;
        }
        if (*stats) {
            ptparl::RunConfig config = load_config(config_path, strict);
            auto result = ptparl::stats_command(input_dir, output_dir, config);
            for (const std::string& file : result.skipped_files)
                std::fprintf(stderr, "skipped malformed file: %s\n", file.c_str());
            if (result.stats.n_debates == 0)
                std::fprintf(stderr, "warning: no debates found in %s\n",
                             input_dir.c_str());
            std::fprintf(stdout, "%lld debates; reports at %s.{csv,json}\n",
                         static_cast<long long>(result.stats.n_debates),
                         output_dir.c_str());
            return (config.strict && !result.skipped_files.empty())
                       ? kExitDocumentFailures
                       : kExitOk;
        }
        if (*validate) {
            auto report = ptparl::validate_command(input_dir);
            for (const auto& fv : report)
                for (const auto& v : fv.violations)
                    std::fprintf(stdout, "%s: %s [%s] %s\n", fv.file.c_str(),
                                 v.path.c_str(), v.rule.c_str(), v.message.c_str());
            return report.empty() ? kExitOk : kExitDocumentFailures;
        }
        if (*registry_import) {
            ptparl::Registry registry;
            for (const std::string& path : registry_paths) registry.load_file(path);
            std::string csv = registry.to_csv();
            FILE* out = std::fopen(output_dir.c_str(), "wb");
            if (!out) throw std::runtime_error("cannot write " + output_dir);
            std::fwrite(csv.data(), 1, csv.size(), out);
            std::fclose(out);
            std::fprintf(stdout, "%zu records -> %s\n", registry.size(),
                         output_dir.c_str());
            return kExitOk;
        }
    } catch (const ptparl::PipelineSetupError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSetupFailure;
    } catch (const ptparl::RegistryError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSetupFailure;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSetupFailure;
    }
    return kExitOk;
}
