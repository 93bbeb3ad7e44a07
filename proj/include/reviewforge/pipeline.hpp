#pragma once

// Pipeline configuration and the stage functions behind the CLI subcommands.
// Stages run in order ingest -> train-subjectivity -> extract -> score ->
// summarize -> export; each reads its predecessor's artifacts from the store.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "reviewforge/store.hpp"
#include "reviewforge/subjectivity.hpp"
#include "reviewforge/text.hpp"

namespace reviewforge {

enum class TaggerMode { builtin, pretagged };

struct PipelineConfig {
    std::filesystem::path input;
    InputFormat input_format = InputFormat::jsonl;
    TaggerMode tagger = TaggerMode::builtin;
    std::filesystem::path subjectivity_training;
    double subjectivity_alpha = 1.0;
    double subjectivity_threshold = 0.5;
    std::size_t anaphora_window = 2;
    double hits_epsilon = 1e-6;
    std::size_t hits_max_iter = 100;
    double prune_threshold = 0.1;
    std::filesystem::path sentiment_lexicon;
    std::filesystem::path sentiment_contexts;  // optional extra labeled contexts
    std::size_t bags = 10;
    std::uint64_t seed = 42;
    std::filesystem::path store = "reviewforge-store";
    std::filesystem::path export_path;  // default: <store>/export.json
    bool include_llr = false;
    std::string listen = "127.0.0.1:8080";

    /// Field-level diagnostics, empty when valid. Paths are only checked for
    /// presence here; readability is checked by the stage that needs them.
    std::vector<std::string> validate() const;
    std::filesystem::path resolved_export_path() const;

    nlohmann::json to_json() const;
    /// Unknown keys are rejected. Missing keys keep their defaults.
    static PipelineConfig from_json(const nlohmann::json& j);
    static PipelineConfig load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;
};

/// Invalid configuration; what() lists every diagnostic, one per line.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> diagnostics);
    const std::vector<std::string>& diagnostics() const { return diagnostics_; }

private:
    std::vector<std::string> diagnostics_;
};

/// A stage ran before the stage whose artifacts it needs.
class StageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string cmd_ingest(const PipelineConfig& config);
std::string cmd_train_subjectivity(const PipelineConfig& config);
std::string cmd_extract(const PipelineConfig& config);
std::string cmd_score(const PipelineConfig& config);
std::string cmd_summarize(const PipelineConfig& config);
/// Writes the export file and returns its path.
std::filesystem::path cmd_export(const PipelineConfig& config);
/// All stages in order; returns the final snapshot id.
std::string run_pipeline(const PipelineConfig& config);

// In-memory stage bodies, shared by the commands and the tests.
std::vector<ReviewDocument> analyze_corpus(std::vector<ReviewDocument> docs, TaggerMode mode);
void extract_stage(ResultsStore& store, const SubjectivityModel& model, const PipelineConfig& config);
void score_stage(ResultsStore& store, const PipelineConfig& config);
void summarize_stage(ResultsStore& store);

}  // namespace reviewforge
