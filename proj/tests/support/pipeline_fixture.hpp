#pragma once

#include "fixtures.hpp"
#include "reviewforge/pipeline.hpp"

namespace fixtures {

inline reviewforge::PipelineConfig fixture_config(const std::filesystem::path& store)
{
    reviewforge::PipelineConfig c;
    c.input = path("reviews.jsonl");
    c.subjectivity_training = path("subjectivity_train.tsv");
    c.sentiment_lexicon = path("sentiment_lexicon.tsv");
    c.sentiment_contexts = path("sentiment_contexts.tsv");
    c.store = store;
    return c;
}

/// Runs every stage on the six-review corpus and returns the loaded store.
inline reviewforge::ResultsStore fixture_store(const std::string& name)
{
    const auto dir = scratch(name) / "store";
    reviewforge::run_pipeline(fixture_config(dir));
    return reviewforge::load_store(dir);
}

}  // namespace fixtures
