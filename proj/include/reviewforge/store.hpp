#pragma once

// On-disk results store: a directory of JSON collections plus manifest.json,
// which records the SHA-256 of every collection and the snapshot id (hash of
// the manifest's file table). The manifest is written last via rename, so a
// reader sees either the old snapshot or the new one.

#include <filesystem>
#include <stdexcept>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "reviewforge/summary.hpp"

namespace reviewforge {

class StoreCorruptError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kStoreFormat = "reviewforge-store/1";
inline constexpr const char* kManifestName = "manifest.json";

/// Writes every populated collection and returns the snapshot id.
std::string persist_store(ResultsStore& store, const std::filesystem::path& dir);

/// Verifies each collection against its manifest checksum.
/// Throws InputError when there is no manifest, StoreCorruptError on mismatch.
ResultsStore load_store(const std::filesystem::path& dir);

bool store_exists(const std::filesystem::path& dir);

std::string sha256_hex(std::string_view data);

// JSON (de)serialization of the store's element types.
nlohmann::json to_json(const ReviewDocument& d);
ReviewDocument document_from_json(const nlohmann::json& j);
nlohmann::json to_json(const InformationComponent& c);
InformationComponent component_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ScoredPair& p);
ScoredPair scored_pair_from_json(const nlohmann::json& j);
nlohmann::json to_json(const WordScore& w);
WordScore word_score_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ReviewSummary& s);
ReviewSummary review_summary_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FeatureSummary& s);
FeatureSummary feature_summary_from_json(const nlohmann::json& j);
nlohmann::json span_json(const Span& s);

}  // namespace reviewforge
