#pragma once

// Results store contents, per-review and per-feature aggregation, highlight
// spans, and the information-component export format.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reviewforge/association.hpp"
#include "reviewforge/extraction.hpp"
#include "reviewforge/reliability.hpp"
#include "reviewforge/types.hpp"

namespace reviewforge {

struct WordScore {
    std::string word;
    ContingencyTable table;
    OpinionScoreSet scores;
    bool negation = false;
    double tfidf = 0.0;
    bool has_modifier = false;
    Orientation orientation = Orientation::neutral;

    friend bool operator==(const WordScore&, const WordScore&) = default;
};

struct ReviewSummary {
    std::string document_id;
    std::size_t positive_count = 0;
    std::size_t negative_count = 0;
    std::size_t neutral_count = 0;

    std::size_t total() const { return positive_count + negative_count + neutral_count; }
    friend bool operator==(const ReviewSummary&, const ReviewSummary&) = default;
};

struct ScoreSlice {
    std::string opinion;
    double magnitude = 0.0;  // |chi|; 0 for neutral words
    Orientation orientation = Orientation::neutral;

    friend bool operator==(const ScoreSlice&, const ScoreSlice&) = default;
};

struct Snippet {
    std::string document_id;
    std::size_t sentence_index = 0;
    Span feature_span;
    Span opinion_span;

    friend bool operator==(const Snippet&, const Snippet&) = default;
};

struct FeatureSummary {
    std::string feature;
    std::size_t positive_count = 0;
    std::size_t negative_count = 0;
    std::size_t neutral_count = 0;
    /// positive, negative, neutral; absent when there are no mentions.
    std::optional<std::array<double, 3>> percentages;
    std::vector<ScoreSlice> score_slices;  // descending magnitude
    std::vector<Snippet> snippets;         // document order, then sentence

    std::size_t total() const { return positive_count + negative_count + neutral_count; }
    friend bool operator==(const FeatureSummary&, const FeatureSummary&) = default;
};

struct ResultsStore {
    std::string snapshot_id;  // content hash, set by persist/load
    std::vector<ReviewDocument> documents;
    std::optional<std::string> subjectivity_model;  // serialized model
    /// Every component after anaphora resolution, before pruning.
    std::vector<InformationComponent> extracted;
    bool extraction_done = false;
    std::vector<ScoredPair> scored_pairs;
    std::vector<ScoredPair> retained_pairs;
    /// Components whose pair survived pruning, with orientation assigned.
    std::vector<InformationComponent> components;
    std::map<std::string, WordScore> words;
    std::optional<std::string> sentiment_model;
    bool scoring_done = false;
    std::vector<ReviewSummary> review_summaries;
    std::vector<FeatureSummary> feature_summaries;
    bool summaries_done = false;

    const ReviewDocument* find_document(const std::string& id) const;
    /// Reliability of a retained component's pair within its document's domain.
    std::optional<double> reliability_of(const InformationComponent& c) const;
};

/// Throws NotFoundError for an unknown document id.
ReviewSummary aggregate_review_summary(const ResultsStore& store, const std::string& document_id);
/// Throws NotFoundError when no retained component has this feature.
FeatureSummary aggregate_feature_summary(const ResultsStore& store, const std::string& feature);

struct FeatureMention {
    std::string feature;
    std::size_t mentions = 0;
};
/// Distinct retained features, most mentioned first (ties by name).
std::vector<FeatureMention> list_features(const ResultsStore& store);

enum class HighlightRole { feature, opinion };
std::string_view to_string(HighlightRole role);
/// Display colour for the role: orange for features, yellow for opinions.
std::string_view highlight_color(HighlightRole role);

struct Highlight {
    std::size_t component = 0;  // index into the document's retained components
    std::size_t sentence_index = 0;
    Span span;
    HighlightRole role = HighlightRole::feature;
};

/// Two highlights per retained component of the document, feature first.
/// Throws NotFoundError for an unknown document id.
std::vector<Highlight> snippet_highlights(const ResultsStore& store, const std::string& document_id);

/// Retained components of one document, in extraction order.
std::vector<const InformationComponent*> document_components(const ResultsStore& store,
                                                             const std::string& document_id);

struct ExportScore {
    std::string type;
    double number = 0.0;
    friend bool operator==(const ExportScore&, const ExportScore&) = default;
};

/// One information component in the published interchange layout.
struct ExportObject {
    std::string feature;
    std::string modifier;  // empty when absent
    std::string opinion;
    double score_reliability_pair = 0.0;
    std::vector<ExportScore> score_opinion;  // pmi, mi, chi (+ llr when requested)
    std::string orientation;
    friend bool operator==(const ExportObject&, const ExportObject&) = default;
};

struct ExportOptions {
    bool include_llr = false;
};

/// One object per retained component, ordered by descending reliability, then
/// feature text; remaining ties keep document order.
std::vector<ExportObject> export_components(const ResultsStore& store, const ExportOptions& options = {});

/// Array of objects, two-space indentation, numbers with four decimals.
std::string render_export(const std::vector<ExportObject>& objects);
std::string render_export_object(const ExportObject& object, int indent = 0);
/// Throws InputError on anything that is not an array of export objects.
std::vector<ExportObject> parse_export(const std::string& text);

/// Fixed four-decimal rendering used by the export ("-0.0000" is printed as "0.0000").
std::string format_number(double value);

}  // namespace reviewforge
