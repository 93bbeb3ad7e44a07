#pragma once

// Word-level polarity: feature vectors from association scores and linguistic
// signals, classified by a bagged ensemble of information-gain decision trees.

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "reviewforge/association.hpp"
#include "reviewforge/extraction.hpp"

namespace reviewforge {

struct SentimentVector {
    std::string word;
    OpinionScoreSet scores;
    bool negation = false;
    double tfidf = 0.0;
    bool has_modifier = false;

    static constexpr std::size_t kDimensions = 7;
    std::array<double, kDimensions> features() const
    {
        return {scores.pmi, scores.mi, scores.chi, scores.llr, negation ? 1.0 : 0.0, tfidf, has_modifier ? 1.0 : 0.0};
    }
};

struct LabeledVector {
    SentimentVector vector;
    Orientation label = Orientation::neutral;
};

/// One vector per distinct word (first-seen order). tfidf = occurrences in the
/// corpus * ln(documents / documents containing the word). negation is set when
/// any occurrence has a negator within three preceding tokens. has_modifier is
/// set when some component pairs the word with an adverb.
std::vector<SentimentVector> build_sentiment_vectors(std::span<const std::string> words,
                                                     std::span<const LabeledContext> contexts,
                                                     std::span<const ReviewDocument> corpus,
                                                     std::span<const InformationComponent> components);

/// Majority vote; any tie for the top count resolves to neutral.
Orientation majority_vote(std::span<const Orientation> votes);

class DecisionTree {
public:
    struct Node {
        int feature = -1;  // -1 marks a leaf
        double threshold = 0.0;
        int left = -1;     // feature value <= threshold
        int right = -1;
        Orientation label = Orientation::neutral;
    };

    static constexpr std::size_t kMinLeaf = 2;

    /// Axis-aligned splits at midpoints between distinct values, chosen by
    /// information gain; each child must keep at least kMinLeaf samples.
    static DecisionTree train(std::span<const LabeledVector> samples);

    Orientation predict(const SentimentVector& v) const;
    const std::vector<Node>& nodes() const { return nodes_; }
    std::size_t depth() const;

    static DecisionTree from_nodes(std::vector<Node> nodes);

private:
    std::vector<Node> nodes_;
};

/// n draws with replacement from [0, n).
std::vector<std::size_t> bootstrap_indices(std::size_t n, std::mt19937_64& rng);

class SentimentModel {
public:
    SentimentModel(std::vector<DecisionTree> trees, std::uint64_t seed);

    Orientation classify(const SentimentVector& v) const;
    const std::vector<DecisionTree>& trees() const { return trees_; }
    std::size_t bag_count() const { return trees_.size(); }
    std::uint64_t seed() const { return seed_; }

    std::string to_json() const;
    static SentimentModel from_json(const std::string& text);

private:
    std::vector<DecisionTree> trees_;
    std::uint64_t seed_ = 0;
};

/// Bagging: tree i is trained on the i-th bootstrap resample drawn from one
/// mt19937_64 seeded with `seed`. Throws ModelError unless all three classes
/// are present and bags >= 1.
SentimentModel train_sentiment(std::span<const LabeledVector> training, std::size_t bags = 10,
                               std::uint64_t seed = 42);

/// Word-level orientation (no negation handling).
Orientation classify_polarity(const SentimentModel& model, const SentimentVector& v);

/// Occurrence-level orientation: a negated occurrence flips a non-neutral word label.
Orientation component_orientation(Orientation word, bool negated);

/// "word<TAB>label" lines, label in positive/negative/neutral.
std::vector<std::pair<std::string, Orientation>> read_polarity_lexicon(const std::filesystem::path& path);
/// "label<TAB>sentence" lines, label in positive/negative.
std::vector<LabeledContext> read_labeled_contexts(const std::filesystem::path& path);
/// Star ratings 4-5 become positive contexts and 1-2 negative; 3 and unrated are skipped.
std::vector<LabeledContext> contexts_from_ratings(std::span<const ReviewDocument> corpus);

}  // namespace reviewforge
