#pragma once

// Sentence-level subjective/objective classification with a Laplace-smoothed
// multinomial unigram model.

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "reviewforge/types.hpp"

namespace reviewforge {

struct LabeledSentence {
    std::vector<std::string> tokens;  // normalized unigrams
    SubjectivityLabel label = SubjectivityLabel::subjective;
};

struct ClassPosterior {
    SubjectivityLabel label = SubjectivityLabel::subjective;
    double subjective = 0.0;  // P(subjective | sentence)
    double objective = 0.0;

    double probability() const { return label == SubjectivityLabel::subjective ? subjective : objective; }
};

class SubjectivityModel {
public:
    static constexpr std::size_t kSubjective = 0;
    static constexpr std::size_t kObjective = 1;

    SubjectivityModel() = default;

    double prior(SubjectivityLabel c) const { return priors_[index(c)]; }
    /// Smoothed P(word | class); unseen words share one cell.
    double likelihood(const std::string& word, SubjectivityLabel c) const;
    double unseen_likelihood(SubjectivityLabel c) const;
    double alpha() const { return alpha_; }
    std::size_t vocabulary_size() const { return counts_.size(); }
    const std::map<std::string, std::array<std::uint64_t, 2>>& counts() const { return counts_; }
    std::uint64_t class_tokens(SubjectivityLabel c) const { return class_tokens_[index(c)]; }

    /// Subjective if P(subjective) >= threshold. Ties at 0.5 go to subjective.
    ClassPosterior classify(const std::vector<std::string>& tokens, double threshold = 0.5) const;

    void save(const std::filesystem::path& path) const;
    static SubjectivityModel load(const std::filesystem::path& path);
    std::string to_json() const;
    static SubjectivityModel from_json(const std::string& text);

    friend SubjectivityModel train_subjectivity(const std::vector<LabeledSentence>&, double);

private:
    static std::size_t index(SubjectivityLabel c) { return c == SubjectivityLabel::subjective ? 0 : 1; }

    double alpha_ = 1.0;
    std::array<double, 2> priors_{0.5, 0.5};
    std::array<std::uint64_t, 2> class_tokens_{0, 0};
    std::array<std::uint64_t, 2> class_sentences_{0, 0};
    std::map<std::string, std::array<std::uint64_t, 2>> counts_;
};

/// Priors are class frequencies; likelihoods are
/// (count(w,c) + alpha) / (count(c) + alpha * (|V| + 1)).
/// Throws ModelError when a class is missing or alpha <= 0.
SubjectivityModel train_subjectivity(const std::vector<LabeledSentence>& training, double alpha = 1.0);

ClassPosterior classify_sentence(const SubjectivityModel& model, const std::vector<std::string>& tokens,
                                 double threshold = 0.5);

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct CrossValidationResult {
    double accuracy = 0.0;
    ClassMetrics subjective;
    ClassMetrics objective;
    /// Test-set indices per fold, into the original training list.
    std::vector<std::vector<std::size_t>> folds;
};

/// Stratified k-fold: each class is shuffled with `seed` and dealt round-robin
/// over the folds. Metrics are averaged over folds.
/// Throws ModelError if k < 2 or k exceeds the size of the smaller class.
CrossValidationResult cross_validate(const std::vector<LabeledSentence>& training, std::size_t k,
                                     std::uint64_t seed = 42, double alpha = 1.0);

/// Labels every sentence in place. Text and spans are never touched.
void filter_subjective(std::vector<ReviewDocument>& corpus, const SubjectivityModel& model, double threshold = 0.5);

/// Training file: one "label<TAB>sentence" per line; label is subjective/objective.
std::vector<LabeledSentence> read_labeled_sentences(const std::filesystem::path& path);

std::vector<std::string> normalized_tokens(const Sentence& sentence);

}  // namespace reviewforge
