#pragma once

// Core document model shared by every stage of the review-mining pipeline.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace reviewforge {

/// Half-open byte range [begin, end) into a review body.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t length() const { return end - begin; }
    bool contains(const Span& other) const { return begin <= other.begin && other.end <= end; }
    bool overlaps(const Span& other) const { return begin < other.end && other.begin < end; }
    friend bool operator==(const Span&, const Span&) = default;
};

/// Closed part-of-speech tagset. VB covers the whole verb family (VB, VBD, VBZ, ...).
enum class Tag { NN, NNS, NNP, JJ, JJR, JJS, RB, RBR, RBS, VB, PRP, DT, CC, IN, CD, OTHER };

std::string_view to_string(Tag tag);
/// Accepts the closed tagset plus common Penn Treebank tags (VBZ, PRP$, NNPS, ...).
/// Anything unrecognised maps to OTHER.
Tag tag_from_string(std::string_view text);

inline bool is_noun(Tag t) { return t == Tag::NN || t == Tag::NNS || t == Tag::NNP; }
inline bool is_adjective(Tag t) { return t == Tag::JJ || t == Tag::JJR || t == Tag::JJS; }
inline bool is_adverb(Tag t) { return t == Tag::RB || t == Tag::RBR || t == Tag::RBS; }

enum class SubjectivityLabel { subjective, objective };
std::string_view to_string(SubjectivityLabel label);
SubjectivityLabel subjectivity_from_string(std::string_view text);

enum class Orientation { positive, negative, neutral };
std::string_view to_string(Orientation o);
Orientation orientation_from_string(std::string_view text);
Orientation flip(Orientation o);

struct Token {
    std::string surface;
    std::string normalized;
    Tag pos = Tag::OTHER;
    Span span;
};

struct Sentence {
    std::size_t index = 0;
    Span span;
    std::vector<Token> tokens;
    std::optional<SubjectivityLabel> subjectivity;
    std::optional<double> subjectivity_score;

    bool forwarded() const { return subjectivity == SubjectivityLabel::subjective; }
};

struct ReviewDocument {
    std::string id;
    std::string source;
    std::string product_domain;
    std::string author;
    std::optional<std::string> posted_on;  // YYYY-MM-DD
    std::optional<int> star_rating;
    std::optional<std::string> title;
    std::string body;
    std::vector<Sentence> sentences;

    std::string_view text(const Span& span) const
    {
        return std::string_view(body).substr(span.begin, span.length());
    }
};

/// Raised for malformed input files and records.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a precondition of a modelling operation is violated.
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Lookups by document id or feature name that do not resolve.
class NotFoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string to_lower(std::string_view text);

}  // namespace reviewforge
