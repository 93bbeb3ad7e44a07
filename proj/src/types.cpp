#include "reviewforge/types.hpp"

#include <array>
#include <cctype>

namespace reviewforge {

namespace {

constexpr std::array<std::string_view, 16> kTagNames = {
    "NN", "NNS", "NNP", "JJ", "JJR", "JJS", "RB", "RBR", "RBS", "VB", "PRP", "DT", "CC", "IN", "CD", "OTHER"};

}  // namespace

std::string_view to_string(Tag tag) { return kTagNames[static_cast<std::size_t>(tag)]; }

Tag tag_from_string(std::string_view text)
{
    for (std::size_t i = 0; i < kTagNames.size(); ++i) {
        if (kTagNames[i] == text) return static_cast<Tag>(i);
    }
    if (text == "NNPS") return Tag::NNP;
    if (text == "PRP$" || text == "WP" || text == "WP$") return Tag::PRP;
    if (text == "PDT" || text == "WDT") return Tag::DT;
    if (text == "MD" || (text.size() == 3 && text.substr(0, 2) == "VB")) return Tag::VB;
    if (text == "TO") return Tag::IN;
    if (text == "VB-family") return Tag::VB;
    return Tag::OTHER;
}

std::string_view to_string(SubjectivityLabel label)
{
    return label == SubjectivityLabel::subjective ? "subjective" : "objective";
}

SubjectivityLabel subjectivity_from_string(std::string_view text)
{
    if (text == "subjective" || text == "subj") return SubjectivityLabel::subjective;
    if (text == "objective" || text == "obj") return SubjectivityLabel::objective;
    throw InputError("unknown subjectivity label '" + std::string(text) + "'");
}

std::string_view to_string(Orientation o)
{
    switch (o) {
    case Orientation::positive: return "positive";
    case Orientation::negative: return "negative";
    case Orientation::neutral: return "neutral";
    }
    return "neutral";
}

Orientation orientation_from_string(std::string_view text)
{
    if (text == "positive" || text == "pos") return Orientation::positive;
    if (text == "negative" || text == "neg") return Orientation::negative;
    if (text == "neutral" || text == "neu") return Orientation::neutral;
    throw InputError("unknown orientation '" + std::string(text) + "'");
}

Orientation flip(Orientation o)
{
    switch (o) {
    case Orientation::positive: return Orientation::negative;
    case Orientation::negative: return Orientation::positive;
    case Orientation::neutral: return Orientation::neutral;
    }
    return o;
}

std::string to_lower(std::string_view text)
{
    std::string out(text);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace reviewforge
