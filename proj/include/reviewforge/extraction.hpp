#pragma once

// Rule-based <feature, modifier, opinion> extraction and backtracking anaphora
// resolution.
//
// Rules, evaluated in this order (R3 is a specialisation of R2 and is tried
// first so its id survives de-duplication):
//   R1 copula       NP (and NP)* + copula + RB* + JJ
//   R3 possession   NP|PRP + {has, have, had, comes with} + DT? + RB* + JJ + NP
//   R2 attributive  RB? + JJ + NP
//   R4 pronoun      {it, this, they, these, those} + copula + RB* + JJ
// The modifier is the last non-negating adverb before the adjective.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reviewforge/types.hpp"

namespace reviewforge {

struct InformationComponent {
    std::string feature;
    std::optional<std::string> modifier;
    std::string opinion;
    std::string document_id;
    std::size_t sentence_index = 0;
    Span feature_span;
    std::optional<Span> modifier_span;
    Span opinion_span;
    std::string rule_id;
    bool anaphora_resolved = false;
    std::optional<std::size_t> antecedent_sentence_index;

    /// Feature is still a pronoun awaiting resolve_anaphora().
    bool pending_pronoun = false;
    /// A negator occurs within three tokens before the opinion word.
    bool negated = false;
    /// Filled by sentiment scoring; already flipped when `negated`.
    std::optional<Orientation> orientation;

    friend bool operator==(const InformationComponent&, const InformationComponent&) = default;
};

struct NounPhrase {
    std::string text;  // lower-cased, space joined
    bool plural = false;
    Span span;
};

/// Text of a contiguous noun run; the last noun is the head and fixes number.
/// Throws ModelError if the run contains no noun.
NounPhrase noun_phrase_head(std::span<const Token> tokens);

inline constexpr std::size_t kNegationWindow = 3;
bool is_negator(const std::string& normalized);
/// True if a negator precedes token `i` within kNegationWindow tokens.
bool negated_at(std::span<const Token> tokens, std::size_t i);

/// Applies R1..R4 to one tagged sentence. Output is ordered by feature span then
/// opinion span; matches sharing (feature_span, opinion_span) keep the first rule.
std::vector<InformationComponent> extract_triplets(const Sentence& sentence, const std::string& document_id);

struct AnaphoraOptions {
    std::size_t window = 2;
};

/// Binds pronoun placeholders to the nearest number-compatible antecedent within
/// `window` preceding sentences. Candidates are features of earlier explicit
/// components; if none agree, any noun phrase in the window. Unbound
/// placeholders are dropped. `components` must be in document order.
std::vector<InformationComponent> resolve_anaphora(const ReviewDocument& document,
                                                   std::vector<InformationComponent> components,
                                                   const AnaphoraOptions& options = {});

/// Extracts from the forwarded (subjective) sentences of a document and
/// resolves anaphora.
std::vector<InformationComponent> extract_document(const ReviewDocument& document,
                                                   const AnaphoraOptions& options = {});

}  // namespace reviewforge
