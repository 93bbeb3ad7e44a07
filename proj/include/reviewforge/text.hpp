#pragma once

// Corpus ingestion, sentence splitting, tokenization and POS tagging.

#include <filesystem>
#include <memory>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "reviewforge/types.hpp"

namespace reviewforge {

enum class InputFormat { jsonl, csv };
InputFormat input_format_from_string(std::string_view text);

/// Reads one review per record. Field names: id, source, domain, author, date,
/// stars, title, body. Sentences are left empty; see analyze_document().
/// Throws InputError naming the line for malformed records and duplicate ids.
std::vector<ReviewDocument> ingest_reviews(const std::filesystem::path& path, InputFormat format);

/// Sentence boundaries: a run of . ! ? followed by whitespace and an upper-case
/// letter, or by end of text. Abbreviations and single initials do not end a sentence.
std::vector<Span> split_sentences(std::string_view body);

/// Splits on whitespace and punctuation. Each punctuation character becomes its
/// own token; "n't" and "'s"-style clitics are split off. Spans are relative to
/// `text` shifted by `offset`.
std::vector<Token> tokenize(std::string_view text, std::size_t offset = 0);

class Tagger {
public:
    virtual ~Tagger() = default;
    virtual void tag(std::vector<Token>& tokens) const = 0;
};

/// Closed-class lexicon lookup followed by suffix rules for unknown words.
class LexiconTagger final : public Tagger {
public:
    LexiconTagger();
    void tag(std::vector<Token>& tokens) const override;

    std::size_t lexicon_size() const { return lexicon_.size(); }
    bool in_lexicon(std::string_view word) const;

private:
    Tag guess(const std::vector<Token>& tokens, std::size_t i) const;

    std::unordered_map<std::string, Tag> lexicon_;
};

/// Convenience: tags with the built-in lexicon tagger.
void pos_tag(std::vector<Token>& tokens);

/// Fills `doc.sentences` from the body: split, tokenize, tag.
void analyze_document(ReviewDocument& doc, const Tagger& tagger);

/// Pre-tagged bodies hold one sentence per line as whitespace separated
/// "surface/TAG" items. The body is rebuilt as the surfaces joined by single
/// spaces (sentences joined by one space) and the given tags are kept verbatim.
void analyze_pretagged(ReviewDocument& doc);

}  // namespace reviewforge
