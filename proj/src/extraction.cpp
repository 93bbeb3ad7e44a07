#include "reviewforge/extraction.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace reviewforge {

namespace {

const std::unordered_set<std::string> kCopulas = {"is",    "are",  "was",  "were", "looks", "seems",
                                                  "feels", "look", "seem", "feel", "'s",    "'re"};
const std::unordered_set<std::string> kNegators = {"not", "never", "no", "n't", "hardly"};
const std::unordered_set<std::string> kSingularPronouns = {"it", "this"};
const std::unordered_set<std::string> kPluralPronouns = {"they", "these", "those"};

constexpr std::size_t kMaxAdverbs = 3;

bool is_copula(const Token& t) { return kCopulas.count(t.normalized) > 0; }
bool is_anaphor(const Token& t)
{
    return kSingularPronouns.count(t.normalized) > 0 || kPluralPronouns.count(t.normalized) > 0;
}

struct AdjectiveMatch {
    std::size_t adjective = 0;
    std::optional<std::size_t> modifier;
};

// From `i`, skip up to kMaxAdverbs adverbs and require an adjective.
std::optional<AdjectiveMatch> adverbs_then_adjective(std::span<const Token> toks, std::size_t i)
{
    std::optional<std::size_t> modifier;
    std::size_t skipped = 0;
    while (i < toks.size() && is_adverb(toks[i].pos) && skipped < kMaxAdverbs) {
        if (!is_negator(toks[i].normalized)) modifier = i;
        ++i;
        ++skipped;
    }
    if (i >= toks.size() || !is_adjective(toks[i].pos)) return std::nullopt;
    return AdjectiveMatch{i, modifier};
}

// Noun run ending at `last` (inclusive): returns its first index.
std::size_t noun_run_start(std::span<const Token> toks, std::size_t last)
{
    std::size_t b = last;
    while (b > 0 && is_noun(toks[b - 1].pos)) --b;
    return b;
}

std::size_t noun_run_end(std::span<const Token> toks, std::size_t first)
{
    std::size_t e = first;
    while (e < toks.size() && is_noun(toks[e].pos)) ++e;
    return e;
}

class Builder {
public:
    Builder(std::span<const Token> toks, const Sentence& s, const std::string& doc) :
        toks_(toks), sentence_(s), doc_(doc)
    {
    }

    void emit(std::size_t np_begin, std::size_t np_end, const AdjectiveMatch& adj, std::string rule,
              bool pronoun = false)
    {
        InformationComponent c;
        if (pronoun) {
            c.feature = toks_[np_begin].normalized;
            c.feature_span = toks_[np_begin].span;
            c.pending_pronoun = true;
        } else {
            auto np = noun_phrase_head(toks_.subspan(np_begin, np_end - np_begin));
            c.feature = std::move(np.text);
            c.feature_span = np.span;
        }
        if (adj.modifier) {
            c.modifier = toks_[*adj.modifier].normalized;
            c.modifier_span = toks_[*adj.modifier].span;
        }
        c.opinion = toks_[adj.adjective].normalized;
        c.opinion_span = toks_[adj.adjective].span;
        c.document_id = doc_;
        c.sentence_index = sentence_.index;
        c.rule_id = std::move(rule);
        c.negated = negated_at(toks_, adj.adjective);

        auto key = std::make_pair(std::make_pair(c.feature_span.begin, c.feature_span.end),
                                  std::make_pair(c.opinion_span.begin, c.opinion_span.end));
        if (seen_.insert(key).second) out_.push_back(std::move(c));
    }

    std::vector<InformationComponent> take()
    {
        std::stable_sort(out_.begin(), out_.end(), [](const auto& a, const auto& b) {
            if (a.feature_span.begin != b.feature_span.begin) return a.feature_span.begin < b.feature_span.begin;
            return a.opinion_span.begin < b.opinion_span.begin;
        });
        return std::move(out_);
    }

private:
    std::span<const Token> toks_;
    const Sentence& sentence_;
    const std::string& doc_;
    std::set<std::pair<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>>> seen_;
    std::vector<InformationComponent> out_;
};

void rule_copula(std::span<const Token> toks, Builder& b)
{
    for (std::size_t i = 1; i < toks.size(); ++i) {
        if (!is_copula(toks[i]) || !is_noun(toks[i - 1].pos)) continue;
        auto adj = adverbs_then_adjective(toks, i + 1);
        if (!adj) continue;
        // Distribute over "A, B and C" subjects.
        std::vector<std::pair<std::size_t, std::size_t>> subjects;
        std::size_t last = i - 1;
        while (true) {
            std::size_t first = noun_run_start(toks, last);
            subjects.emplace_back(first, last + 1);
            if (first >= 2 && (toks[first - 1].normalized == "and" || toks[first - 1].normalized == ",") &&
                is_noun(toks[first - 2].pos)) {
                last = first - 2;
                continue;
            }
            break;
        }
        for (auto it = subjects.rbegin(); it != subjects.rend(); ++it) b.emit(it->first, it->second, *adj, "R1");
    }
}

void rule_possession(std::span<const Token> toks, Builder& b)
{
    for (std::size_t i = 1; i < toks.size(); ++i) {
        const auto& w = toks[i].normalized;
        std::size_t after = 0;
        if (w == "has" || w == "have" || w == "had") {
            after = i + 1;
        } else if (w == "comes" && i + 1 < toks.size() && toks[i + 1].normalized == "with") {
            after = i + 2;
        } else {
            continue;
        }
        const Tag subject = toks[i - 1].pos;
        if (!is_noun(subject) && subject != Tag::PRP) continue;
        if (after < toks.size() && toks[after].pos == Tag::DT) ++after;
        auto adj = adverbs_then_adjective(toks, after);
        if (!adj || adj->adjective + 1 >= toks.size() || !is_noun(toks[adj->adjective + 1].pos)) continue;
        const std::size_t np_begin = adj->adjective + 1;
        b.emit(np_begin, noun_run_end(toks, np_begin), *adj, "R3");
    }
}

void rule_attributive(std::span<const Token> toks, Builder& b)
{
    for (std::size_t k = 0; k + 1 < toks.size(); ++k) {
        if (!is_adjective(toks[k].pos) || !is_noun(toks[k + 1].pos)) continue;
        AdjectiveMatch adj{k, std::nullopt};
        if (k > 0 && is_adverb(toks[k - 1].pos) && !is_negator(toks[k - 1].normalized)) adj.modifier = k - 1;
        b.emit(k + 1, noun_run_end(toks, k + 1), adj, "R2");
    }
}

void rule_pronoun(std::span<const Token> toks, Builder& b)
{
    for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
        if (!is_anaphor(toks[i]) || !is_copula(toks[i + 1])) continue;
        auto adj = adverbs_then_adjective(toks, i + 2);
        if (!adj) continue;
        b.emit(i, i + 1, *adj, "R4", true);
    }
}

// Plurality of the noun that ends at feature_span.end.
std::optional<bool> head_plural(const ReviewDocument& doc, const InformationComponent& c)
{
    if (c.sentence_index >= doc.sentences.size()) return std::nullopt;
    for (const auto& t : doc.sentences[c.sentence_index].tokens)
        if (t.span.end == c.feature_span.end && is_noun(t.pos)) return t.pos == Tag::NNS;
    return std::nullopt;
}

}  // namespace

bool is_negator(const std::string& normalized) { return kNegators.count(normalized) > 0; }

bool negated_at(std::span<const Token> tokens, std::size_t i)
{
    const std::size_t from = i >= kNegationWindow ? i - kNegationWindow : 0;
    for (std::size_t k = from; k < i; ++k)
        if (is_negator(tokens[k].normalized)) return true;
    return false;
}

NounPhrase noun_phrase_head(std::span<const Token> tokens)
{
    // Maximal contiguous noun run; the last one in the input wins.
    std::optional<std::size_t> last;
    for (std::size_t i = tokens.size(); i-- > 0;) {
        if (is_noun(tokens[i].pos)) {
            last = i;
            break;
        }
    }
    if (!last) throw ModelError("noun phrase contains no noun");
    const std::size_t first = noun_run_start(tokens, *last);
    NounPhrase np;
    for (std::size_t i = first; i <= *last; ++i) {
        if (!np.text.empty()) np.text += ' ';
        np.text += tokens[i].normalized;
    }
    np.plural = tokens[*last].pos == Tag::NNS;
    np.span = {tokens[first].span.begin, tokens[*last].span.end};
    return np;
}

std::vector<InformationComponent> extract_triplets(const Sentence& sentence, const std::string& document_id)
{
    std::span<const Token> toks(sentence.tokens);
    Builder b(toks, sentence, document_id);
    rule_copula(toks, b);
    rule_possession(toks, b);
    rule_attributive(toks, b);
    rule_pronoun(toks, b);
    return b.take();
}

std::vector<InformationComponent> resolve_anaphora(const ReviewDocument& document,
                                                   std::vector<InformationComponent> components,
                                                   const AnaphoraOptions& options)
{
    struct Candidate {
        std::string feature;
        bool plural;
        std::size_t sentence;
    };

    std::vector<InformationComponent> out;
    out.reserve(components.size());
    for (auto& c : components) {
        if (!c.pending_pronoun) {
            out.push_back(std::move(c));
            continue;
        }
        const bool want_plural = kPluralPronouns.count(c.feature) > 0;
        const std::size_t s = c.sentence_index;
        const std::size_t lowest = s >= options.window ? s - options.window : 0;

        auto agrees = [&](bool plural) { return plural == want_plural; };
        std::optional<Candidate> chosen;

        // Established features, nearest sentence first, latest mention first.
        for (auto it = out.rbegin(); it != out.rend() && !chosen; ++it) {
            if (it->anaphora_resolved || it->sentence_index >= s || it->sentence_index < lowest) continue;
            auto plural = head_plural(document, *it);
            if (plural && agrees(*plural)) chosen = Candidate{it->feature, *plural, it->sentence_index};
        }
        // Fallback: any noun phrase in the window.
        for (std::size_t k = s; k-- > lowest && !chosen;) {
            if (k >= document.sentences.size()) continue;
            std::span<const Token> toks(document.sentences[k].tokens);
            for (std::size_t i = toks.size(); i-- > 0;) {
                if (!is_noun(toks[i].pos)) continue;
                auto np = noun_phrase_head(toks.subspan(0, i + 1));
                if (agrees(np.plural)) {
                    chosen = Candidate{np.text, np.plural, k};
                    break;
                }
                i = noun_run_start(toks, i);
                if (i == 0) break;
            }
        }
        if (!chosen) continue;
        c.feature = chosen->feature;
        c.pending_pronoun = false;
        c.anaphora_resolved = true;
        c.antecedent_sentence_index = chosen->sentence;
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<InformationComponent> extract_document(const ReviewDocument& document, const AnaphoraOptions& options)
{
    std::vector<InformationComponent> all;
    for (const auto& s : document.sentences) {
        if (s.subjectivity == SubjectivityLabel::objective) continue;
        auto part = extract_triplets(s, document.id);
        std::move(part.begin(), part.end(), std::back_inserter(all));
    }
    return resolve_anaphora(document, std::move(all), options);
}

}  // namespace reviewforge
