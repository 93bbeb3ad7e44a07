#include "reviewforge/sentiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "reviewforge/subjectivity.hpp"
#include "reviewforge/text.hpp"

namespace reviewforge {

namespace {

using nlohmann::json;

constexpr std::size_t kClassCount = 3;
std::size_t class_index(Orientation o) { return static_cast<std::size_t>(o); }

using Counts = std::array<std::size_t, kClassCount>;

double entropy(const Counts& counts, std::size_t n)
{
    if (n == 0) return 0.0;
    double h = 0.0;
    for (auto c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(n);
        h -= p * std::log2(p);
    }
    return h;
}

Orientation majority(const Counts& counts)
{
    const auto top = *std::max_element(counts.begin(), counts.end());
    std::size_t winners = 0;
    Orientation label = Orientation::neutral;
    for (std::size_t c = 0; c < kClassCount; ++c) {
        if (counts[c] == top) {
            ++winners;
            label = static_cast<Orientation>(c);
        }
    }
    return winners == 1 ? label : Orientation::neutral;
}

struct Split {
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
};

class TreeBuilder {
public:
    explicit TreeBuilder(std::span<const LabeledVector> samples) : samples_(samples)
    {
        features_.reserve(samples.size());
        for (const auto& s : samples) features_.push_back(s.vector.features());
    }

    std::vector<DecisionTree::Node> build()
    {
        std::vector<std::size_t> all(samples_.size());
        std::iota(all.begin(), all.end(), 0);
        grow(all);
        return std::move(nodes_);
    }

private:
    Counts count(const std::vector<std::size_t>& idx) const
    {
        Counts c{};
        for (auto i : idx) ++c[class_index(samples_[i].label)];
        return c;
    }

    Split best_split(const std::vector<std::size_t>& idx, const Counts& parent) const
    {
        const std::size_t n = idx.size();
        const double base = entropy(parent, n);
        Split best;
        std::vector<std::size_t> order(idx);
        for (std::size_t f = 0; f < SentimentVector::kDimensions; ++f) {
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return features_[a][f] < features_[b][f]; });
            Counts left{};
            for (std::size_t k = 0; k + 1 < n; ++k) {
                ++left[class_index(samples_[order[k]].label)];
                const double lo = features_[order[k]][f];
                const double hi = features_[order[k + 1]][f];
                const std::size_t nl = k + 1;
                const std::size_t nr = n - nl;
                if (lo == hi || nl < DecisionTree::kMinLeaf || nr < DecisionTree::kMinLeaf) continue;
                Counts right{};
                for (std::size_t c = 0; c < kClassCount; ++c) right[c] = parent[c] - left[c];
                const double gain = base - (static_cast<double>(nl) * entropy(left, nl) +
                                            static_cast<double>(nr) * entropy(right, nr)) /
                                               static_cast<double>(n);
                if (gain > best.gain + 1e-12) {
                    best.feature = static_cast<int>(f);
                    best.threshold = lo + (hi - lo) / 2.0;
                    best.gain = gain;
                }
            }
        }
        return best;
    }

    int grow(const std::vector<std::size_t>& idx)
    {
        const int id = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
        const Counts counts = count(idx);
        nodes_[id].label = majority(counts);

        const bool pure = std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; }) <= 1;
        if (pure || idx.size() < 2 * DecisionTree::kMinLeaf) return id;
        const Split split = best_split(idx, counts);
        if (split.feature < 0) return id;

        std::vector<std::size_t> left;
        std::vector<std::size_t> right;
        for (auto i : idx) (features_[i][split.feature] <= split.threshold ? left : right).push_back(i);
        nodes_[id].feature = split.feature;
        nodes_[id].threshold = split.threshold;
        const int l = grow(left);
        const int r = grow(right);
        nodes_[id].left = l;
        nodes_[id].right = r;
        return id;
    }

    std::span<const LabeledVector> samples_;
    std::vector<std::array<double, SentimentVector::kDimensions>> features_;
    std::vector<DecisionTree::Node> nodes_;
};

}  // namespace

std::vector<SentimentVector> build_sentiment_vectors(std::span<const std::string> words,
                                                     std::span<const LabeledContext> contexts,
                                                     std::span<const ReviewDocument> corpus,
                                                     std::span<const InformationComponent> components)
{
    std::unordered_set<std::string> modified;
    for (const auto& c : components)
        if (c.modifier) modified.insert(c.opinion);

    std::vector<SentimentVector> out;
    std::unordered_set<std::string> done;
    const double docs = static_cast<double>(corpus.size());
    for (const auto& word : words) {
        if (!done.insert(word).second) continue;
        SentimentVector v;
        v.word = word;
        v.scores = opinion_scores(contingency_counts(word, contexts));
        v.has_modifier = modified.count(word) > 0;

        std::size_t occurrences = 0;
        std::size_t containing = 0;
        for (const auto& doc : corpus) {
            bool in_doc = false;
            for (const auto& s : doc.sentences) {
                for (std::size_t i = 0; i < s.tokens.size(); ++i) {
                    if (s.tokens[i].normalized != word) continue;
                    ++occurrences;
                    in_doc = true;
                    if (negated_at(s.tokens, i)) v.negation = true;
                }
            }
            if (in_doc) ++containing;
        }
        if (containing > 0) v.tfidf = static_cast<double>(occurrences) * std::log(docs / static_cast<double>(containing));
        out.push_back(std::move(v));
    }
    return out;
}

Orientation majority_vote(std::span<const Orientation> votes)
{
    Counts c{};
    for (auto v : votes) ++c[class_index(v)];
    return majority(c);
}

DecisionTree DecisionTree::train(std::span<const LabeledVector> samples)
{
    if (samples.empty()) throw ModelError("decision tree needs at least one sample");
    DecisionTree t;
    t.nodes_ = TreeBuilder(samples).build();
    return t;
}

DecisionTree DecisionTree::from_nodes(std::vector<Node> nodes)
{
    if (nodes.empty()) throw ModelError("decision tree has no nodes");
    for (const auto& n : nodes) {
        if (n.feature < 0) continue;
        auto valid = [&](int child) { return child > 0 && static_cast<std::size_t>(child) < nodes.size(); };
        if (n.feature >= static_cast<int>(SentimentVector::kDimensions) || !valid(n.left) || !valid(n.right))
            throw ModelError("decision tree node references are out of range");
    }
    DecisionTree t;
    t.nodes_ = std::move(nodes);
    return t;
}

Orientation DecisionTree::predict(const SentimentVector& v) const
{
    const auto x = v.features();
    int at = 0;
    while (nodes_[at].feature >= 0) at = x[nodes_[at].feature] <= nodes_[at].threshold ? nodes_[at].left : nodes_[at].right;
    return nodes_[at].label;
}

std::size_t DecisionTree::depth() const
{
    std::vector<std::size_t> d(nodes_.size(), 0);
    std::size_t deepest = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        deepest = std::max(deepest, d[i]);
        if (nodes_[i].feature >= 0) {
            d[nodes_[i].left] = d[i] + 1;
            d[nodes_[i].right] = d[i] + 1;
        }
    }
    return deepest;
}

std::vector<std::size_t> bootstrap_indices(std::size_t n, std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<std::size_t> out(n);
    for (auto& i : out) i = pick(rng);
    return out;
}

SentimentModel::SentimentModel(std::vector<DecisionTree> trees, std::uint64_t seed) :
    trees_(std::move(trees)), seed_(seed)
{
    if (trees_.empty()) throw ModelError("sentiment ensemble needs at least one tree");
}

Orientation SentimentModel::classify(const SentimentVector& v) const
{
    std::vector<Orientation> votes;
    votes.reserve(trees_.size());
    for (const auto& t : trees_) votes.push_back(t.predict(v));
    return majority_vote(votes);
}

std::string SentimentModel::to_json() const
{
    json j;
    j["seed"] = seed_;
    j["bags"] = trees_.size();
    json trees = json::array();
    for (const auto& t : trees_) {
        json nodes = json::array();
        for (const auto& n : t.nodes())
            nodes.push_back({n.feature, n.threshold, n.left, n.right, std::string(to_string(n.label))});
        trees.push_back(std::move(nodes));
    }
    j["trees"] = std::move(trees);
    return j.dump();
}

SentimentModel SentimentModel::from_json(const std::string& text)
{
    try {
        auto j = json::parse(text);
        std::vector<DecisionTree> trees;
        for (const auto& jt : j.at("trees")) {
            std::vector<DecisionTree::Node> nodes;
            for (const auto& jn : jt) {
                DecisionTree::Node n;
                n.feature = jn.at(0).get<int>();
                n.threshold = jn.at(1).get<double>();
                n.left = jn.at(2).get<int>();
                n.right = jn.at(3).get<int>();
                n.label = orientation_from_string(jn.at(4).get<std::string>());
                nodes.push_back(n);
            }
            trees.push_back(DecisionTree::from_nodes(std::move(nodes)));
        }
        return SentimentModel(std::move(trees), j.at("seed").get<std::uint64_t>());
    } catch (const json::exception& e) {
        throw InputError(std::string("sentiment model: ") + e.what());
    }
}

SentimentModel train_sentiment(std::span<const LabeledVector> training, std::size_t bags, std::uint64_t seed)
{
    if (bags == 0) throw ModelError("bag count must be at least 1");
    Counts present{};
    for (const auto& s : training) ++present[class_index(s.label)];
    for (std::size_t c = 0; c < kClassCount; ++c)
        if (present[c] == 0)
            throw ModelError("sentiment training lacks class '" + std::string(to_string(static_cast<Orientation>(c))) +
                             "'");

    std::mt19937_64 rng(seed);
    std::vector<DecisionTree> trees;
    trees.reserve(bags);
    std::vector<LabeledVector> sample;
    for (std::size_t b = 0; b < bags; ++b) {
        sample.clear();
        for (auto i : bootstrap_indices(training.size(), rng)) sample.push_back(training[i]);
        trees.push_back(DecisionTree::train(sample));
    }
    return SentimentModel(std::move(trees), seed);
}

Orientation classify_polarity(const SentimentModel& model, const SentimentVector& v) { return model.classify(v); }

Orientation component_orientation(Orientation word, bool negated) { return negated ? flip(word) : word; }

std::vector<std::pair<std::string, Orientation>> read_polarity_lexicon(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path.string() + "'");
    std::vector<std::pair<std::string, Orientation>> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw InputError(path.string() + ":" + std::to_string(lineno) + ": expected word<TAB>label");
        try {
            out.emplace_back(to_lower(line.substr(0, tab)), orientation_from_string(line.substr(tab + 1)));
        } catch (const InputError& e) {
            throw InputError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

std::vector<LabeledContext> read_labeled_contexts(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path.string() + "'");
    std::vector<LabeledContext> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        const std::string label = tab == std::string::npos ? "" : line.substr(0, tab);
        if (label != "positive" && label != "negative")
            throw InputError(path.string() + ":" + std::to_string(lineno) +
                             ": expected positive|negative<TAB>sentence");
        Sentence tmp;
        tmp.tokens = tokenize(std::string_view(line).substr(tab + 1));
        out.push_back({normalized_tokens(tmp), label == "positive"});
    }
    return out;
}

std::vector<LabeledContext> contexts_from_ratings(std::span<const ReviewDocument> corpus)
{
    std::vector<LabeledContext> out;
    for (const auto& doc : corpus) {
        if (!doc.star_rating || *doc.star_rating == 3) continue;
        const bool positive = *doc.star_rating >= 4;
        for (const auto& s : doc.sentences) out.push_back({normalized_tokens(s), positive});
    }
    return out;
}

}  // namespace reviewforge
