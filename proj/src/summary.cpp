#include "reviewforge/summary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <tuple>

#include <nlohmann/json.hpp>

namespace reviewforge {

namespace {

using nlohmann::json;

void count(Orientation o, std::size_t& pos, std::size_t& neg, std::size_t& neu)
{
    switch (o) {
    case Orientation::positive: ++pos; break;
    case Orientation::negative: ++neg; break;
    case Orientation::neutral: ++neu; break;
    }
}

std::string quoted(const std::string& s) { return json(s).dump(); }

using PairIndex = std::map<std::tuple<std::string, std::string, std::string>, double>;

PairIndex retained_index(const ResultsStore& store)
{
    PairIndex index;
    for (const auto& p : store.retained_pairs) index[{p.product_domain, p.feature, p.opinion}] = p.reliability;
    return index;
}

std::map<std::string, std::size_t> document_order(const ResultsStore& store)
{
    std::map<std::string, std::size_t> order;
    for (std::size_t i = 0; i < store.documents.size(); ++i) order.emplace(store.documents[i].id, i);
    return order;
}

}  // namespace

const ReviewDocument* ResultsStore::find_document(const std::string& id) const
{
    for (const auto& d : documents)
        if (d.id == id) return &d;
    return nullptr;
}

std::optional<double> ResultsStore::reliability_of(const InformationComponent& c) const
{
    const auto* doc = find_document(c.document_id);
    if (!doc) return std::nullopt;
    for (const auto& p : retained_pairs)
        if (p.product_domain == doc->product_domain && p.feature == c.feature && p.opinion == c.opinion)
            return p.reliability;
    return std::nullopt;
}

ReviewSummary aggregate_review_summary(const ResultsStore& store, const std::string& document_id)
{
    if (!store.find_document(document_id)) throw NotFoundError("unknown document '" + document_id + "'");
    ReviewSummary s;
    s.document_id = document_id;
    for (const auto& c : store.components)
        if (c.document_id == document_id)
            count(c.orientation.value_or(Orientation::neutral), s.positive_count, s.negative_count, s.neutral_count);
    return s;
}

FeatureSummary aggregate_feature_summary(const ResultsStore& store, const std::string& feature)
{
    FeatureSummary s;
    s.feature = feature;
    const auto order = document_order(store);
    std::set<std::string> opinions;
    for (const auto& c : store.components) {
        if (c.feature != feature) continue;
        count(c.orientation.value_or(Orientation::neutral), s.positive_count, s.negative_count, s.neutral_count);
        opinions.insert(c.opinion);
        s.snippets.push_back({c.document_id, c.sentence_index, c.feature_span, c.opinion_span});
    }
    if (s.total() == 0) throw NotFoundError("unknown feature '" + feature + "'");

    const double total = static_cast<double>(s.total());
    s.percentages = std::array<double, 3>{100.0 * s.positive_count / total, 100.0 * s.negative_count / total,
                                          100.0 * s.neutral_count / total};

    for (const auto& op : opinions) {
        ScoreSlice slice;
        slice.opinion = op;
        if (auto it = store.words.find(op); it != store.words.end()) {
            slice.orientation = it->second.orientation;
            if (slice.orientation != Orientation::neutral) slice.magnitude = std::abs(it->second.scores.chi);
        }
        s.score_slices.push_back(std::move(slice));
    }
    std::stable_sort(s.score_slices.begin(), s.score_slices.end(),
                     [](const ScoreSlice& a, const ScoreSlice& b) { return a.magnitude > b.magnitude; });

    auto rank = [&](const Snippet& sn) {
        auto it = order.find(sn.document_id);
        return std::make_tuple(it == order.end() ? order.size() : it->second, sn.sentence_index,
                               sn.feature_span.begin, sn.opinion_span.begin);
    };
    std::stable_sort(s.snippets.begin(), s.snippets.end(),
                     [&](const Snippet& a, const Snippet& b) { return rank(a) < rank(b); });
    return s;
}

std::vector<FeatureMention> list_features(const ResultsStore& store)
{
    std::map<std::string, std::size_t> mentions;
    for (const auto& c : store.components) ++mentions[c.feature];
    std::vector<FeatureMention> out;
    for (const auto& [f, n] : mentions) out.push_back({f, n});
    std::stable_sort(out.begin(), out.end(),
                     [](const FeatureMention& a, const FeatureMention& b) { return a.mentions > b.mentions; });
    return out;
}

std::string_view to_string(HighlightRole role) { return role == HighlightRole::feature ? "feature" : "opinion"; }
std::string_view highlight_color(HighlightRole role) { return role == HighlightRole::feature ? "orange" : "yellow"; }

std::vector<const InformationComponent*> document_components(const ResultsStore& store,
                                                             const std::string& document_id)
{
    std::vector<const InformationComponent*> out;
    for (const auto& c : store.components)
        if (c.document_id == document_id) out.push_back(&c);
    return out;
}

std::vector<Highlight> snippet_highlights(const ResultsStore& store, const std::string& document_id)
{
    if (!store.find_document(document_id)) throw NotFoundError("unknown document '" + document_id + "'");
    std::vector<Highlight> out;
    const auto comps = document_components(store, document_id);
    for (std::size_t i = 0; i < comps.size(); ++i) {
        out.push_back({i, comps[i]->sentence_index, comps[i]->feature_span, HighlightRole::feature});
        out.push_back({i, comps[i]->sentence_index, comps[i]->opinion_span, HighlightRole::opinion});
    }
    return out;
}

std::vector<ExportObject> export_components(const ResultsStore& store, const ExportOptions& options)
{
    const auto reliability = retained_index(store);
    std::map<std::string, const ReviewDocument*> docs;
    for (const auto& d : store.documents) docs.emplace(d.id, &d);

    std::vector<ExportObject> out;
    for (const auto& c : store.components) {
        ExportObject o;
        o.feature = c.feature;
        o.modifier = c.modifier.value_or("");
        o.opinion = c.opinion;
        if (auto d = docs.find(c.document_id); d != docs.end()) {
            auto r = reliability.find({d->second->product_domain, c.feature, c.opinion});
            if (r != reliability.end()) o.score_reliability_pair = r->second;
        }
        OpinionScoreSet scores;
        if (auto w = store.words.find(c.opinion); w != store.words.end()) scores = w->second.scores;
        o.score_opinion = {{"pmi", scores.pmi}, {"mi", scores.mi}, {"chi", scores.chi}};
        if (options.include_llr) o.score_opinion.push_back({"llr", scores.llr});
        o.orientation = std::string(to_string(c.orientation.value_or(Orientation::neutral)));
        out.push_back(std::move(o));
    }
    std::stable_sort(out.begin(), out.end(), [](const ExportObject& a, const ExportObject& b) {
        if (a.score_reliability_pair != b.score_reliability_pair)
            return a.score_reliability_pair > b.score_reliability_pair;
        return a.feature < b.feature;
    });
    return out;
}

std::string format_number(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", value);
    std::string s(buf);
    if (s == "-0.0000") s = "0.0000";
    return s;
}

std::string render_export_object(const ExportObject& o, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    std::string s;
    s += pad + "{\n";
    s += pad + "  \"feature\": " + quoted(o.feature) + ",\n";
    s += pad + "  \"modifier\": " + quoted(o.modifier) + ",\n";
    s += pad + "  \"opinion\": " + quoted(o.opinion) + ",\n";
    s += pad + "  \"scoreReliabilityPair\": " + format_number(o.score_reliability_pair) + ",\n";
    s += pad + "  \"scoreOpinion\": [\n";
    for (std::size_t i = 0; i < o.score_opinion.size(); ++i) {
        s += pad + "    {\n";
        s += pad + "      \"type\": " + quoted(o.score_opinion[i].type) + ",\n";
        s += pad + "      \"number\": " + format_number(o.score_opinion[i].number) + "\n";
        s += pad + "    }" + (i + 1 < o.score_opinion.size() ? "," : "") + "\n";
    }
    s += pad + "  ],\n";
    s += pad + "  \"orientation\": " + quoted(o.orientation) + "\n";
    s += pad + "}";
    return s;
}

std::string render_export(const std::vector<ExportObject>& objects)
{
    if (objects.empty()) return "[]\n";
    std::string s = "[\n";
    for (std::size_t i = 0; i < objects.size(); ++i) {
        s += render_export_object(objects[i], 2);
        s += i + 1 < objects.size() ? ",\n" : "\n";
    }
    s += "]\n";
    return s;
}

std::vector<ExportObject> parse_export(const std::string& text)
{
    std::vector<ExportObject> out;
    try {
        const auto arr = json::parse(text);
        if (!arr.is_array()) throw InputError("export: expected an array");
        for (const auto& j : arr) {
            ExportObject o;
            o.feature = j.at("feature").get<std::string>();
            o.modifier = j.at("modifier").get<std::string>();
            o.opinion = j.at("opinion").get<std::string>();
            o.score_reliability_pair = j.at("scoreReliabilityPair").get<double>();
            for (const auto& s : j.at("scoreOpinion"))
                o.score_opinion.push_back({s.at("type").get<std::string>(), s.at("number").get<double>()});
            o.orientation = j.at("orientation").get<std::string>();
            out.push_back(std::move(o));
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("export: ") + e.what());
    }
    return out;
}

}  // namespace reviewforge
