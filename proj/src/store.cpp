#include "reviewforge/store.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

namespace reviewforge {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

template <typename T>
json opt(const std::optional<T>& v)
{
    return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> get_opt(const json& j, const char* key)
{
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return it->template get<T>();
}

Span span_from_json(const json& j) { return {j.at(0).get<std::size_t>(), j.at(1).get<std::size_t>()}; }

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in) throw InputError("cannot read '" + p.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_atomic(const fs::path& p, const std::string& content)
{
    const fs::path tmp = p.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out.flush()) throw InputError("cannot write '" + tmp.string() + "'");
    }
    fs::rename(tmp, p);
}

std::string snapshot_of(const json& files)
{
    std::string table;
    for (auto it = files.begin(); it != files.end(); ++it) table += it.key() + ":" + it.value().get<std::string>() + "\n";
    return sha256_hex(table);
}

template <typename T, typename F>
json array_of(const std::vector<T>& items, F&& f)
{
    json a = json::array();
    for (const auto& x : items) a.push_back(f(x));
    return a;
}

}  // namespace

std::string sha256_hex(std::string_view data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out += kHex[digest[i] >> 4];
        out += kHex[digest[i] & 0xf];
    }
    return out;
}

json span_json(const Span& s) { return json::array({s.begin, s.end}); }

json to_json(const ReviewDocument& d)
{
    json j;
    j["id"] = d.id;
    j["source"] = d.source;
    j["domain"] = d.product_domain;
    j["author"] = d.author;
    j["date"] = opt(d.posted_on);
    j["stars"] = opt(d.star_rating);
    j["title"] = opt(d.title);
    j["body"] = d.body;
    json sentences = json::array();
    for (const auto& s : d.sentences) {
        json js;
        js["index"] = s.index;
        js["span"] = span_json(s.span);
        js["subjectivity"] = s.subjectivity ? json(std::string(to_string(*s.subjectivity))) : json(nullptr);
        js["subjectivity_score"] = opt(s.subjectivity_score);
        json toks = json::array();
        for (const auto& t : s.tokens)
            toks.push_back(json::array({t.surface, std::string(to_string(t.pos)), t.span.begin, t.span.end}));
        js["tokens"] = std::move(toks);
        sentences.push_back(std::move(js));
    }
    j["sentences"] = std::move(sentences);
    return j;
}

ReviewDocument document_from_json(const json& j)
{
    ReviewDocument d;
    d.id = j.at("id").get<std::string>();
    d.source = j.at("source").get<std::string>();
    d.product_domain = j.at("domain").get<std::string>();
    d.author = j.at("author").get<std::string>();
    d.posted_on = get_opt<std::string>(j, "date");
    d.star_rating = get_opt<int>(j, "stars");
    d.title = get_opt<std::string>(j, "title");
    d.body = j.at("body").get<std::string>();
    for (const auto& js : j.at("sentences")) {
        Sentence s;
        s.index = js.at("index").get<std::size_t>();
        s.span = span_from_json(js.at("span"));
        if (auto label = get_opt<std::string>(js, "subjectivity")) s.subjectivity = subjectivity_from_string(*label);
        s.subjectivity_score = get_opt<double>(js, "subjectivity_score");
        for (const auto& jt : js.at("tokens")) {
            Token t;
            t.surface = jt.at(0).get<std::string>();
            t.normalized = to_lower(t.surface);
            t.pos = tag_from_string(jt.at(1).get<std::string>());
            t.span = {jt.at(2).get<std::size_t>(), jt.at(3).get<std::size_t>()};
            s.tokens.push_back(std::move(t));
        }
        d.sentences.push_back(std::move(s));
    }
    return d;
}

json to_json(const InformationComponent& c)
{
    json j;
    j["feature"] = c.feature;
    j["modifier"] = opt(c.modifier);
    j["opinion"] = c.opinion;
    j["document_id"] = c.document_id;
    j["sentence_index"] = c.sentence_index;
    j["feature_span"] = span_json(c.feature_span);
    j["modifier_span"] = c.modifier_span ? span_json(*c.modifier_span) : json(nullptr);
    j["opinion_span"] = span_json(c.opinion_span);
    j["rule_id"] = c.rule_id;
    j["anaphora_resolved"] = c.anaphora_resolved;
    j["antecedent_sentence_index"] = opt(c.antecedent_sentence_index);
    j["negated"] = c.negated;
    j["orientation"] = c.orientation ? json(std::string(to_string(*c.orientation))) : json(nullptr);
    return j;
}

InformationComponent component_from_json(const json& j)
{
    InformationComponent c;
    c.feature = j.at("feature").get<std::string>();
    c.modifier = get_opt<std::string>(j, "modifier");
    c.opinion = j.at("opinion").get<std::string>();
    c.document_id = j.at("document_id").get<std::string>();
    c.sentence_index = j.at("sentence_index").get<std::size_t>();
    c.feature_span = span_from_json(j.at("feature_span"));
    if (!j.at("modifier_span").is_null()) c.modifier_span = span_from_json(j.at("modifier_span"));
    c.opinion_span = span_from_json(j.at("opinion_span"));
    c.rule_id = j.at("rule_id").get<std::string>();
    c.anaphora_resolved = j.at("anaphora_resolved").get<bool>();
    c.antecedent_sentence_index = get_opt<std::size_t>(j, "antecedent_sentence_index");
    c.negated = j.at("negated").get<bool>();
    if (auto o = get_opt<std::string>(j, "orientation")) c.orientation = orientation_from_string(*o);
    return c;
}

json to_json(const ScoredPair& p)
{
    return {{"feature", p.feature},       {"opinion", p.opinion},         {"hub_score", p.hub_score},
            {"reliability", p.reliability}, {"domain", p.product_domain}, {"iterations", p.iterations}};
}

ScoredPair scored_pair_from_json(const json& j)
{
    ScoredPair p;
    p.feature = j.at("feature").get<std::string>();
    p.opinion = j.at("opinion").get<std::string>();
    p.hub_score = j.at("hub_score").get<double>();
    p.reliability = j.at("reliability").get<double>();
    p.product_domain = j.at("domain").get<std::string>();
    p.iterations = j.at("iterations").get<std::size_t>();
    return p;
}

json to_json(const WordScore& w)
{
    return {{"word", w.word},
            {"table", {w.table.n11, w.table.n12, w.table.n21, w.table.n22}},
            {"pmi", w.scores.pmi},
            {"mi", w.scores.mi},
            {"chi", w.scores.chi},
            {"llr", w.scores.llr},
            {"negation", w.negation},
            {"tfidf", w.tfidf},
            {"has_modifier", w.has_modifier},
            {"orientation", std::string(to_string(w.orientation))}};
}

WordScore word_score_from_json(const json& j)
{
    WordScore w;
    w.word = j.at("word").get<std::string>();
    const auto& t = j.at("table");
    w.table = {t.at(0).get<std::uint64_t>(), t.at(1).get<std::uint64_t>(), t.at(2).get<std::uint64_t>(),
               t.at(3).get<std::uint64_t>()};
    w.scores = {j.at("pmi").get<double>(), j.at("mi").get<double>(), j.at("chi").get<double>(),
                j.at("llr").get<double>()};
    w.negation = j.at("negation").get<bool>();
    w.tfidf = j.at("tfidf").get<double>();
    w.has_modifier = j.at("has_modifier").get<bool>();
    w.orientation = orientation_from_string(j.at("orientation").get<std::string>());
    return w;
}

json to_json(const ReviewSummary& s)
{
    return {{"document_id", s.document_id},
            {"positive", s.positive_count},
            {"negative", s.negative_count},
            {"neutral", s.neutral_count}};
}

ReviewSummary review_summary_from_json(const json& j)
{
    return {j.at("document_id").get<std::string>(), j.at("positive").get<std::size_t>(),
            j.at("negative").get<std::size_t>(), j.at("neutral").get<std::size_t>()};
}

json to_json(const FeatureSummary& s)
{
    json j;
    j["feature"] = s.feature;
    j["positive"] = s.positive_count;
    j["negative"] = s.negative_count;
    j["neutral"] = s.neutral_count;
    j["percentages"] = s.percentages ? json{{"positive", (*s.percentages)[0]},
                                            {"negative", (*s.percentages)[1]},
                                            {"neutral", (*s.percentages)[2]}}
                                     : json(nullptr);
    j["score_slices"] = array_of(s.score_slices, [](const ScoreSlice& sl) {
        return json{{"opinion", sl.opinion}, {"magnitude", sl.magnitude},
                    {"orientation", std::string(to_string(sl.orientation))}};
    });
    j["snippets"] = array_of(s.snippets, [](const Snippet& sn) {
        return json{{"document_id", sn.document_id},
                    {"sentence_index", sn.sentence_index},
                    {"feature_span", span_json(sn.feature_span)},
                    {"opinion_span", span_json(sn.opinion_span)}};
    });
    return j;
}

FeatureSummary feature_summary_from_json(const json& j)
{
    FeatureSummary s;
    s.feature = j.at("feature").get<std::string>();
    s.positive_count = j.at("positive").get<std::size_t>();
    s.negative_count = j.at("negative").get<std::size_t>();
    s.neutral_count = j.at("neutral").get<std::size_t>();
    if (!j.at("percentages").is_null()) {
        const auto& p = j.at("percentages");
        s.percentages = std::array<double, 3>{p.at("positive").get<double>(), p.at("negative").get<double>(),
                                              p.at("neutral").get<double>()};
    }
    for (const auto& sl : j.at("score_slices"))
        s.score_slices.push_back({sl.at("opinion").get<std::string>(), sl.at("magnitude").get<double>(),
                                  orientation_from_string(sl.at("orientation").get<std::string>())});
    for (const auto& sn : j.at("snippets"))
        s.snippets.push_back({sn.at("document_id").get<std::string>(), sn.at("sentence_index").get<std::size_t>(),
                              span_from_json(sn.at("feature_span")), span_from_json(sn.at("opinion_span"))});
    return s;
}

bool store_exists(const fs::path& dir) { return fs::exists(dir / kManifestName); }

std::string persist_store(ResultsStore& store, const fs::path& dir)
{
    fs::create_directories(dir);
    std::map<std::string, std::string> files;

    files["documents.json"] = array_of(store.documents, [](const auto& d) { return to_json(d); }).dump(1);
    if (store.subjectivity_model) files["subjectivity_model.json"] = *store.subjectivity_model;
    if (store.extraction_done)
        files["extraction.json"] = array_of(store.extracted, [](const auto& c) { return to_json(c); }).dump(1);
    if (store.scoring_done) {
        files["pairs.json"] = json{{"scored", array_of(store.scored_pairs, [](const auto& p) { return to_json(p); })},
                                   {"retained", array_of(store.retained_pairs, [](const auto& p) { return to_json(p); })}}
                                  .dump(1);
        files["components.json"] = array_of(store.components, [](const auto& c) { return to_json(c); }).dump(1);
        json words = json::array();
        for (const auto& [_, w] : store.words) words.push_back(to_json(w));
        files["words.json"] = words.dump(1);
        if (store.sentiment_model) files["sentiment_model.json"] = *store.sentiment_model;
    }
    if (store.summaries_done) {
        files["summaries.json"] =
            json{{"reviews", array_of(store.review_summaries, [](const auto& s) { return to_json(s); })},
                 {"features", array_of(store.feature_summaries, [](const auto& s) { return to_json(s); })}}
                .dump(1);
    }

    json table = json::object();
    for (const auto& [name, content] : files) {
        write_atomic(dir / name, content);
        table[name] = sha256_hex(content);
    }
    // Collections from an earlier, longer run no longer belong to this snapshot.
    for (const char* stale : {"subjectivity_model.json", "extraction.json", "pairs.json", "components.json",
                              "words.json", "sentiment_model.json", "summaries.json"}) {
        if (!files.count(stale)) fs::remove(dir / stale);
    }
    store.snapshot_id = snapshot_of(table);
    json manifest = {{"format", kStoreFormat}, {"snapshot", store.snapshot_id}, {"files", table}};
    write_atomic(dir / kManifestName, manifest.dump(1) + "\n");
    return store.snapshot_id;
}

ResultsStore load_store(const fs::path& dir)
{
    const fs::path manifest_path = dir / kManifestName;
    if (!fs::exists(manifest_path)) throw InputError("no results store at '" + dir.string() + "' (missing manifest)");

    json manifest;
    try {
        manifest = json::parse(read_file(manifest_path));
    } catch (const json::parse_error& e) {
        throw StoreCorruptError("manifest is not valid JSON: " + std::string(e.what()));
    }
    if (!manifest.is_object() || manifest.value("format", "") != kStoreFormat || !manifest.contains("files") ||
        !manifest["files"].is_object() || !manifest.contains("snapshot"))
        throw StoreCorruptError("manifest has an unexpected layout");
    const json& table = manifest["files"];
    if (snapshot_of(table) != manifest["snapshot"].get<std::string>())
        throw StoreCorruptError("manifest snapshot id does not match its file table");

    std::map<std::string, std::string> files;
    for (auto it = table.begin(); it != table.end(); ++it) {
        const fs::path p = dir / it.key();
        if (!fs::exists(p)) throw StoreCorruptError("collection '" + it.key() + "' is missing");
        std::string content = read_file(p);
        if (sha256_hex(content) != it.value().get<std::string>())
            throw StoreCorruptError("checksum mismatch in '" + it.key() + "'");
        files[it.key()] = std::move(content);
    }

    ResultsStore store;
    store.snapshot_id = manifest["snapshot"].get<std::string>();
    try {
        if (auto f = files.find("documents.json"); f != files.end())
            for (const auto& j : json::parse(f->second)) store.documents.push_back(document_from_json(j));
        if (auto f = files.find("subjectivity_model.json"); f != files.end()) store.subjectivity_model = f->second;
        if (auto f = files.find("extraction.json"); f != files.end()) {
            store.extraction_done = true;
            for (const auto& j : json::parse(f->second)) store.extracted.push_back(component_from_json(j));
        }
        if (auto f = files.find("pairs.json"); f != files.end()) {
            store.scoring_done = true;
            auto j = json::parse(f->second);
            for (const auto& p : j.at("scored")) store.scored_pairs.push_back(scored_pair_from_json(p));
            for (const auto& p : j.at("retained")) store.retained_pairs.push_back(scored_pair_from_json(p));
        }
        if (auto f = files.find("components.json"); f != files.end())
            for (const auto& j : json::parse(f->second)) store.components.push_back(component_from_json(j));
        if (auto f = files.find("words.json"); f != files.end())
            for (const auto& j : json::parse(f->second)) {
                auto w = word_score_from_json(j);
                store.words.emplace(w.word, std::move(w));
            }
        if (auto f = files.find("sentiment_model.json"); f != files.end()) store.sentiment_model = f->second;
        if (auto f = files.find("summaries.json"); f != files.end()) {
            store.summaries_done = true;
            auto j = json::parse(f->second);
            for (const auto& s : j.at("reviews")) store.review_summaries.push_back(review_summary_from_json(s));
            for (const auto& s : j.at("features")) store.feature_summaries.push_back(feature_summary_from_json(s));
        }
    } catch (const json::exception& e) {
        throw StoreCorruptError(std::string("collection does not parse: ") + e.what());
    }
    return store;
}

}  // namespace reviewforge
