#include "reviewforge/pipeline.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "reviewforge/extraction.hpp"
#include "reviewforge/reliability.hpp"
#include "reviewforge/sentiment.hpp"

namespace reviewforge {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string join_lines(const std::vector<std::string>& lines)
{
    std::string s;
    for (const auto& l : lines) {
        if (!s.empty()) s += '\n';
        s += l;
    }
    return s;
}

void require_path(const fs::path& p, const char* field, const char* stage)
{
    if (p.empty()) throw ConfigError({std::string(field) + ": required by " + stage});
}

void require_valid(const PipelineConfig& config)
{
    auto diagnostics = config.validate();
    if (!diagnostics.empty()) throw ConfigError(std::move(diagnostics));
}

ResultsStore load_for(const PipelineConfig& config, const char* stage)
{
    if (!store_exists(config.store))
        throw StageError(std::string(stage) + ": no results store at '" + config.store.string() +
                         "'; run 'ingest' first");
    return load_store(config.store);
}

bool parse_listen(const std::string& listen, std::string& host, int& port)
{
    auto colon = listen.rfind(':');
    if (colon == std::string::npos || colon == 0) return false;
    host = listen.substr(0, colon);
    try {
        std::size_t used = 0;
        port = std::stoi(listen.substr(colon + 1), &used);
        if (used != listen.size() - colon - 1) return false;
    } catch (const std::exception&) {
        return false;
    }
    return port >= 0 && port <= 65535;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> diagnostics) :
    std::runtime_error("invalid configuration:\n" + join_lines(diagnostics)), diagnostics_(std::move(diagnostics))
{
}

std::vector<std::string> PipelineConfig::validate() const
{
    std::vector<std::string> d;
    if (!(subjectivity_alpha > 0)) d.push_back("subjectivity_alpha: must be > 0");
    if (!(subjectivity_threshold >= 0 && subjectivity_threshold <= 1))
        d.push_back("subjectivity_threshold: must be in [0, 1]");
    if (anaphora_window < 1 || anaphora_window > 10) d.push_back("anaphora_window: must be in [1, 10]");
    if (!(hits_epsilon > 0 && hits_epsilon < 1)) d.push_back("hits_epsilon: must be in (0, 1)");
    if (hits_max_iter < 1 || hits_max_iter > 1000000) d.push_back("hits_max_iter: must be in [1, 1000000]");
    if (!(prune_threshold >= 0 && prune_threshold <= 1)) d.push_back("prune_threshold: must be in [0, 1]");
    if (bags < 1 || bags > 1000) d.push_back("bags: must be in [1, 1000]");
    if (store.empty()) d.push_back("store: must not be empty");
    std::string host;
    int port = 0;
    if (!parse_listen(listen, host, port)) d.push_back("listen: expected host:port with port in [0, 65535]");
    return d;
}

fs::path PipelineConfig::resolved_export_path() const
{
    return export_path.empty() ? store / "export.json" : export_path;
}

json PipelineConfig::to_json() const
{
    return {{"input", input.string()},
            {"input_format", input_format == InputFormat::jsonl ? "jsonl" : "csv"},
            {"tagger", tagger == TaggerMode::builtin ? "builtin" : "pretagged"},
            {"subjectivity_training", subjectivity_training.string()},
            {"subjectivity_alpha", subjectivity_alpha},
            {"subjectivity_threshold", subjectivity_threshold},
            {"anaphora_window", anaphora_window},
            {"hits_epsilon", hits_epsilon},
            {"hits_max_iter", hits_max_iter},
            {"prune_threshold", prune_threshold},
            {"sentiment_lexicon", sentiment_lexicon.string()},
            {"sentiment_contexts", sentiment_contexts.string()},
            {"bags", bags},
            {"seed", seed},
            {"store", store.string()},
            {"export_path", export_path.string()},
            {"include_llr", include_llr},
            {"listen", listen}};
}

PipelineConfig PipelineConfig::from_json(const json& j)
{
    if (!j.is_object()) throw ConfigError({"config: expected an object"});
    PipelineConfig c;
    std::vector<std::string> d;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        const json& v = it.value();
        try {
            if (k == "input") c.input = v.get<std::string>();
            else if (k == "input_format") c.input_format = input_format_from_string(v.get<std::string>());
            else if (k == "tagger") {
                auto t = v.get<std::string>();
                if (t == "builtin") c.tagger = TaggerMode::builtin;
                else if (t == "pretagged") c.tagger = TaggerMode::pretagged;
                else d.push_back("tagger: expected builtin or pretagged");
            }
            else if (k == "subjectivity_training") c.subjectivity_training = v.get<std::string>();
            else if (k == "subjectivity_alpha") c.subjectivity_alpha = v.get<double>();
            else if (k == "subjectivity_threshold") c.subjectivity_threshold = v.get<double>();
            else if (k == "anaphora_window") c.anaphora_window = v.get<std::size_t>();
            else if (k == "hits_epsilon") c.hits_epsilon = v.get<double>();
            else if (k == "hits_max_iter") c.hits_max_iter = v.get<std::size_t>();
            else if (k == "prune_threshold") c.prune_threshold = v.get<double>();
            else if (k == "sentiment_lexicon") c.sentiment_lexicon = v.get<std::string>();
            else if (k == "sentiment_contexts") c.sentiment_contexts = v.get<std::string>();
            else if (k == "bags") c.bags = v.get<std::size_t>();
            else if (k == "seed") c.seed = v.get<std::uint64_t>();
            else if (k == "store") c.store = v.get<std::string>();
            else if (k == "export_path") c.export_path = v.get<std::string>();
            else if (k == "include_llr") c.include_llr = v.get<bool>();
            else if (k == "listen") c.listen = v.get<std::string>();
            else d.push_back(k + ": unknown field");
        } catch (const json::exception&) {
            d.push_back(k + ": wrong type");
        } catch (const InputError& e) {
            d.push_back(k + ": " + e.what());
        }
    }
    if (!d.empty()) throw ConfigError(std::move(d));
    return c;
}

PipelineConfig PipelineConfig::load(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path.string() + "'");
    try {
        return from_json(json::parse(in));
    } catch (const json::parse_error& e) {
        throw ConfigError({"config: " + std::string(e.what())});
    }
}

void PipelineConfig::save(const fs::path& path) const
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    out << to_json().dump(2) << '\n';
}

std::vector<ReviewDocument> analyze_corpus(std::vector<ReviewDocument> docs, TaggerMode mode)
{
    const LexiconTagger tagger;
    for (auto& d : docs) {
        if (mode == TaggerMode::pretagged) analyze_pretagged(d);
        else analyze_document(d, tagger);
    }
    return docs;
}

void extract_stage(ResultsStore& store, const SubjectivityModel& model, const PipelineConfig& config)
{
    filter_subjective(store.documents, model, config.subjectivity_threshold);
    store.extracted.clear();
    const AnaphoraOptions options{config.anaphora_window};
    for (const auto& doc : store.documents) {
        auto comps = extract_document(doc, options);
        std::move(comps.begin(), comps.end(), std::back_inserter(store.extracted));
    }
    store.extraction_done = true;
}

void score_stage(ResultsStore& store, const PipelineConfig& config)
{
    std::map<std::string, std::string> domain_of;
    for (const auto& d : store.documents) domain_of[d.id] = d.product_domain;

    // Feasibility analysis, one graph per product domain.
    std::map<std::string, std::vector<InformationComponent>> by_domain;
    for (const auto& c : store.extracted) by_domain[domain_of[c.document_id]].push_back(c);

    store.scored_pairs.clear();
    for (const auto& [domain, comps] : by_domain) {
        const auto graph = build_bipartite_graph(comps);
        const auto hits = run_hits(graph, {config.hits_epsilon, config.hits_max_iter});
        const std::vector<std::string> partition(graph.pairs.size(), domain);
        auto scored = reliability_scores(graph.pairs, hits.hub, partition);
        for (auto& s : scored) s.iterations = hits.iterations;
        std::move(scored.begin(), scored.end(), std::back_inserter(store.scored_pairs));
    }
    store.retained_pairs = prune_noisy_pairs(store.scored_pairs, config.prune_threshold);

    std::set<std::tuple<std::string, std::string, std::string>> keep;
    for (const auto& p : store.retained_pairs) keep.emplace(p.product_domain, p.feature, p.opinion);
    store.components.clear();
    for (const auto& c : store.extracted)
        if (keep.count({domain_of[c.document_id], c.feature, c.opinion})) store.components.push_back(c);

    // Word-level polarity.
    std::vector<LabeledContext> contexts;
    if (!config.sentiment_contexts.empty()) contexts = read_labeled_contexts(config.sentiment_contexts);
    auto rated = contexts_from_ratings(store.documents);
    std::move(rated.begin(), rated.end(), std::back_inserter(contexts));
    if (contexts.empty()) throw ModelError("no labeled contexts: supply sentiment_contexts or star-rated reviews");

    const auto lexicon = read_polarity_lexicon(config.sentiment_lexicon);
    std::vector<std::string> lexicon_words;
    for (const auto& [w, _] : lexicon) lexicon_words.push_back(w);
    const auto lexicon_vectors = build_sentiment_vectors(lexicon_words, contexts, store.documents, store.extracted);
    std::map<std::string, Orientation> label_of(lexicon.begin(), lexicon.end());
    std::vector<LabeledVector> training;
    for (const auto& v : lexicon_vectors) training.push_back({v, label_of.at(v.word)});
    const auto model = train_sentiment(training, config.bags, config.seed);
    store.sentiment_model = model.to_json();

    std::vector<std::string> opinions;
    for (const auto& c : store.components) opinions.push_back(c.opinion);
    store.words.clear();
    for (const auto& v : build_sentiment_vectors(opinions, contexts, store.documents, store.extracted)) {
        WordScore w;
        w.word = v.word;
        w.table = contingency_counts(v.word, contexts);
        w.scores = v.scores;
        w.negation = v.negation;
        w.tfidf = v.tfidf;
        w.has_modifier = v.has_modifier;
        w.orientation = classify_polarity(model, v);
        store.words.emplace(w.word, std::move(w));
    }
    for (auto& c : store.components) c.orientation = component_orientation(store.words.at(c.opinion).orientation, c.negated);
    store.scoring_done = true;
}

void summarize_stage(ResultsStore& store)
{
    store.review_summaries.clear();
    store.feature_summaries.clear();
    for (const auto& d : store.documents) store.review_summaries.push_back(aggregate_review_summary(store, d.id));
    for (const auto& f : list_features(store)) store.feature_summaries.push_back(aggregate_feature_summary(store, f.feature));
    store.summaries_done = true;
}

std::string cmd_ingest(const PipelineConfig& config)
{
    require_valid(config);
    require_path(config.input, "input", "ingest");
    ResultsStore store;
    store.documents = analyze_corpus(ingest_reviews(config.input, config.input_format), config.tagger);
    return persist_store(store, config.store);
}

std::string cmd_train_subjectivity(const PipelineConfig& config)
{
    require_valid(config);
    require_path(config.subjectivity_training, "subjectivity_training", "train-subjectivity");
    auto store = load_for(config, "train-subjectivity");
    const auto model = train_subjectivity(read_labeled_sentences(config.subjectivity_training), config.subjectivity_alpha);
    ResultsStore next;
    next.documents = std::move(store.documents);
    next.subjectivity_model = model.to_json();
    return persist_store(next, config.store);
}

std::string cmd_extract(const PipelineConfig& config)
{
    require_valid(config);
    auto store = load_for(config, "extract");
    if (!store.subjectivity_model)
        throw StageError("extract: subjectivity model missing; run 'train-subjectivity' first");
    const auto model = SubjectivityModel::from_json(*store.subjectivity_model);
    ResultsStore next;
    next.documents = std::move(store.documents);
    next.subjectivity_model = std::move(store.subjectivity_model);
    extract_stage(next, model, config);
    return persist_store(next, config.store);
}

std::string cmd_score(const PipelineConfig& config)
{
    require_valid(config);
    require_path(config.sentiment_lexicon, "sentiment_lexicon", "score");
    auto store = load_for(config, "score");
    if (!store.extraction_done) throw StageError("score: extraction results missing; run 'extract' first");
    store.summaries_done = false;
    store.review_summaries.clear();
    store.feature_summaries.clear();
    score_stage(store, config);
    return persist_store(store, config.store);
}

std::string cmd_summarize(const PipelineConfig& config)
{
    require_valid(config);
    auto store = load_for(config, "summarize");
    if (!store.scoring_done) throw StageError("summarize: scoring results missing; run 'score' first");
    summarize_stage(store);
    return persist_store(store, config.store);
}

fs::path cmd_export(const PipelineConfig& config)
{
    require_valid(config);
    auto store = load_for(config, "export");
    if (!store.scoring_done) throw StageError("export: scoring results missing; run 'score' first");
    const auto path = config.resolved_export_path();
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    out << render_export(export_components(store, {config.include_llr}));
    return path;
}

std::string run_pipeline(const PipelineConfig& config)
{
    cmd_ingest(config);
    cmd_train_subjectivity(config);
    cmd_extract(config);
    cmd_score(config);
    auto id = cmd_summarize(config);
    cmd_export(config);
    return id;
}

}  // namespace reviewforge
