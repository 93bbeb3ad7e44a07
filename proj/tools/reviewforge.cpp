// reviewforge command-line front end: pipeline stages and the read API.

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "reviewforge/api.hpp"
#include "reviewforge/pipeline.hpp"

using namespace reviewforge;

namespace {

std::atomic<ApiServer*> g_server{nullptr};

void on_signal(int)
{
    if (auto* s = g_server.load()) s->stop();
}

struct Flags {
    std::string config_file;
    std::string input, input_format, tagger, subjectivity_training, sentiment_lexicon, sentiment_contexts;
    std::string store, export_path, listen;
    std::optional<double> alpha, threshold, epsilon, prune;
    std::optional<std::size_t> window, max_iter, bags;
    std::optional<std::uint64_t> seed;
    bool include_llr = false;
};

void add_flags(CLI::App& app, Flags& f)
{
    app.add_option("--config", f.config_file, "JSON configuration file; flags override it");
    app.add_option("--input", f.input, "review corpus (JSONL or CSV)");
    app.add_option("--input-format", f.input_format, "jsonl or csv");
    app.add_option("--tagger", f.tagger, "builtin or pretagged");
    app.add_option("--subjectivity-training", f.subjectivity_training, "label<TAB>sentence file");
    app.add_option("--subjectivity-alpha", f.alpha, "Laplace smoothing");
    app.add_option("--subjectivity-threshold", f.threshold, "minimum P(subjective)");
    app.add_option("--anaphora-window", f.window, "sentences searched for an antecedent");
    app.add_option("--hits-epsilon", f.epsilon, "HITS convergence threshold");
    app.add_option("--hits-max-iter", f.max_iter, "HITS iteration cap");
    app.add_option("--prune-threshold", f.prune, "minimum pair reliability");
    app.add_option("--sentiment-lexicon", f.sentiment_lexicon, "word<TAB>label seed lexicon");
    app.add_option("--sentiment-contexts", f.sentiment_contexts, "label<TAB>sentence polarity contexts");
    app.add_option("--bags", f.bags, "trees in the bagged ensemble");
    app.add_option("--seed", f.seed, "random seed");
    app.add_option("--store", f.store, "results store directory (env REVIEWFORGE_STORE)");
    app.add_option("--export-path", f.export_path, "export file (default <store>/export.json)");
    app.add_flag("--include-llr", f.include_llr, "append llr to each scoreOpinion list");
    app.add_option("--listen", f.listen, "host:port for serve");
}

PipelineConfig resolve(const Flags& f)
{
    PipelineConfig c = f.config_file.empty() ? PipelineConfig{} : PipelineConfig::load(f.config_file);
    if (const char* env = std::getenv("REVIEWFORGE_STORE"); env && *env) c.store = env;
    if (!f.input.empty()) c.input = f.input;
    if (!f.input_format.empty()) c.input_format = input_format_from_string(f.input_format);
    if (!f.tagger.empty()) {
        if (f.tagger == "builtin") c.tagger = TaggerMode::builtin;
        else if (f.tagger == "pretagged") c.tagger = TaggerMode::pretagged;
        else throw ConfigError({"tagger: expected builtin or pretagged"});
    }
    if (!f.subjectivity_training.empty()) c.subjectivity_training = f.subjectivity_training;
    if (f.alpha) c.subjectivity_alpha = *f.alpha;
    if (f.threshold) c.subjectivity_threshold = *f.threshold;
    if (f.window) c.anaphora_window = *f.window;
    if (f.epsilon) c.hits_epsilon = *f.epsilon;
    if (f.max_iter) c.hits_max_iter = *f.max_iter;
    if (f.prune) c.prune_threshold = *f.prune;
    if (!f.sentiment_lexicon.empty()) c.sentiment_lexicon = f.sentiment_lexicon;
    if (!f.sentiment_contexts.empty()) c.sentiment_contexts = f.sentiment_contexts;
    if (f.bags) c.bags = *f.bags;
    if (f.seed) c.seed = *f.seed;
    if (!f.store.empty()) c.store = f.store;
    if (!f.export_path.empty()) c.export_path = f.export_path;
    if (f.include_llr) c.include_llr = true;
    if (!f.listen.empty()) c.listen = f.listen;
    auto diagnostics = c.validate();
    if (!diagnostics.empty()) throw ConfigError(std::move(diagnostics));
    return c;
}

int serve(const PipelineConfig& config)
{
    SnapshotHolder snapshots(std::make_shared<const ResultsStore>(load_store(config.store)));
    ApiServer server(snapshots);
    const auto colon = config.listen.rfind(':');
    const auto host = config.listen.substr(0, colon);
    const int port = std::stoi(config.listen.substr(colon + 1));
    if (!server.bind(host, port)) {
        std::cerr << "error: cannot listen on " << config.listen << '\n';
        return 1;
    }
    std::cerr << "serving snapshot " << snapshots.current()->snapshot_id << " on " << host << ':' << server.port()
              << '\n';

    std::atomic<bool> done{false};
    std::thread watcher([&] {
        while (!done) {
            std::this_thread::sleep_for(std::chrono::seconds(1));
            if (snapshots.reload_if_changed(config.store))
                std::cerr << "swapped to snapshot " << snapshots.current()->snapshot_id << '\n';
        }
    });
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    server.listen_after_bind();
    g_server = nullptr;
    done = true;
    watcher.join();
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"reviewforge: mine feature/opinion summaries from product reviews"};
    app.require_subcommand(1);
    Flags flags;

    struct Stage {
        const char* name;
        const char* help;
    };
    const Stage stages[] = {
        {"ingest", "read and analyse the review corpus into a new store"},
        {"train-subjectivity", "train the subjectivity classifier"},
        {"extract", "filter subjective sentences and extract information components"},
        {"score", "reliability scoring, pruning and word polarity"},
        {"summarize", "per-review and per-feature summaries"},
        {"export", "write the information-component export file"},
        {"serve", "serve the store over HTTP"},
        {"run", "all stages from ingest through export"},
        {"write-config", "write the effective configuration as JSON to stdout"},
    };
    for (const auto& s : stages) add_flags(*app.add_subcommand(s.name, s.help), flags);

    CLI11_PARSE(app, argc, argv);
    const std::string cmd = app.get_subcommands().front()->get_name();

    try {
        const auto config = resolve(flags);
        if (cmd == "ingest") std::cout << cmd_ingest(config) << '\n';
        else if (cmd == "train-subjectivity") std::cout << cmd_train_subjectivity(config) << '\n';
        else if (cmd == "extract") std::cout << cmd_extract(config) << '\n';
        else if (cmd == "score") std::cout << cmd_score(config) << '\n';
        else if (cmd == "summarize") std::cout << cmd_summarize(config) << '\n';
        else if (cmd == "export") std::cout << cmd_export(config).string() << '\n';
        else if (cmd == "run") std::cout << run_pipeline(config) << '\n';
        else if (cmd == "write-config") std::cout << config.to_json().dump(2) << '\n';
        else if (cmd == "serve") return serve(config);
    } catch (const ConfigError& e) {
        for (const auto& d : e.diagnostics()) std::cerr << "config error: " << d << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
