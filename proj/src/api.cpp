#include "reviewforge/api.hpp"

#include <charconv>
#include <fstream>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "reviewforge/store.hpp"

namespace reviewforge {

namespace {

using nlohmann::json;

struct Page {
    std::size_t limit = kDefaultPageLimit;
    std::size_t offset = 0;
};

class BadRequest : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::size_t parse_count(const QueryParams& query, const std::string& key, std::size_t fallback)
{
    auto [lo, hi] = query.equal_range(key);
    if (lo == hi) return fallback;
    if (std::next(lo) != hi) throw BadRequest("'" + key + "' given more than once");
    const std::string& text = lo->second;
    std::size_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || end != text.data() + text.size())
        throw BadRequest("'" + key + "' must be a non-negative integer");
    return value;
}

Page parse_page(const QueryParams& query)
{
    for (const auto& [k, _] : query)
        if (k != "limit" && k != "offset") throw BadRequest("unknown query parameter '" + k + "'");
    Page p;
    p.limit = parse_count(query, "limit", kDefaultPageLimit);
    p.offset = parse_count(query, "offset", 0);
    if (p.limit == 0 || p.limit > kMaxPageLimit)
        throw BadRequest("'limit' must be between 1 and " + std::to_string(kMaxPageLimit));
    return p;
}

void reject_query(const QueryParams& query)
{
    if (!query.empty()) throw BadRequest("unknown query parameter '" + query.begin()->first + "'");
}

template <class T, class F>
json page_of(const std::vector<T>& items, const Page& page, F&& render)
{
    json out = json::array();
    for (std::size_t i = page.offset; i < items.size() && i < page.offset + page.limit; ++i) out.push_back(render(items[i]));
    return {{"items", std::move(out)}, {"total", items.size()}, {"limit", page.limit}, {"offset", page.offset}};
}

ApiResponse ok(const json& j) { return {200, j.dump()}; }

std::vector<std::string> split_path(std::string_view path)
{
    std::vector<std::string> parts;
    std::size_t i = 0;
    while (i < path.size()) {
        if (path[i] == '/') {
            ++i;
            continue;
        }
        auto j = path.find('/', i);
        if (j == std::string_view::npos) j = path.size();
        parts.emplace_back(path.substr(i, j - i));
        i = j;
    }
    return parts;
}

template <class T>
json opt(const std::optional<T>& v)
{
    return v ? json(*v) : json(nullptr);
}

json review_row(const ReviewDocument& d)
{
    return {{"id", d.id},     {"source", d.source},         {"domain", d.product_domain}, {"author", d.author},
            {"date", opt(d.posted_on)}, {"stars", opt(d.star_rating)}, {"title", opt(d.title)}};
}

json component_row(const ResultsStore& store, const InformationComponent& c)
{
    json scores = nullptr;
    if (auto w = store.words.find(c.opinion); w != store.words.end())
        scores = {{"pmi", w->second.scores.pmi},
                  {"mi", w->second.scores.mi},
                  {"chi", w->second.scores.chi},
                  {"llr", w->second.scores.llr}};
    return {{"feature", c.feature},
            {"modifier", opt(c.modifier)},
            {"opinion", c.opinion},
            {"orientation", std::string(to_string(c.orientation.value_or(Orientation::neutral)))},
            {"reliability", opt(store.reliability_of(c))},
            {"sentence_index", c.sentence_index},
            {"feature_span", span_json(c.feature_span)},
            {"opinion_span", span_json(c.opinion_span)},
            {"negated", c.negated},
            {"scores", std::move(scores)}};
}

const ReviewDocument& require_document(const ResultsStore& store, const std::string& id)
{
    const auto* d = store.find_document(id);
    if (!d) throw NotFoundError("unknown review '" + id + "'");
    return *d;
}

json review_detail(const ResultsStore& store, const ReviewDocument& d)
{
    json j = review_row(d);
    j["body"] = d.body;
    json sentences = json::array();
    for (const auto& s : d.sentences)
        sentences.push_back({{"index", s.index},
                             {"span", span_json(s.span)},
                             {"text", std::string(d.text(s.span))},
                             {"subjectivity", s.subjectivity ? json(std::string(to_string(*s.subjectivity))) : json(nullptr)},
                             {"subjectivity_score", opt(s.subjectivity_score)}});
    j["sentences"] = std::move(sentences);
    json highlights = json::array();
    for (const auto& h : snippet_highlights(store, d.id))
        highlights.push_back({{"component", h.component},
                              {"sentence_index", h.sentence_index},
                              {"span", span_json(h.span)},
                              {"role", std::string(to_string(h.role))},
                              {"color", std::string(highlight_color(h.role))}});
    j["highlights"] = std::move(highlights);
    json comps = json::array();
    for (const auto* c : document_components(store, d.id)) comps.push_back(component_row(store, *c));
    j["components"] = std::move(comps);
    return j;
}

json review_summary(const ResultsStore& store, const std::string& id)
{
    require_document(store, id);
    for (const auto& s : store.review_summaries)
        if (s.document_id == id) return to_json(s);
    return to_json(aggregate_review_summary(store, id));
}

json feature_summary(const ResultsStore& store, const std::string& feature)
{
    for (const auto& s : store.feature_summaries)
        if (s.feature == feature) return to_json(s);
    return to_json(aggregate_feature_summary(store, feature));
}

ApiResponse route(const ResultsStore& store, const std::vector<std::string>& p, const QueryParams& query)
{
    if (p.size() == 1 && p[0] == "reviews")
        return ok(page_of(store.documents, parse_page(query), review_row));
    if (p.size() == 2 && p[0] == "reviews") {
        reject_query(query);
        return ok(review_detail(store, require_document(store, p[1])));
    }
    if (p.size() == 3 && p[0] == "reviews" && p[2] == "summary") {
        reject_query(query);
        return ok(review_summary(store, p[1]));
    }
    if (p.size() == 3 && p[0] == "reviews" && p[2] == "components") {
        const auto page = parse_page(query);
        require_document(store, p[1]);
        const auto comps = document_components(store, p[1]);
        return ok(page_of(comps, page, [&](const InformationComponent* c) { return component_row(store, *c); }));
    }
    if (p.size() == 1 && p[0] == "features") {
        return ok(page_of(list_features(store), parse_page(query), [](const FeatureMention& f) {
            return json{{"feature", f.feature}, {"total_mentions", f.mentions}};
        }));
    }
    if (p.size() == 3 && p[0] == "features" && p[2] == "summary") {
        reject_query(query);
        return ok(feature_summary(store, p[1]));
    }
    if (p.size() == 1 && p[0] == "export") {
        // The full export array unless a page is asked for explicitly.
        auto objects = export_components(store);
        if (!query.empty()) {
            const auto page = parse_page(query);
            const auto first = std::min(page.offset, objects.size());
            const auto last = std::min(first + page.limit, objects.size());
            objects = {objects.begin() + static_cast<std::ptrdiff_t>(first),
                       objects.begin() + static_cast<std::ptrdiff_t>(last)};
        }
        return {200, render_export(objects)};
    }
    throw NotFoundError("no such endpoint");
}

}  // namespace

std::string error_body(int status, std::string_view code, std::string_view message)
{
    return json{{"error", {{"status", status}, {"code", code}, {"message", message}}}}.dump();
}

ApiResponse handle_get(const ResultsStore& store, std::string_view path, const QueryParams& query)
{
    try {
        return route(store, split_path(path), query);
    } catch (const NotFoundError& e) {
        return {404, error_body(404, "not_found", e.what())};
    } catch (const BadRequest& e) {
        return {400, error_body(400, "bad_request", e.what())};
    } catch (const std::exception& e) {
        return {500, error_body(500, "internal", e.what())};
    }
}

SnapshotHolder::SnapshotHolder(std::shared_ptr<const ResultsStore> initial) : snapshot_(std::move(initial)) {}

std::shared_ptr<const ResultsStore> SnapshotHolder::current() const
{
    std::lock_guard lock(mutex_);
    return snapshot_;
}

void SnapshotHolder::swap(std::shared_ptr<const ResultsStore> next)
{
    std::lock_guard lock(mutex_);
    snapshot_ = std::move(next);
}

bool SnapshotHolder::reload_if_changed(const std::filesystem::path& dir)
{
    const auto served = current();
    try {
        std::ifstream in(dir / kManifestName, std::ios::binary);
        if (!in) return false;
        const auto manifest = json::parse(in);
        if (served && manifest.value("snapshot", std::string{}) == served->snapshot_id) return false;
        swap(std::make_shared<const ResultsStore>(load_store(dir)));
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

struct ApiServer::Impl {
    httplib::Server server;
};

ApiServer::ApiServer(SnapshotHolder& snapshots) : impl_(std::make_unique<Impl>())
{
    impl_->server.Get(R"(/.*)", [&snapshots](const httplib::Request& req, httplib::Response& res) {
        const auto snapshot = snapshots.current();
        const auto r = handle_get(*snapshot, req.path, req.params);
        res.status = r.status;
        res.set_content(r.body, "application/json");
        res.set_header("X-Snapshot-Id", snapshot->snapshot_id);
        res.set_header("Access-Control-Allow-Origin", "*");
    });
}

ApiServer::~ApiServer() { stop(); }

bool ApiServer::bind(const std::string& host, int port)
{
    if (port == 0) {
        port_ = impl_->server.bind_to_any_port(host);
        return port_ > 0;
    }
    if (!impl_->server.bind_to_port(host, port)) return false;
    port_ = port;
    return true;
}

void ApiServer::listen_after_bind() { impl_->server.listen_after_bind(); }

void ApiServer::stop()
{
    if (impl_) impl_->server.stop();
}

}  // namespace reviewforge
