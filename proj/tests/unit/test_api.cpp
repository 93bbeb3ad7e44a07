#include <doctest.h>

#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "export_schema.hpp"
#include "pipeline_fixture.hpp"
#include "reviewforge/api.hpp"

using namespace reviewforge;
using nlohmann::json;

namespace {

const ResultsStore& store()
{
    static const ResultsStore s = fixtures::fixture_store("api");
    return s;
}

json get(const std::string& path, const QueryParams& q = {}, int status = 200)
{
    const auto r = handle_get(store(), path, q);
    CHECK(r.status == status);
    return json::parse(r.body);
}

void check_error(const json& j, int status)
{
    REQUIRE(j.contains("error"));
    CHECK(j["error"]["status"] == status);
    CHECK(j["error"]["code"].is_string());
    CHECK(j["error"]["message"].is_string());
}

void check_span(const json& s, const ReviewDocument& d)
{
    REQUIRE(s.is_array());
    REQUIRE(s.size() == 2);
    CHECK(s[0].get<std::size_t>() < s[1].get<std::size_t>());
    CHECK(s[1].get<std::size_t>() <= d.body.size());
}

}  // namespace

TEST_CASE("/reviews lists metadata with pagination")
{
    const auto j = get("/reviews");
    CHECK(j["total"] == 6);
    CHECK(j["limit"] == kDefaultPageLimit);
    CHECK(j["offset"] == 0);
    REQUIRE(j["items"].size() == 6);
    const auto& r1 = j["items"][0];
    CHECK(r1["id"] == "r1");
    CHECK(r1["domain"] == "digital camera");
    CHECK(r1["stars"] == 5);
    CHECK(r1["date"] == "2012-03-14");
    for (const char* k : {"id", "source", "domain", "author", "date", "stars", "title"}) CHECK(r1.contains(k));
    CHECK(j["items"][5]["date"].is_null());

    const auto page = get("/reviews", {{"limit", "2"}, {"offset", "3"}});
    REQUIRE(page["items"].size() == 2);
    CHECK(page["items"][0]["id"] == "r4");
    CHECK(get("/reviews", {{"offset", "10"}})["items"].empty());
}

TEST_CASE("bad query parameters are 400s")
{
    check_error(get("/reviews", {{"limit", "0"}}, 400), 400);
    check_error(get("/reviews", {{"limit", "abc"}}, 400), 400);
    check_error(get("/reviews", {{"limit", "-1"}}, 400), 400);
    check_error(get("/reviews", {{"limit", "5000"}}, 400), 400);
    check_error(get("/features", {{"sort", "x"}}, 400), 400);
    check_error(get("/reviews/r1", {{"limit", "1"}}, 400), 400);
}

TEST_CASE("/reviews/{id} carries body, sentences, highlights and components")
{
    const auto j = get("/reviews/r1");
    const auto& d = *store().find_document("r1");
    CHECK(j["body"] == d.body);
    REQUIRE(j["sentences"].size() == d.sentences.size());
    CHECK(j["sentences"][0]["text"] == "The camera is great.");
    CHECK(j["sentences"][3]["subjectivity"] == "objective");
    const auto& comps = j["components"];
    REQUIRE_FALSE(comps.empty());
    REQUIRE(j["highlights"].size() == 2 * comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const auto& f = j["highlights"][2 * i];
        const auto& o = j["highlights"][2 * i + 1];
        CHECK(f["role"] == "feature");
        CHECK(f["color"] == "orange");
        CHECK(o["role"] == "opinion");
        CHECK(o["color"] == "yellow");
        CHECK(f["span"] == comps[i]["feature_span"]);
        CHECK(o["span"] == comps[i]["opinion_span"]);
        check_span(f["span"], d);
    }
    const auto& first = comps[0];
    CHECK(first["feature"] == "camera");
    CHECK(first["opinion"] == "great");
    const auto fs = first["feature_span"];
    CHECK(d.body.substr(fs[0], fs[1].get<std::size_t>() - fs[0].get<std::size_t>()) == "camera");
}

TEST_CASE("/reviews/{id}/summary and /components")
{
    const auto s = get("/reviews/r2/summary");
    CHECK(s["document_id"] == "r2");
    const auto& want = aggregate_review_summary(store(), "r2");
    CHECK(s["positive"] == want.positive_count);
    CHECK(s["negative"] == want.negative_count);
    CHECK(s["neutral"] == want.neutral_count);

    const auto c = get("/reviews/r2/components");
    CHECK(c["total"] == want.total());
    for (const auto& row : c["items"]) {
        for (const char* k : {"feature", "modifier", "opinion", "orientation", "reliability"}) CHECK(row.contains(k));
        CHECK(row["reliability"].is_number());
        CHECK(row["scores"].contains("llr"));
    }
}

TEST_CASE("/features and /features/{name}/summary")
{
    const auto f = get("/features");
    REQUIRE_FALSE(f["items"].empty());
    std::size_t mentions = 0;
    for (const auto& row : f["items"]) mentions += row["total_mentions"].get<std::size_t>();
    CHECK(mentions == store().components.size());

    const auto s = get("/features/camera/summary");
    CHECK(s["feature"] == "camera");
    const double sum = s["percentages"]["positive"].get<double>() + s["percentages"]["negative"].get<double>() +
                       s["percentages"]["neutral"].get<double>();
    CHECK(std::abs(sum - 100.0) < 1e-6);
    CHECK(s["score_slices"].is_array());
    CHECK(s["snippets"].is_array());

    const auto multi = get("/features/speaker quality/summary");
    CHECK(multi["feature"] == "speaker quality");
}

TEST_CASE("unknown ids and paths are structured 404s")
{
    check_error(get("/reviews/nope", {}, 404), 404);
    check_error(get("/reviews/nope/summary", {}, 404), 404);
    check_error(get("/reviews/nope/components", {}, 404), 404);
    check_error(get("/features/nothing/summary", {}, 404), 404);
    check_error(get("/nowhere", {}, 404), 404);
    check_error(get("/", {}, 404), 404);
}

TEST_CASE("/export serves the export document")
{
    const auto r = handle_get(store(), "/export");
    CHECK(r.status == 200);
    CHECK(r.body == render_export(export_components(store())));
    CHECK(schema::validate_document(r.body).empty());
    const auto page = handle_get(store(), "/export", {{"limit", "1"}});
    CHECK(parse_export(page.body).size() == 1);
}

TEST_CASE("over a socket, with a snapshot swap in between")
{
    auto first = std::make_shared<const ResultsStore>(store());
    SnapshotHolder holder(first);
    ApiServer server(holder);
    REQUIRE(server.bind("127.0.0.1", 0));
    std::thread t([&] { server.listen_after_bind(); });

    httplib::Client client("127.0.0.1", server.port());
    auto res = client.Get("/reviews/r1/summary");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->get_header_value("X-Snapshot-Id") == first->snapshot_id);
    CHECK(json::parse(res->body)["document_id"] == "r1");

    res = client.Get("/features/speaker%20quality/summary");
    REQUIRE(res);
    CHECK(res->status == 200);

    res = client.Get("/reviews/missing");
    REQUIRE(res);
    CHECK(res->status == 404);
    check_error(json::parse(res->body), 404);

    res = client.Get("/reviews?limit=1&offset=1");
    REQUIRE(res);
    CHECK(json::parse(res->body)["items"][0]["id"] == "r2");

    auto next = std::make_shared<ResultsStore>(store());
    next->snapshot_id = "next";
    next->documents.resize(1);
    holder.swap(next);
    res = client.Get("/reviews");
    REQUIRE(res);
    CHECK(json::parse(res->body)["total"] == 1);
    CHECK(res->get_header_value("X-Snapshot-Id") == "next");
    CHECK(first->documents.size() == 6);

    server.stop();
    t.join();
}

TEST_CASE("reload_if_changed swaps only on a new snapshot")
{
    const auto dir = fixtures::scratch("api-reload") / "store";
    auto c = fixtures::fixture_config(dir);
    run_pipeline(c);
    SnapshotHolder holder(std::make_shared<const ResultsStore>(load_store(dir)));
    CHECK_FALSE(holder.reload_if_changed(dir));
    c.prune_threshold = 0.5;
    cmd_score(c);
    CHECK(holder.reload_if_changed(dir));
    CHECK(holder.current()->snapshot_id == load_store(dir).snapshot_id);
}
