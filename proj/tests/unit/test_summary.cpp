#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "export_schema.hpp"
#include "pipeline_fixture.hpp"
#include "reviewforge/summary.hpp"

using namespace reviewforge;

namespace {

const auto P = Orientation::positive;
const auto N = Orientation::negative;
const auto U = Orientation::neutral;

InformationComponent comp(const std::string& doc, std::size_t sentence, const std::string& f, const std::string& o,
                          Orientation orientation, Span fs = {0, 1}, Span os = {2, 3})
{
    InformationComponent c;
    c.document_id = doc;
    c.sentence_index = sentence;
    c.feature = f;
    c.opinion = o;
    c.orientation = orientation;
    c.feature_span = fs;
    c.opinion_span = os;
    return c;
}

ResultsStore small_store()
{
    ResultsStore s;
    for (const char* id : {"r1", "r2", "r3"}) {
        ReviewDocument d;
        d.id = id;
        d.product_domain = "camera";
        s.documents.push_back(d);
    }
    s.components = {comp("r2", 1, "camera", "great", P), comp("r1", 0, "camera", "great", P, {4, 10}, {14, 19}),
                    comp("r1", 2, "camera", "blurry", N), comp("r2", 0, "camera", "fine", P),
                    comp("r1", 1, "lens", "okay", U)};
    WordScore great{"great", {}, {1.0, 2.0, 850.0, 3.0}, false, 0.0, false, P};
    WordScore blurry{"blurry", {}, {-1.0, -2.0, -240.0, -3.0}, false, 0.0, false, N};
    WordScore fine{"fine", {}, {0.5, 1.0, 12.0, 1.0}, false, 0.0, false, P};
    WordScore okay{"okay", {}, {0.0, 0.0, 0.0, 0.0}, false, 0.0, false, U};
    for (auto* w : {&great, &blurry, &fine, &okay}) s.words.emplace(w->word, *w);
    s.retained_pairs = {{"camera", "great", 0.9, 1.0, "camera", 5}, {"camera", "blurry", 0.4, 0.44, "camera", 5},
                        {"camera", "fine", 0.4, 0.44, "camera", 5}, {"lens", "okay", 0.2, 0.22, "camera", 5}};
    return s;
}

}  // namespace

TEST_CASE("review summary counts")
{
    const auto s = small_store();
    const auto r1 = aggregate_review_summary(s, "r1");
    CHECK(r1.positive_count == 1);
    CHECK(r1.negative_count == 1);
    CHECK(r1.neutral_count == 1);
    const auto r2 = aggregate_review_summary(s, "r2");
    CHECK(r2.positive_count == 2);
    CHECK(r2.negative_count == 0);
    CHECK(aggregate_review_summary(s, "r3").total() == 0);
    CHECK_THROWS_AS(aggregate_review_summary(s, "nope"), NotFoundError);
}

TEST_CASE("summaries are invariant under component reordering")
{
    auto s = small_store();
    const auto before = aggregate_review_summary(s, "r1");
    const auto feature_before = aggregate_feature_summary(s, "camera");
    std::mt19937_64 rng(3);
    for (int i = 0; i < 5; ++i) {
        std::shuffle(s.components.begin(), s.components.end(), rng);
        CHECK(aggregate_review_summary(s, "r1") == before);
        const auto f = aggregate_feature_summary(s, "camera");
        CHECK(f.positive_count == feature_before.positive_count);
        CHECK(f.percentages == feature_before.percentages);
        CHECK(f.snippets == feature_before.snippets);
    }
}

TEST_CASE("feature summary percentages, slices and snippets")
{
    const auto s = small_store();
    const auto f = aggregate_feature_summary(s, "camera");
    CHECK(f.positive_count == 3);
    CHECK(f.negative_count == 1);
    CHECK(f.neutral_count == 0);
    REQUIRE(f.percentages.has_value());
    CHECK((*f.percentages)[0] == doctest::Approx(75.0));
    CHECK((*f.percentages)[1] == doctest::Approx(25.0));
    CHECK((*f.percentages)[2] == doctest::Approx(0.0));

    REQUIRE(f.score_slices.size() == 3);
    CHECK(f.score_slices[0].opinion == "great");
    CHECK(f.score_slices[0].magnitude == 850.0);
    CHECK(f.score_slices[1].opinion == "blurry");
    CHECK(f.score_slices[1].magnitude == 240.0);
    CHECK(f.score_slices[0].magnitude / f.score_slices[1].magnitude == doctest::Approx(850.0 / 240.0));
    CHECK(f.score_slices[2].opinion == "fine");

    std::vector<std::pair<std::string, std::size_t>> order;
    for (const auto& sn : f.snippets) order.emplace_back(sn.document_id, sn.sentence_index);
    CHECK(order == std::vector<std::pair<std::string, std::size_t>>{{"r1", 0}, {"r1", 2}, {"r2", 0}, {"r2", 1}});

    const auto lens = aggregate_feature_summary(s, "lens");
    CHECK((*lens.percentages)[2] == doctest::Approx(100.0));
    REQUIRE(lens.score_slices.size() == 1);
    CHECK(lens.score_slices[0].magnitude == 0.0);
    CHECK_THROWS_AS(aggregate_feature_summary(s, "zoom"), NotFoundError);
}

TEST_CASE("list_features orders by mentions")
{
    const auto f = list_features(small_store());
    REQUIRE(f.size() == 2);
    CHECK(f[0].feature == "camera");
    CHECK(f[0].mentions == 4);
    CHECK(f[1].mentions == 1);
}

TEST_CASE("highlights")
{
    const auto s = small_store();
    const auto h = snippet_highlights(s, "r1");
    REQUIRE(h.size() == 6);
    CHECK(h[0].role == HighlightRole::feature);
    CHECK(h[1].role == HighlightRole::opinion);
    CHECK(h[0].span == Span{4, 10});
    CHECK(h[1].span == Span{14, 19});
    CHECK(h[0].sentence_index == 0);
    CHECK(highlight_color(h[0].role) == "orange");
    CHECK(highlight_color(h[1].role) == "yellow");
    for (std::size_t i = 0; i + 1 < h.size(); i += 2) CHECK_FALSE(h[i].span.overlaps(h[i + 1].span));
    CHECK(snippet_highlights(s, "r3").empty());
    CHECK_THROWS_AS(snippet_highlights(s, "zz"), NotFoundError);
}

TEST_CASE("export object layout matches the published example byte for byte")
{
    ExportObject o;
    o.feature = "Speaker quality";
    o.modifier = "very";
    o.opinion = "bad";
    o.score_reliability_pair = 0.0108;
    o.score_opinion = {{"pmi", -0.7344}, {"mi", -109.3725}, {"chi", -850.0066}};
    o.orientation = "negative";
    auto want = fixtures::slurp(fixtures::path("export_object.json"));
    while (!want.empty() && want.back() == '\n') want.pop_back();
    CHECK(render_export_object(o) == want);
    CHECK(schema::validate_document("[" + render_export_object(o) + "]").empty());
}

TEST_CASE("number formatting")
{
    CHECK(format_number(1.0) == "1.0000");
    CHECK(format_number(-0.00001) == "0.0000");
    CHECK(format_number(-109.37254) == "-109.3725");
    CHECK(format_number(0.01084) == "0.0108");
    CHECK(format_number(0.01086) == "0.0109");
}

TEST_CASE("export ordering and round trip")
{
    const auto s = small_store();
    const auto objs = export_components(s);
    REQUIRE(objs.size() == 5);
    for (std::size_t i = 1; i < objs.size(); ++i) {
        CHECK(objs[i - 1].score_reliability_pair >= objs[i].score_reliability_pair);
        if (objs[i - 1].score_reliability_pair == objs[i].score_reliability_pair)
            CHECK(objs[i - 1].feature <= objs[i].feature);
    }
    CHECK(objs[0].opinion == "great");
    CHECK(objs[0].modifier.empty());

    const auto text = render_export(objs);
    CHECK(schema::validate_document(text).empty());
    const auto back = parse_export(text);
    REQUIRE(back.size() == objs.size());
    for (std::size_t i = 0; i < objs.size(); ++i) {
        CHECK(back[i].feature == objs[i].feature);
        CHECK(back[i].opinion == objs[i].opinion);
        CHECK(back[i].orientation == objs[i].orientation);
        CHECK(render_export_object(back[i]) == render_export_object(objs[i]));
    }
    CHECK(render_export(back) == text);
}

TEST_CASE("export with llr appends a fourth score")
{
    const auto objs = export_components(small_store(), {true});
    REQUIRE(objs[0].score_opinion.size() == 4);
    CHECK(objs[0].score_opinion[3].type == "llr");
    CHECK_FALSE(schema::validate_document(render_export(objs)).empty());
    CHECK(schema::validate_document(render_export(objs), true).empty());
}

TEST_CASE("empty export and malformed export input")
{
    CHECK(render_export({}) == "[]\n");
    CHECK(parse_export("[]").empty());
    CHECK_THROWS_AS(parse_export("{}"), InputError);
    CHECK_THROWS_AS(parse_export("[{\"feature\": 1}]"), InputError);
}

TEST_CASE("fixture store: conservation and percentage normalisation")
{
    const auto s = fixtures::fixture_store("summary");
    REQUIRE_FALSE(s.components.empty());
    std::size_t review_total = 0;
    for (const auto& r : s.review_summaries) review_total += r.total();
    std::size_t feature_total = 0;
    for (const auto& f : s.feature_summaries) {
        feature_total += f.total();
        REQUIRE(f.percentages.has_value());
        CHECK(std::abs((*f.percentages)[0] + (*f.percentages)[1] + (*f.percentages)[2] - 100.0) < 1e-6);
        for (const auto& sn : f.snippets) {
            const bool found = std::any_of(s.components.begin(), s.components.end(), [&](const InformationComponent& c) {
                return c.document_id == sn.document_id && c.sentence_index == sn.sentence_index &&
                       c.feature_span == sn.feature_span && c.opinion_span == sn.opinion_span;
            });
            CHECK(found);
        }
    }
    CHECK(review_total == s.components.size());
    CHECK(feature_total == s.components.size());
    CHECK(schema::validate_document(render_export(export_components(s))).empty());
}
