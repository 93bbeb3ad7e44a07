#include <doctest.h>

#include <fstream>

#include "fixtures.hpp"
#include "reviewforge/text.hpp"

using namespace reviewforge;

namespace {

std::vector<std::string> surfaces(const std::vector<Token>& toks)
{
    std::vector<std::string> out;
    for (const auto& t : toks) out.push_back(t.surface);
    return out;
}

std::vector<Tag> tags_of(std::vector<std::string> words)
{
    std::vector<Token> toks;
    for (auto& w : words) toks.push_back({w, to_lower(w), Tag::OTHER, {}});
    pos_tag(toks);
    std::vector<Tag> out;
    for (const auto& t : toks) out.push_back(t.pos);
    return out;
}

std::filesystem::path write_file(const std::string& name, const std::string& content)
{
    auto p = fixtures::scratch("text") / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
}

}  // namespace

TEST_CASE("split_sentences boundaries")
{
    CHECK(split_sentences("Great phone. It died.").size() == 2);
    CHECK(split_sentences("").empty());
    CHECK(split_sentences("   ").empty());
    CHECK(split_sentences("I paid $5.99 today.").size() == 1);
    CHECK(split_sentences("Dr. Smith liked it. Mr. Jones did not.").size() == 2);
    CHECK(split_sentences("Wow!! Really? yes it is.").size() == 2);
    CHECK(split_sentences("No terminator at the end").size() == 1);

    const std::string body = "  The camera is great.  It is very cheap. ";
    const auto spans = split_sentences(body);
    REQUIRE(spans.size() == 2);
    CHECK(body.substr(spans[0].begin, spans[0].length()) == "The camera is great.");
    CHECK(body.substr(spans[1].begin, spans[1].length()) == "It is very cheap.");
}

TEST_CASE("split_sentences covers all non-whitespace content with ordered disjoint spans")
{
    const std::string body = "First one. Second (quoted) one! \"Third?\" Fourth e.g. here. Fifth";
    const auto spans = split_sentences(body);
    std::vector<bool> covered(body.size(), false);
    for (std::size_t i = 0; i < spans.size(); ++i) {
        CHECK(spans[i].begin < spans[i].end);
        CHECK(spans[i].end <= body.size());
        if (i > 0) CHECK(spans[i - 1].end <= spans[i].begin);
        for (auto k = spans[i].begin; k < spans[i].end; ++k) covered[k] = true;
    }
    for (std::size_t k = 0; k < body.size(); ++k)
        if (!std::isspace(static_cast<unsigned char>(body[k]))) CHECK(covered[k]);
}

TEST_CASE("tokenize examples")
{
    CHECK(surfaces(tokenize("very bad")) == std::vector<std::string>{"very", "bad"});
    CHECK(surfaces(tokenize("battery-life")) == std::vector<std::string>{"battery", "-", "life"});
    const auto apps = tokenize("Ipod Apps");
    REQUIRE(apps.size() == 2);
    CHECK(apps[0].normalized == "ipod");
    CHECK(apps[1].normalized == "apps");
    CHECK(surfaces(tokenize("isn't")) == std::vector<std::string>{"is", "n't"});
    CHECK(surfaces(tokenize("It's $5.99, ok.")) == std::vector<std::string>{"It", "'s", "$", "5.99", ",", "ok", "."});
}

TEST_CASE("tokenize spans reproduce the text with original gaps")
{
    const std::string text = "  The  screen,isn't   \"bright\" (at all)...  ";
    const auto toks = tokenize(text, 100);
    std::string rebuilt;
    std::size_t pos = 100;
    for (const auto& t : toks) {
        CHECK(t.span.begin >= pos);
        rebuilt += text.substr(pos - 100, t.span.begin - pos);
        rebuilt += t.surface;
        CHECK(text.substr(t.span.begin - 100, t.span.length()) == t.surface);
        CHECK(t.normalized == to_lower(t.surface));
        pos = t.span.end;
    }
    rebuilt += text.substr(pos - 100);
    CHECK(rebuilt == text);
}

TEST_CASE("pos_tag examples")
{
    CHECK(tags_of({"the", "camera", "is", "great"}) == std::vector<Tag>{Tag::DT, Tag::NN, Tag::VB, Tag::JJ});
    CHECK(tags_of({"it"}) == std::vector<Tag>{Tag::PRP});
    CHECK(tags_of({"quickly"}) == std::vector<Tag>{Tag::RB});
    CHECK(tags_of({"the", "speaker"}) == std::vector<Tag>{Tag::DT, Tag::NN});
    CHECK(tags_of({"the", "cheapest"})[1] == Tag::JJS);
    CHECK(tags_of({"is", "sleeker"})[1] == Tag::JJR);
    CHECK(tags_of({"3"}) == std::vector<Tag>{Tag::CD});
    CHECK(tags_of({"."}) == std::vector<Tag>{Tag::OTHER});
    CHECK(tags_of({"the", "lenses"})[1] == Tag::NNS);
}

TEST_CASE("lexicon coverage: alphabetic lexicon words never tag OTHER")
{
    const LexiconTagger tagger;
    CHECK(tagger.lexicon_size() >= 250);
    for (const char* w : {"the", "is", "very", "great", "bad", "it", "and", "with", "not", "camera", "three"}) {
        CHECK(tagger.in_lexicon(w));
        std::vector<Token> t{{w, w, Tag::OTHER, {}}};
        tagger.tag(t);
        CHECK(t[0].pos != Tag::OTHER);
    }
}

TEST_CASE("tagging is deterministic")
{
    auto a = fixtures::analyzed("a", "The zoom is quite slow. Battery life is extremely short.");
    auto b = fixtures::analyzed("a", "The zoom is quite slow. Battery life is extremely short.");
    REQUIRE(a.sentences.size() == b.sentences.size());
    for (std::size_t i = 0; i < a.sentences.size(); ++i)
        for (std::size_t k = 0; k < a.sentences[i].tokens.size(); ++k) {
            CHECK(a.sentences[i].tokens[k].pos == b.sentences[i].tokens[k].pos);
            CHECK(a.sentences[i].tokens[k].span == b.sentences[i].tokens[k].span);
        }
}

TEST_CASE("tag_from_string maps Penn tags into the closed set")
{
    CHECK(tag_from_string("VBZ") == Tag::VB);
    CHECK(tag_from_string("VBD") == Tag::VB);
    CHECK(tag_from_string("NNPS") == Tag::NNP);
    CHECK(tag_from_string("PRP$") == Tag::PRP);
    CHECK(tag_from_string("JJS") == Tag::JJS);
    CHECK(tag_from_string("XYZ") == Tag::OTHER);
}

TEST_CASE("ingest jsonl single record")
{
    const auto p = write_file("one.jsonl", R"({"id":"r1","body":"The camera is great.","star":5})" "\n");
    auto docs = ingest_reviews(p, InputFormat::jsonl);
    REQUIRE(docs.size() == 1);
    analyze_document(docs[0], LexiconTagger{});
    CHECK(docs[0].id == "r1");
    CHECK(docs[0].sentences.size() == 1);
    CHECK(docs[0].star_rating == 5);
    CHECK_FALSE(docs[0].title.has_value());
    CHECK_FALSE(docs[0].posted_on.has_value());
}

TEST_CASE("ingest edge cases")
{
    CHECK(ingest_reviews(write_file("empty.jsonl", ""), InputFormat::jsonl).empty());

    const auto dup = write_file("dup.jsonl", R"({"id":"r1","body":"a"})" "\n" R"({"id":"r1","body":"b"})" "\n");
    try {
        ingest_reviews(dup, InputFormat::jsonl);
        FAIL("duplicate id accepted");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("r1") != std::string::npos);
        CHECK(std::string(e.what()).find(":2:") != std::string::npos);
    }

    CHECK_THROWS_AS(ingest_reviews(write_file("bad.jsonl", "{not json}\n"), InputFormat::jsonl), InputError);
    CHECK_THROWS_AS(ingest_reviews(write_file("nobody.jsonl", R"({"id":"r1"})" "\n"), InputFormat::jsonl),
                    InputError);
    CHECK_THROWS_AS(ingest_reviews(write_file("stars.jsonl", R"({"id":"r1","body":"x","stars":6})" "\n"),
                                   InputFormat::jsonl),
                    InputError);
    CHECK_THROWS_AS(ingest_reviews(write_file("date.jsonl", R"({"id":"r1","body":"x","date":"2012-13-01"})" "\n"),
                                   InputFormat::jsonl),
                    InputError);
    CHECK_THROWS_AS(ingest_reviews("/nonexistent/file.jsonl", InputFormat::jsonl), InputError);
}

TEST_CASE("jsonl and csv fixtures ingest identically")
{
    const auto a = ingest_reviews(fixtures::path("reviews.jsonl"), InputFormat::jsonl);
    const auto b = ingest_reviews(fixtures::path("reviews.csv"), InputFormat::csv);
    REQUIRE(a.size() == 6);
    REQUIRE(b.size() == 6);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].id == b[i].id);
        CHECK(a[i].body == b[i].body);
        CHECK(a[i].product_domain == b[i].product_domain);
        CHECK(a[i].star_rating == b[i].star_rating);
        CHECK(a[i].title == b[i].title);
        CHECK(a[i].posted_on == b[i].posted_on);
    }
}

TEST_CASE("csv quoting")
{
    const auto p = write_file("q.csv", "id,body,stars\nr1,\"Great, \"\"really\"\" great.\nSecond line.\",4\n");
    const auto docs = ingest_reviews(p, InputFormat::csv);
    REQUIRE(docs.size() == 1);
    CHECK(docs[0].body == "Great, \"really\" great.\nSecond line.");
    CHECK(docs[0].star_rating == 4);
}

TEST_CASE("document invariants: spans disjoint, ordered, in bounds")
{
    for (const auto& d : ingest_reviews(fixtures::path("reviews.jsonl"), InputFormat::jsonl)) {
        auto doc = d;
        analyze_document(doc, LexiconTagger{});
        std::size_t prev = 0;
        for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
            const auto& s = doc.sentences[i];
            CHECK(s.index == i);
            CHECK(s.span.begin >= prev);
            CHECK(s.span.end <= doc.body.size());
            prev = s.span.end;
            std::size_t tprev = s.span.begin;
            for (const auto& t : s.tokens) {
                CHECK(t.span.begin >= tprev);
                CHECK(s.span.contains(t.span));
                tprev = t.span.end;
            }
        }
    }
}

TEST_CASE("pretagged input keeps tags verbatim")
{
    ReviewDocument d;
    d.id = "p";
    d.body = "The/DT camera/NN is/VBZ great/JJ ./.\nIt/PRP is/VBZ cheap/JJ ./.";
    analyze_pretagged(d);
    CHECK(d.body == "The camera is great . It is cheap .");
    REQUIRE(d.sentences.size() == 2);
    CHECK(d.sentences[0].tokens[2].pos == Tag::VB);
    CHECK(d.sentences[1].tokens[0].pos == Tag::PRP);
    CHECK(d.text(d.sentences[1].tokens[2].span) == "cheap");
}
