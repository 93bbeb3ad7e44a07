#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <optional>
#include <string>
#include <tuple>

#include <nlohmann/json.hpp>

#include "reviewforge/extraction.hpp"
#include "reviewforge/text.hpp"

namespace fixtures {

inline std::filesystem::path dir() { return RF_FIXTURE_DIR; }
inline std::filesystem::path path(const std::string& name) { return dir() / name; }

inline std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline reviewforge::ReviewDocument analyzed(const std::string& id, const std::string& body)
{
    reviewforge::ReviewDocument d;
    d.id = id;
    d.body = body;
    reviewforge::analyze_document(d, reviewforge::LexiconTagger{});
    return d;
}

/// Fresh scratch directory under the system temp dir, removed first.
inline std::filesystem::path scratch(const std::string& name)
{
    auto p = std::filesystem::temp_directory_path() / ("reviewforge-test-" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

struct ExpectedTriplet {
    std::string document;
    std::size_t sentence = 0;
    std::string feature;
    std::optional<std::string> modifier;
    std::string opinion;
    std::string rule;
    std::optional<std::size_t> antecedent;
    bool negated = false;

    friend bool operator<(const ExpectedTriplet& a, const ExpectedTriplet& b)
    {
        return std::tie(a.document, a.sentence, a.feature, a.opinion) <
               std::tie(b.document, b.sentence, b.feature, b.opinion);
    }
    friend bool operator==(const ExpectedTriplet&, const ExpectedTriplet&) = default;
};

struct AnnotatedCorpus {
    std::vector<reviewforge::ReviewDocument> documents;
    std::vector<ExpectedTriplet> expected;
    std::size_t sentence_count = 0;
};

inline AnnotatedCorpus annotated_extraction_corpus()
{
    const auto j = nlohmann::json::parse(slurp(path("extraction_annotated.json")));
    AnnotatedCorpus c;
    for (const auto& d : j.at("documents")) {
        c.documents.push_back(analyzed(d.at("id"), d.at("body")));
        c.sentence_count += c.documents.back().sentences.size();
    }
    for (const auto& e : j.at("expected")) {
        ExpectedTriplet t;
        t.document = e.at("document");
        t.sentence = e.at("sentence");
        t.feature = e.at("feature");
        if (!e.at("modifier").is_null()) t.modifier = e.at("modifier").get<std::string>();
        t.opinion = e.at("opinion");
        t.rule = e.at("rule");
        if (e.contains("antecedent")) t.antecedent = e.at("antecedent").get<std::size_t>();
        t.negated = e.value("negated", false);
        c.expected.push_back(std::move(t));
    }
    return c;
}

inline ExpectedTriplet as_triplet(const reviewforge::InformationComponent& c)
{
    return {c.document_id, c.sentence_index, c.feature, c.modifier, c.opinion, c.rule_id,
            c.antecedent_sentence_index, c.negated};
}

}  // namespace fixtures
