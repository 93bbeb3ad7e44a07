#include "reviewforge/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace reviewforge {

namespace detail {
std::unordered_map<std::string, Tag> builtin_lexicon();
}

namespace {

using nlohmann::json;

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_word_char(char c)
{
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) != 0 || u >= 0x80;
}

// ---------------------------------------------------------------------------
// Ingestion

bool valid_date(const std::string& s)
{
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9})
        if (!is_digit(s[i])) return false;
    int month = std::stoi(s.substr(5, 2));
    int day = std::stoi(s.substr(8, 2));
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

std::string where(const std::filesystem::path& path, std::size_t line)
{
    return path.string() + ":" + std::to_string(line) + ": ";
}

// Raw field values, already converted to text; absent keys are missing.
using RawRecord = std::unordered_map<std::string, std::string>;

ReviewDocument make_document(const RawRecord& rec, const std::filesystem::path& path, std::size_t line)
{
    auto field = [&](const char* name) -> std::optional<std::string> {
        auto it = rec.find(name);
        if (it == rec.end() || it->second.empty()) return std::nullopt;
        return it->second;
    };

    ReviewDocument doc;
    auto id = field("id");
    if (!id) throw InputError(where(path, line) + "malformed record: missing 'id'");
    auto body_it = rec.find("body");
    if (body_it == rec.end()) throw InputError(where(path, line) + "malformed record: missing 'body'");
    doc.id = *id;
    doc.body = body_it->second;
    doc.source = field("source").value_or("");
    doc.product_domain = field("domain").value_or("");
    doc.author = field("author").value_or("");
    doc.title = field("title");
    if (auto date = field("date")) {
        if (!valid_date(*date))
            throw InputError(where(path, line) + "malformed record: date '" + *date + "' is not YYYY-MM-DD");
        doc.posted_on = *date;
    }
    auto stars = field("stars");
    if (!stars) stars = field("star");
    if (stars) {
        int value = 0;
        try {
            std::size_t used = 0;
            value = std::stoi(*stars, &used);
            if (used != stars->size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw InputError(where(path, line) + "malformed record: stars '" + *stars + "' is not an integer");
        }
        if (value < 1 || value > 5)
            throw InputError(where(path, line) + "malformed record: stars must be in 1..5, got " + *stars);
        doc.star_rating = value;
    }
    return doc;
}

std::string json_scalar_text(const json& value)
{
    if (value.is_string()) return value.get<std::string>();
    if (value.is_number_integer()) return std::to_string(value.get<long long>());
    if (value.is_null()) return {};
    return value.dump();
}

std::vector<std::pair<RawRecord, std::size_t>> read_jsonl(std::istream& in, const std::filesystem::path& path)
{
    std::vector<std::pair<RawRecord, std::size_t>> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (std::all_of(line.begin(), line.end(), is_space)) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw InputError(where(path, lineno) + "malformed record: " + e.what());
        }
        if (!obj.is_object()) throw InputError(where(path, lineno) + "malformed record: expected an object");
        RawRecord rec;
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            if (it.value().is_number_float() && it.key() != "stars" && it.key() != "star")
                throw InputError(where(path, lineno) + "malformed record: field '" + it.key() + "' must be text");
            if (it.value().is_number_float()) {
                double v = it.value().get<double>();
                rec[it.key()] = (v == static_cast<int>(v)) ? std::to_string(static_cast<int>(v)) : it.value().dump();
            } else {
                rec[it.key()] = json_scalar_text(it.value());
            }
        }
        out.emplace_back(std::move(rec), lineno);
    }
    return out;
}

// RFC 4180 style: quoted fields may contain separators, doubled quotes and newlines.
std::vector<std::pair<RawRecord, std::size_t>> read_csv(std::istream& in, const std::filesystem::path& path)
{
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<std::pair<std::vector<std::string>, std::size_t>> rows;
    std::vector<std::string> row;
    std::string cell;
    bool quoted = false;
    bool cell_started = false;
    std::size_t line = 1;
    std::size_t row_line = 1;

    auto end_cell = [&] {
        row.push_back(std::move(cell));
        cell.clear();
        cell_started = false;
    };
    auto end_row = [&] {
        end_cell();
        bool blank = row.size() == 1 && row[0].empty();
        if (!blank) rows.emplace_back(std::move(row), row_line);
        row.clear();
    };

    for (std::size_t i = 0; i < content.size(); ++i) {
        char c = content[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < content.size() && content[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                cell += c;
            }
            continue;
        }
        if (c == '"' && !cell_started) {
            quoted = true;
            cell_started = true;
        } else if (c == ',') {
            end_cell();
        } else if (c == '\r') {
            continue;
        } else if (c == '\n') {
            end_row();
            ++line;
            row_line = line;
        } else {
            cell += c;
            cell_started = true;
        }
    }
    if (quoted) throw InputError(where(path, row_line) + "malformed record: unterminated quoted field");
    if (cell_started || !cell.empty() || !row.empty()) end_row();

    std::vector<std::pair<RawRecord, std::size_t>> out;
    if (rows.empty()) return out;
    const auto& header = rows.front().first;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& [cells, at] = rows[r];
        if (cells.size() != header.size())
            throw InputError(where(path, at) + "malformed record: expected " + std::to_string(header.size()) +
                             " fields, got " + std::to_string(cells.size()));
        RawRecord rec;
        for (std::size_t i = 0; i < cells.size(); ++i) rec[header[i]] = cells[i];
        out.emplace_back(std::move(rec), at);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sentence splitting

const std::unordered_set<std::string> kAbbreviations = {
    "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "vs", "etc", "e.g", "i.e", "inc", "ltd", "co",
    "approx", "dept", "fig", "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep", "sept", "oct", "nov", "dec"};

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }
bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }

// `dot` indexes a '.' that is followed by whitespace.
bool abbreviation_before(std::string_view body, std::size_t dot)
{
    std::size_t start = dot;
    while (start > 0 && (std::isalpha(static_cast<unsigned char>(body[start - 1])) || body[start - 1] == '.'))
        --start;
    std::string word = to_lower(body.substr(start, dot - start));
    if (word.empty()) return false;
    if (word.size() == 1 && is_upper(body[start])) return true;  // initial
    return kAbbreviations.count(word) > 0;
}

// ---------------------------------------------------------------------------
// Tokenization

bool is_clitic_start(std::string_view text, std::size_t i, std::size_t word_end, std::size_t& clitic_len)
{
    // n't
    if (i + 3 <= word_end && (text[i] == 'n' || text[i] == 'N') && text[i + 1] == '\'' &&
        (text[i + 2] == 't' || text[i + 2] == 'T') && i + 3 == word_end) {
        clitic_len = 3;
        return true;
    }
    if (text[i] == '\'' && i + 1 < word_end) {
        std::string rest = to_lower(text.substr(i + 1, word_end - i - 1));
        if (rest == "s" || rest == "re" || rest == "ve" || rest == "m" || rest == "d" || rest == "ll") {
            clitic_len = word_end - i;
            return true;
        }
    }
    return false;
}

}  // namespace

InputFormat input_format_from_string(std::string_view text)
{
    if (text == "jsonl") return InputFormat::jsonl;
    if (text == "csv") return InputFormat::csv;
    throw InputError("unknown input format '" + std::string(text) + "' (expected jsonl or csv)");
}

std::vector<ReviewDocument> ingest_reviews(const std::filesystem::path& path, InputFormat format)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path.string() + "'");
    auto records = format == InputFormat::jsonl ? read_jsonl(in, path) : read_csv(in, path);

    std::vector<ReviewDocument> docs;
    std::unordered_map<std::string, std::size_t> seen;
    for (const auto& [rec, line] : records) {
        auto doc = make_document(rec, path, line);
        auto [it, inserted] = seen.emplace(doc.id, line);
        if (!inserted)
            throw InputError(where(path, line) + "duplicate id '" + doc.id + "' (first seen on line " +
                             std::to_string(it->second) + ")");
        docs.push_back(std::move(doc));
    }
    return docs;
}

std::vector<Span> split_sentences(std::string_view body)
{
    std::vector<Span> spans;
    std::size_t i = 0;
    const std::size_t n = body.size();
    auto skip_space = [&](std::size_t p) {
        while (p < n && is_space(body[p])) ++p;
        return p;
    };
    std::size_t start = skip_space(0);
    i = start;
    while (i < n) {
        if (!is_terminator(body[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && is_terminator(body[j])) ++j;
        while (j < n && is_closer(body[j])) ++j;
        bool boundary = false;
        if (j >= n) {
            boundary = true;
        } else if (is_space(body[j])) {
            std::size_t next = skip_space(j);
            bool single_dot = (j - i == 1 || is_closer(body[i + 1])) && body[i] == '.';
            if (next >= n) {
                boundary = true;
            } else if (is_upper(body[next]) && !(single_dot && abbreviation_before(body, i))) {
                boundary = true;
            }
        }
        if (boundary) {
            spans.push_back({start, j});
            start = skip_space(j);
            i = start;
        } else {
            i = j;
        }
    }
    if (start < n) {
        std::size_t end = n;
        while (end > start && is_space(body[end - 1])) --end;
        if (end > start) spans.push_back({start, end});
    }
    return spans;
}

std::vector<Token> tokenize(std::string_view text, std::size_t offset)
{
    std::vector<Token> tokens;
    auto emit = [&](std::size_t b, std::size_t e) {
        Token t;
        t.surface = std::string(text.substr(b, e - b));
        t.normalized = to_lower(t.surface);
        t.span = {offset + b, offset + e};
        tokens.push_back(std::move(t));
    };

    const std::size_t n = text.size();
    std::size_t i = 0;
    while (i < n) {
        if (is_space(text[i])) {
            ++i;
            continue;
        }
        if (!is_word_char(text[i]) && text[i] != '\'') {
            emit(i, i + 1);
            ++i;
            continue;
        }
        // Word: alphanumerics, inner apostrophes, and '.'/',' between digits.
        std::size_t b = i;
        std::size_t e = i;
        while (e < n) {
            char c = text[e];
            if (is_word_char(c)) {
                ++e;
            } else if ((c == '.' || c == ',') && e > b && is_digit(text[e - 1]) && e + 1 < n && is_digit(text[e + 1])) {
                ++e;
            } else if (c == '\'' && e > b && e + 1 < n && std::isalpha(static_cast<unsigned char>(text[e + 1]))) {
                ++e;
            } else {
                break;
            }
        }
        if (e == b) {  // lone apostrophe
            emit(i, i + 1);
            ++i;
            continue;
        }
        // Split off a trailing clitic (n't, 's, 're, ...).
        std::size_t split = e;
        for (std::size_t k = b + 1; k < e; ++k) {
            std::size_t len = 0;
            if (is_clitic_start(text, k, e, len)) {
                split = k;
                break;
            }
        }
        emit(b, split);
        if (split < e) emit(split, e);
        i = e;
    }
    return tokens;
}

LexiconTagger::LexiconTagger() : lexicon_(detail::builtin_lexicon()) {}

bool LexiconTagger::in_lexicon(std::string_view word) const { return lexicon_.count(std::string(word)) > 0; }

Tag LexiconTagger::guess(const std::vector<Token>& tokens, std::size_t i) const
{
    const Token& tok = tokens[i];
    const std::string& w = tok.normalized;
    auto ends_with = [&](std::string_view suffix) {
        return w.size() >= suffix.size() && std::string_view(w).substr(w.size() - suffix.size()) == suffix;
    };

    bool has_alpha = false;
    bool has_digit = false;
    for (char c : w) {
        if (std::isalpha(static_cast<unsigned char>(c)) || static_cast<unsigned char>(c) >= 0x80) has_alpha = true;
        if (is_digit(c)) has_digit = true;
    }
    if (has_digit && !has_alpha) return Tag::CD;
    if (!has_alpha) return Tag::OTHER;

    Tag prev = i > 0 ? tokens[i - 1].pos : Tag::OTHER;
    if (w.size() > 3 && ends_with("ly")) return Tag::RB;
    if (w.size() > 4 && ends_with("est")) return Tag::JJS;
    if (w.size() > 3 && ends_with("er") && (is_adverb(prev) || prev == Tag::VB)) return Tag::JJR;
    for (std::string_view suffix : {"ful", "ous", "able", "ible", "ive", "less", "ish"}) {
        if (w.size() > suffix.size() + 2 && ends_with(suffix)) return Tag::JJ;
    }
    bool plural = w.size() > 3 && ends_with("s") && !ends_with("ss") && !ends_with("us") && !ends_with("is");
    if (i > 0 && is_upper(tok.surface[0])) return plural ? Tag::NNS : Tag::NNP;
    return plural ? Tag::NNS : Tag::NN;
}

void LexiconTagger::tag(std::vector<Token>& tokens) const
{
    // Left to right so suffix rules can consult the previous tag.
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        auto it = lexicon_.find(tokens[i].normalized);
        tokens[i].pos = it != lexicon_.end() ? it->second : guess(tokens, i);
    }
}

void pos_tag(std::vector<Token>& tokens)
{
    static const LexiconTagger tagger;
    tagger.tag(tokens);
}

void analyze_document(ReviewDocument& doc, const Tagger& tagger)
{
    doc.sentences.clear();
    auto spans = split_sentences(doc.body);
    for (std::size_t i = 0; i < spans.size(); ++i) {
        Sentence s;
        s.index = i;
        s.span = spans[i];
        s.tokens = tokenize(doc.text(spans[i]), spans[i].begin);
        tagger.tag(s.tokens);
        doc.sentences.push_back(std::move(s));
    }
}

void analyze_pretagged(ReviewDocument& doc)
{
    std::istringstream lines(doc.body);
    std::string line;
    std::string body;
    std::vector<Sentence> sentences;
    while (std::getline(lines, line)) {
        std::istringstream items(line);
        std::string item;
        Sentence s;
        while (items >> item) {
            auto slash = item.rfind('/');
            if (slash == std::string::npos || slash == 0 || slash + 1 == item.size())
                throw InputError("document '" + doc.id + "': pre-tagged item '" + item + "' is not surface/TAG");
            if (!s.tokens.empty()) body += ' ';
            else if (!body.empty()) body += ' ';
            Token t;
            t.surface = item.substr(0, slash);
            t.normalized = to_lower(t.surface);
            t.pos = tag_from_string(item.substr(slash + 1));
            t.span = {body.size(), body.size() + t.surface.size()};
            body += t.surface;
            s.tokens.push_back(std::move(t));
        }
        if (s.tokens.empty()) continue;
        s.index = sentences.size();
        s.span = {s.tokens.front().span.begin, s.tokens.back().span.end};
        sentences.push_back(std::move(s));
    }
    doc.body = std::move(body);
    doc.sentences = std::move(sentences);
}

}  // namespace reviewforge
