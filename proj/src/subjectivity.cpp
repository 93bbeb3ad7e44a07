#include "reviewforge/subjectivity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "reviewforge/text.hpp"

namespace reviewforge {

namespace {

using nlohmann::json;

constexpr std::array<SubjectivityLabel, 2> kClasses = {SubjectivityLabel::subjective, SubjectivityLabel::objective};

bool is_content(const std::string& token)
{
    return std::any_of(token.begin(), token.end(), [](char c) {
        auto u = static_cast<unsigned char>(c);
        return std::isalnum(u) || u >= 0x80;
    });
}

}  // namespace

std::vector<std::string> normalized_tokens(const Sentence& sentence)
{
    std::vector<std::string> out;
    for (const auto& t : sentence.tokens)
        if (is_content(t.normalized)) out.push_back(t.normalized);
    return out;
}

double SubjectivityModel::likelihood(const std::string& word, SubjectivityLabel c) const
{
    auto it = counts_.find(word);
    if (it == counts_.end()) return unseen_likelihood(c);
    const double denom = static_cast<double>(class_tokens_[index(c)]) + alpha_ * (counts_.size() + 1.0);
    return (static_cast<double>(it->second[index(c)]) + alpha_) / denom;
}

double SubjectivityModel::unseen_likelihood(SubjectivityLabel c) const
{
    const double denom = static_cast<double>(class_tokens_[index(c)]) + alpha_ * (counts_.size() + 1.0);
    return alpha_ / denom;
}

ClassPosterior SubjectivityModel::classify(const std::vector<std::string>& tokens, double threshold) const
{
    std::array<double, 2> log_score{};
    for (auto c : kClasses) {
        double s = std::log(priors_[index(c)]);
        for (const auto& w : tokens) s += std::log(likelihood(w, c));
        log_score[index(c)] = s;
    }
    // Normalise in log space.
    const double m = std::max(log_score[0], log_score[1]);
    const double e0 = std::exp(log_score[0] - m);
    const double e1 = std::exp(log_score[1] - m);
    ClassPosterior out;
    out.subjective = e0 / (e0 + e1);
    out.objective = e1 / (e0 + e1);
    out.label = out.subjective >= threshold ? SubjectivityLabel::subjective : SubjectivityLabel::objective;
    return out;
}

std::string SubjectivityModel::to_json() const
{
    json j;
    j["alpha"] = alpha_;
    j["priors"] = {{"subjective", priors_[0]}, {"objective", priors_[1]}};
    j["class_tokens"] = {{"subjective", class_tokens_[0]}, {"objective", class_tokens_[1]}};
    j["class_sentences"] = {{"subjective", class_sentences_[0]}, {"objective", class_sentences_[1]}};
    j["unseen_likelihood"] = {{"subjective", unseen_likelihood(SubjectivityLabel::subjective)},
                              {"objective", unseen_likelihood(SubjectivityLabel::objective)}};
    json vocab = json::object();
    for (const auto& [word, counts] : counts_) {
        vocab[word] = {{"counts", {counts[0], counts[1]}},
                       {"likelihood",
                        {likelihood(word, SubjectivityLabel::subjective),
                         likelihood(word, SubjectivityLabel::objective)}}};
    }
    j["vocabulary"] = std::move(vocab);
    return j.dump(1);
}

SubjectivityModel SubjectivityModel::from_json(const std::string& text)
{
    SubjectivityModel m;
    try {
        auto j = json::parse(text);
        m.alpha_ = j.at("alpha").get<double>();
        m.priors_ = {j.at("priors").at("subjective").get<double>(), j.at("priors").at("objective").get<double>()};
        m.class_tokens_ = {j.at("class_tokens").at("subjective").get<std::uint64_t>(),
                           j.at("class_tokens").at("objective").get<std::uint64_t>()};
        m.class_sentences_ = {j.at("class_sentences").at("subjective").get<std::uint64_t>(),
                              j.at("class_sentences").at("objective").get<std::uint64_t>()};
        for (auto it = j.at("vocabulary").begin(); it != j.at("vocabulary").end(); ++it) {
            const auto& c = it.value().at("counts");
            m.counts_[it.key()] = {c.at(0).get<std::uint64_t>(), c.at(1).get<std::uint64_t>()};
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("subjectivity model: ") + e.what());
    }
    if (!(m.alpha_ > 0)) throw InputError("subjectivity model: alpha must be positive");
    return m;
}

void SubjectivityModel::save(const std::filesystem::path& path) const
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    out << to_json() << '\n';
}

SubjectivityModel SubjectivityModel::load(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

SubjectivityModel train_subjectivity(const std::vector<LabeledSentence>& training, double alpha)
{
    if (!(alpha > 0)) throw ModelError("smoothing alpha must be positive");
    SubjectivityModel m;
    m.alpha_ = alpha;
    for (const auto& s : training) {
        const auto c = SubjectivityModel::index(s.label);
        ++m.class_sentences_[c];
        for (const auto& w : s.tokens) {
            ++m.counts_[w][c];
            ++m.class_tokens_[c];
        }
    }
    if (m.class_sentences_[0] == 0 || m.class_sentences_[1] == 0)
        throw ModelError("subjectivity training needs both subjective and objective sentences");
    const double total = static_cast<double>(m.class_sentences_[0] + m.class_sentences_[1]);
    m.priors_ = {m.class_sentences_[0] / total, m.class_sentences_[1] / total};
    return m;
}

ClassPosterior classify_sentence(const SubjectivityModel& model, const std::vector<std::string>& tokens,
                                 double threshold)
{
    return model.classify(tokens, threshold);
}

CrossValidationResult cross_validate(const std::vector<LabeledSentence>& training, std::size_t k,
                                     std::uint64_t seed, double alpha)
{
    if (k < 2) throw ModelError("cross-validation needs at least 2 folds");
    std::array<std::vector<std::size_t>, 2> by_class;
    for (std::size_t i = 0; i < training.size(); ++i)
        by_class[training[i].label == SubjectivityLabel::subjective ? 0 : 1].push_back(i);
    const std::size_t smaller = std::min(by_class[0].size(), by_class[1].size());
    if (k > smaller)
        throw ModelError("fold count " + std::to_string(k) + " exceeds the smaller class size " +
                         std::to_string(smaller));

    std::mt19937_64 rng(seed);
    CrossValidationResult result;
    result.folds.assign(k, {});
    for (auto& members : by_class) {
        std::shuffle(members.begin(), members.end(), rng);
        for (std::size_t i = 0; i < members.size(); ++i) result.folds[i % k].push_back(members[i]);
    }
    for (auto& fold : result.folds) std::sort(fold.begin(), fold.end());

    std::vector<char> in_fold(training.size());
    for (const auto& fold : result.folds) {
        std::fill(in_fold.begin(), in_fold.end(), 0);
        for (auto i : fold) in_fold[i] = 1;
        std::vector<LabeledSentence> train;
        for (std::size_t i = 0; i < training.size(); ++i)
            if (!in_fold[i]) train.push_back(training[i]);
        const auto model = train_subjectivity(train, alpha);

        // confusion[truth][predicted]
        std::array<std::array<double, 2>, 2> confusion{};
        for (auto i : fold) {
            const auto predicted = model.classify(training[i].tokens).label;
            const auto truth = training[i].label;
            confusion[truth == SubjectivityLabel::subjective ? 0 : 1]
                     [predicted == SubjectivityLabel::subjective ? 0 : 1] += 1;
        }
        const double n = static_cast<double>(fold.size());
        result.accuracy += (confusion[0][0] + confusion[1][1]) / n;
        for (std::size_t c = 0; c < 2; ++c) {
            const double tp = confusion[c][c];
            const double predicted = confusion[0][c] + confusion[1][c];
            const double actual = confusion[c][0] + confusion[c][1];
            const double p = predicted > 0 ? tp / predicted : 0.0;
            const double r = actual > 0 ? tp / actual : 0.0;
            const double f = (p + r) > 0 ? 2 * p * r / (p + r) : 0.0;
            auto& m = c == 0 ? result.subjective : result.objective;
            m.precision += p;
            m.recall += r;
            m.f1 += f;
        }
    }
    const double kk = static_cast<double>(k);
    result.accuracy /= kk;
    for (auto* m : {&result.subjective, &result.objective}) {
        m->precision /= kk;
        m->recall /= kk;
        m->f1 /= kk;
    }
    return result;
}

void filter_subjective(std::vector<ReviewDocument>& corpus, const SubjectivityModel& model, double threshold)
{
    for (auto& doc : corpus) {
        for (auto& s : doc.sentences) {
            const auto post = model.classify(normalized_tokens(s), threshold);
            s.subjectivity = post.label;
            s.subjectivity_score = post.probability();
        }
    }
}

std::vector<LabeledSentence> read_labeled_sentences(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path.string() + "'");
    std::vector<LabeledSentence> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw InputError(path.string() + ":" + std::to_string(lineno) + ": expected label<TAB>sentence");
        LabeledSentence s;
        try {
            s.label = subjectivity_from_string(line.substr(0, tab));
        } catch (const InputError& e) {
            throw InputError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
        Sentence tmp;
        tmp.tokens = tokenize(std::string_view(line).substr(tab + 1));
        s.tokens = normalized_tokens(tmp);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace reviewforge
