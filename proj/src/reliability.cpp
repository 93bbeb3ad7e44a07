#include "reviewforge/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace reviewforge {

namespace {

double normalize(std::vector<double>& v)
{
    double sq = 0.0;
    for (double x : v) sq += x * x;
    const double norm = std::sqrt(sq);
    if (norm > 0)
        for (double& x : v) x /= norm;
    return norm;
}

}  // namespace

std::size_t BipartiteGraph::edge_count() const
{
    std::size_t n = 0;
    for (const auto& edges : incidence) n += edges.size();
    return n;
}

BipartiteGraph build_bipartite_graph(std::span<const InformationComponent> components)
{
    BipartiteGraph g;
    std::map<PairKey, std::size_t> pair_index;
    std::unordered_map<std::string, std::size_t> doc_index;
    for (const auto& c : components) {
        PairKey key{to_lower(c.feature), to_lower(c.opinion)};
        auto [pit, new_pair] = pair_index.emplace(key, g.pairs.size());
        if (new_pair) {
            g.pairs.push_back(std::move(key));
            g.incidence.emplace_back();
        }
        auto [dit, new_doc] = doc_index.emplace(c.document_id, g.documents.size());
        if (new_doc) g.documents.push_back(c.document_id);

        auto& edges = g.incidence[pit->second];
        auto at = std::lower_bound(edges.begin(), edges.end(), dit->second,
                                   [](const Edge& e, std::size_t d) { return e.document < d; });
        if (at != edges.end() && at->document == dit->second) {
            at->weight += 1.0;
        } else {
            edges.insert(at, Edge{dit->second, 1.0});
        }
    }
    return g;
}

HitsResult run_hits(const BipartiteGraph& graph, const HitsOptions& options, const HitsObserver& observer)
{
    if (graph.empty()) throw ModelError("HITS needs a non-empty graph");
    if (!(options.epsilon > 0)) throw ModelError("HITS epsilon must be positive");

    const std::size_t np = graph.pairs.size();
    const std::size_t nd = graph.documents.size();
    HitsResult r;
    r.hub.assign(np, 1.0 / std::sqrt(static_cast<double>(np)));
    r.authority.assign(nd, 0.0);

    std::vector<double> next(np);
    for (std::size_t iter = 1; iter <= options.max_iter; ++iter) {
        std::fill(r.authority.begin(), r.authority.end(), 0.0);
        for (std::size_t p = 0; p < np; ++p)
            for (const auto& e : graph.incidence[p]) r.authority[e.document] += e.weight * r.hub[p];
        normalize(r.authority);

        for (std::size_t p = 0; p < np; ++p) {
            double s = 0.0;
            for (const auto& e : graph.incidence[p]) s += e.weight * r.authority[e.document];
            next[p] = s;
        }
        normalize(next);

        double delta = 0.0;
        for (std::size_t p = 0; p < np; ++p) delta = std::max(delta, std::abs(next[p] - r.hub[p]));
        r.hub.swap(next);
        r.iterations = iter;
        if (observer) observer(iter, r.hub, r.authority);
        if (delta < options.epsilon) {
            r.converged = true;
            break;
        }
    }
    return r;
}

std::vector<ScoredPair> reliability_scores(std::span<const PairKey> pairs, std::span<const double> hub,
                                           std::span<const std::string> partition)
{
    if (pairs.size() != hub.size() || pairs.size() != partition.size())
        throw ModelError("reliability_scores: pairs, hub and partition sizes differ");
    std::map<std::string, double> max_hub;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [it, inserted] = max_hub.emplace(partition[i], hub[i]);
        if (!inserted) it->second = std::max(it->second, hub[i]);
    }
    std::vector<ScoredPair> out;
    out.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const double top = max_hub[partition[i]];
        if (!(top > 0)) continue;
        ScoredPair s;
        s.feature = pairs[i].feature;
        s.opinion = pairs[i].opinion;
        s.hub_score = hub[i];
        s.reliability = hub[i] == top ? 1.0 : hub[i] / top;
        s.product_domain = partition[i];
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<ScoredPair> prune_noisy_pairs(std::vector<ScoredPair> scored, double threshold)
{
    std::erase_if(scored, [&](const ScoredPair& s) { return s.reliability < threshold; });
    std::stable_sort(scored.begin(), scored.end(), [](const ScoredPair& a, const ScoredPair& b) {
        if (a.reliability != b.reliability) return a.reliability > b.reliability;
        return std::tie(a.product_domain, a.feature, a.opinion) < std::tie(b.product_domain, b.feature, b.opinion);
    });
    return scored;
}

}  // namespace reviewforge
