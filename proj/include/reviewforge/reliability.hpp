#pragma once

// Feasibility analysis: feature-opinion pairs (hubs) against review documents
// (authorities), scored with HITS and normalised per product domain.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "reviewforge/extraction.hpp"

namespace reviewforge {

struct PairKey {
    std::string feature;
    std::string opinion;

    friend auto operator<=>(const PairKey&, const PairKey&) = default;
};

struct Edge {
    std::size_t document = 0;  // index into BipartiteGraph::documents
    double weight = 0.0;       // occurrences of the pair in the document

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct BipartiteGraph {
    std::vector<PairKey> pairs;
    std::vector<std::string> documents;
    /// incidence[p] lists the documents of pair p, sorted by document index.
    std::vector<std::vector<Edge>> incidence;

    bool empty() const { return pairs.empty(); }
    std::size_t edge_count() const;
};

/// Pairs and documents are numbered in order of first appearance.
BipartiteGraph build_bipartite_graph(std::span<const InformationComponent> components);

struct HitsOptions {
    double epsilon = 1e-6;
    std::size_t max_iter = 100;
};

struct HitsResult {
    std::vector<double> hub;
    std::vector<double> authority;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Called after every iteration with (iteration, hub, authority).
using HitsObserver = std::function<void(std::size_t, std::span<const double>, std::span<const double>)>;

/// authority <- A^T hub, hub <- A authority, each L2-normalised, from a uniform
/// hub. Stops when no hub entry moves by epsilon or more, or at max_iter
/// (converged = false). Throws ModelError for an empty graph or epsilon <= 0.
HitsResult run_hits(const BipartiteGraph& graph, const HitsOptions& options = {},
                    const HitsObserver& observer = nullptr);

struct ScoredPair {
    std::string feature;
    std::string opinion;
    double hub_score = 0.0;
    double reliability = 0.0;
    std::string product_domain;
    std::size_t iterations = 0;

    friend bool operator==(const ScoredPair&, const ScoredPair&) = default;
};

/// reliability = hub / max hub over pairs with the same partition key.
/// Partitions whose maximum is not positive are skipped.
std::vector<ScoredPair> reliability_scores(std::span<const PairKey> pairs, std::span<const double> hub,
                                           std::span<const std::string> partition);

/// Keeps pairs with reliability >= threshold, ordered by descending
/// reliability (ties: domain, feature, opinion).
std::vector<ScoredPair> prune_noisy_pairs(std::vector<ScoredPair> scored, double threshold);

}  // namespace reviewforge
