#include "cocite/metrics.hpp"

#include <algorithm>
#include <deque>

namespace cocite {
namespace {

std::vector<std::vector<std::size_t>> adjacency(const CoCitationNetwork& net) {
    std::vector<std::vector<std::size_t>> adj(net.nodes.size());
    for (const auto& link : net.links) {
        adj[link.i].push_back(link.j);
        adj[link.j].push_back(link.i);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
}

}  // namespace

std::vector<double> betweenness(const CoCitationNetwork& net) {
    const std::size_t n = net.nodes.size();
    std::vector<double> centrality(n, 0.0);
    if (n < 3) return centrality;
    const auto adj = adjacency(net);

    std::vector<std::size_t> order;
    std::vector<std::vector<std::size_t>> preds(n);
    std::vector<double> sigma(n);
    std::vector<long> dist(n);
    std::vector<double> delta(n);
    for (std::size_t s = 0; s < n; ++s) {
        order.clear();
        for (auto& p : preds) p.clear();
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(delta.begin(), delta.end(), 0.0);
        sigma[s] = 1.0;
        dist[s] = 0;
        std::deque<std::size_t> queue{s};
        while (!queue.empty()) {
            const auto v = queue.front();
            queue.pop_front();
            order.push_back(v);
            for (const auto w : adj[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    preds[w].push_back(v);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const auto w = *it;
            for (const auto v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            if (w != s) centrality[w] += delta[w];
        }
    }
    const double pairs = static_cast<double>(n - 1) * static_cast<double>(n - 2) / 2.0;
    for (auto& c : centrality) c = (c / 2.0) / pairs;
    return centrality;
}

ModularityResult modularity(const CoCitationNetwork& net, const Partition& partition) {
    double two_m = 0.0;
    std::vector<double> degree(net.nodes.size(), 0.0);
    for (const auto& link : net.links) {
        degree[link.i] += link.weight;
        degree[link.j] += link.weight;
        two_m += 2.0 * link.weight;
    }
    if (two_m <= 0.0) return {0.0, true};

    std::vector<double> internal(static_cast<std::size_t>(partition.k), 0.0);
    std::vector<double> cluster_degree(static_cast<std::size_t>(partition.k), 0.0);
    for (const auto& link : net.links) {
        const auto ci = partition.assignment[link.i];
        if (ci == partition.assignment[link.j]) internal[static_cast<std::size_t>(ci)] += 2.0 * link.weight;
    }
    for (std::size_t i = 0; i < degree.size(); ++i) {
        cluster_degree[static_cast<std::size_t>(partition.assignment[i])] += degree[i];
    }
    double q = 0.0;
    for (std::size_t c = 0; c < internal.size(); ++c) {
        const double a = cluster_degree[c] / two_m;
        q += internal[c] / two_m - a * a;
    }
    return {q, false};
}

SilhouetteResult silhouette(const CoCitationNetwork& net, const Partition& partition) {
    const std::size_t n = net.nodes.size();
    const auto k = static_cast<std::size_t>(partition.k);
    SilhouetteResult result;
    result.node.assign(n, 0.0);
    result.cluster.assign(k, 0.0);
    if (k <= 1) {
        result.single_cluster = true;
        return result;
    }

    // Sum of similarities from each node to each cluster; dissimilarity sums
    // follow as |C| - sum(w) (minus the self pair for the own cluster).
    std::vector<std::vector<double>> weight_to(n, std::vector<double>(k, 0.0));
    for (const auto& link : net.links) {
        weight_to[link.i][static_cast<std::size_t>(partition.assignment[link.j])] += link.weight;
        weight_to[link.j][static_cast<std::size_t>(partition.assignment[link.i])] += link.weight;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto own = static_cast<std::size_t>(partition.assignment[i]);
        const auto own_size = partition.clusters[own].size();
        if (own_size <= 1) continue;
        const double a = (static_cast<double>(own_size - 1) - weight_to[i][own]) / static_cast<double>(own_size - 1);
        double b = 0.0;
        bool have_b = false;
        for (std::size_t c = 0; c < k; ++c) {
            if (c == own) continue;
            const auto size = static_cast<double>(partition.clusters[c].size());
            const double mean_d = (size - weight_to[i][c]) / size;
            if (!have_b || mean_d < b) {
                b = mean_d;
                have_b = true;
            }
        }
        const double denom = std::max(a, b);
        result.node[i] = denom > 0.0 ? (b - a) / denom : 0.0;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        result.cluster[static_cast<std::size_t>(partition.assignment[i])] += result.node[i];
        total += result.node[i];
    }
    for (std::size_t c = 0; c < k; ++c) result.cluster[c] /= static_cast<double>(partition.clusters[c].size());
    result.mean = n > 0 ? total / static_cast<double>(n) : 0.0;
    return result;
}

}  // namespace cocite
