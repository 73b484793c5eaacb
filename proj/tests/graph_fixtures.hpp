#pragma once

#include "cocite/network.hpp"

#include <cstdio>
#include <random>
#include <tuple>
#include <vector>

namespace testsupport {

using Edge = std::tuple<std::size_t, std::size_t, double>;

inline std::string node_key(std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "n%03zu", i);
    return buf;
}

// Nodes n000..n(n-1) keep index order because keys sort like indices.
inline cocite::CoCitationNetwork network_from_edges(std::size_t n, const std::vector<Edge>& edges) {
    cocite::CoCitationNetwork net;
    for (std::size_t i = 0; i < n; ++i) net.nodes.push_back(cocite::Node{node_key(i), {}, 0, 0.0, 0});
    net.citers.resize(n);
    std::map<std::pair<std::size_t, std::size_t>, double> w;
    for (const auto& [a, b, weight] : edges) {
        if (a == b) continue;
        w[{std::min(a, b), std::max(a, b)}] = weight;
    }
    for (const auto& [ij, weight] : w) net.links.push_back(cocite::Link{ij.first, ij.second, weight, 1, 2000});
    return net;
}

inline std::vector<std::vector<double>> dense(const cocite::CoCitationNetwork& net) {
    std::vector<std::vector<double>> m(net.nodes.size(), std::vector<double>(net.nodes.size(), 0.0));
    for (const auto& l : net.links) m[l.i][l.j] = m[l.j][l.i] = l.weight;
    return m;
}

inline bool connected(std::size_t n, const std::vector<Edge>& edges) {
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [a, b, w] : edges) parent[find(a)] = find(b);
    for (std::size_t i = 1; i < n; ++i) {
        if (find(i) != find(0)) return false;
    }
    return true;
}

// Stochastic block model with unit weights; block of node i is i / block_size.
inline std::vector<Edge> planted_blocks(std::size_t blocks, std::size_t block_size, double p_in, double p_out,
                                        std::mt19937_64& rng) {
    std::bernoulli_distribution in(p_in);
    std::bernoulli_distribution out(p_out);
    std::vector<Edge> edges;
    const auto n = blocks * block_size;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool same = i / block_size == j / block_size;
            if (same ? in(rng) : out(rng)) edges.emplace_back(i, j, 1.0);
        }
    }
    return edges;
}

// Two loose groups of four with random weights; connected.
inline std::vector<Edge> random_two_group_graph(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> strong(0.5, 1.0);
    std::uniform_real_distribution<double> weak(0.05, 0.4);
    std::bernoulli_distribution in(0.8);
    std::bernoulli_distribution out(0.25);
    while (true) {
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < 8; ++i) {
            for (std::size_t j = i + 1; j < 8; ++j) {
                const bool same = i / 4 == j / 4;
                if (same ? in(rng) : out(rng)) edges.emplace_back(i, j, same ? strong(rng) : weak(rng));
            }
        }
        if (connected(8, edges)) return edges;
    }
}

}  // namespace testsupport
