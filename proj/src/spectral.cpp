#include "cocite/spectral.hpp"

#include "cocite/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace cocite {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Engine output mapped to [0, 1) without the implementation-defined
// standard distributions, so runs reproduce across standard libraries.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream) : engine_(splitmix64(seed ^ splitmix64(stream + 1))) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::size_t index(std::size_t n) {
        const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
        return std::min(i, n - 1);
    }

private:
    std::mt19937_64 engine_;
};

double squared_distance(const Eigen::MatrixXd& points, Eigen::Index row, const Eigen::MatrixXd& centers,
                        Eigen::Index c) {
    return (points.row(row) - centers.row(c)).squaredNorm();
}

std::vector<int> kmeans(const Eigen::MatrixXd& points, int k, int max_iterations, Rng& rng) {
    const auto n = points.rows();
    Eigen::MatrixXd centers(k, points.cols());

    // k-means++ seeding.
    std::vector<double> nearest(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
    auto first = static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(n)));
    centers.row(0) = points.row(first);
    for (int c = 1; c < k; ++c) {
        double total = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            auto& d = nearest[static_cast<std::size_t>(i)];
            d = std::min(d, squared_distance(points, i, centers, c - 1));
            total += d;
        }
        Eigen::Index pick = n - 1;
        if (total > 0.0) {
            const double target = rng.uniform() * total;
            double acc = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                acc += nearest[static_cast<std::size_t>(i)];
                if (acc > target) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(n)));
        }
        centers.row(c) = points.row(pick);
    }

    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    for (int iter = 0; iter < max_iterations; ++iter) {
        bool changed = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            int best = 0;
            double best_d = squared_distance(points, i, centers, 0);
            for (int c = 1; c < k; ++c) {
                const double d = squared_distance(points, i, centers, c);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (labels[static_cast<std::size_t>(i)] != best) {
                labels[static_cast<std::size_t>(i)] = best;
                changed = true;
            }
        }
        if (!changed) break;

        Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
        std::vector<int> counts(static_cast<std::size_t>(k), 0);
        for (Eigen::Index i = 0; i < n; ++i) {
            const int c = labels[static_cast<std::size_t>(i)];
            sums.row(c) += points.row(i);
            ++counts[static_cast<std::size_t>(c)];
        }
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) {
                centers.row(c) = sums.row(c) / counts[static_cast<std::size_t>(c)];
                continue;
            }
            // Empty cluster: move its center to the point worst served by its own center.
            Eigen::Index worst = 0;
            double worst_d = -1.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                const double d = squared_distance(points, i, centers, labels[static_cast<std::size_t>(i)]);
                if (d > worst_d) {
                    worst_d = d;
                    worst = i;
                }
            }
            centers.row(c) = points.row(worst);
        }
    }
    return labels;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Partition from_clusters(std::vector<NodeSet> clusters, std::size_t n) {
    Partition p;
    p.assignment.assign(n, -1);
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        for (const auto idx : clusters[c]) p.assignment[idx] = static_cast<int>(c);
    }
    p.k = static_cast<int>(clusters.size());
    p.clusters = std::move(clusters);
    return p;
}

}  // namespace

AffinityMatrix affinity_matrix(const CoCitationNetwork& net) {
    const auto n = static_cast<Eigen::Index>(net.nodes.size());
    AffinityMatrix a;
    a.weights = Eigen::MatrixXd::Zero(n, n);
    for (const auto& link : net.links) {
        const auto i = static_cast<Eigen::Index>(link.i);
        const auto j = static_cast<Eigen::Index>(link.j);
        a.weights(i, j) = link.weight;
        a.weights(j, i) = link.weight;
    }
    a.degrees = a.weights.rowwise().sum();
    return a;
}

Partition make_partition(const CoCitationNetwork& net, const std::vector<int>& labels) {
    if (labels.size() != net.nodes.size()) {
        throw InvalidArgument("make_partition: label count does not match node count");
    }
    std::map<int, NodeSet> groups;
    for (std::size_t i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(i);
    std::vector<NodeSet> clusters;
    clusters.reserve(groups.size());
    for (auto& [label, members] : groups) clusters.push_back(std::move(members));
    // Members are index-sorted and nodes are key-sorted, so front() is the smallest key.
    std::sort(clusters.begin(), clusters.end(), [](const NodeSet& a, const NodeSet& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.front() < b.front();
    });
    return from_clusters(std::move(clusters), net.nodes.size());
}

double cut(const CoCitationNetwork& net, const NodeSet& a, const NodeSet& b) {
    std::vector<char> in_a(net.nodes.size(), 0);
    std::vector<char> in_b(net.nodes.size(), 0);
    for (const auto i : a) in_a.at(i) = 1;
    for (const auto j : b) in_b.at(j) = 1;
    double total = 0.0;
    for (const auto& link : net.links) {
        if (in_a[link.i] && in_b[link.j]) total += link.weight;
        if (in_a[link.j] && in_b[link.i]) total += link.weight;
    }
    return total;
}

NcutResult normalized_cut(const CoCitationNetwork& net, const Partition& partition) {
    const auto k = static_cast<std::size_t>(partition.k);
    std::vector<double> boundary(k, 0.0);
    std::vector<double> volume(k, 0.0);
    for (const auto& link : net.links) {
        const auto ci = static_cast<std::size_t>(partition.assignment.at(link.i));
        const auto cj = static_cast<std::size_t>(partition.assignment.at(link.j));
        volume[ci] += link.weight;
        volume[cj] += link.weight;
        if (ci != cj) {
            boundary[ci] += link.weight;
            boundary[cj] += link.weight;
        }
    }
    NcutResult result;
    for (std::size_t c = 0; c < k; ++c) {
        if (volume[c] > 0.0) {
            result.value += boundary[c] / volume[c];
        } else {
            result.zero_volume_clusters.push_back(static_cast<int>(c));
        }
    }
    return result;
}

int choose_k_by_eigengap(const std::vector<double>& ascending, int max_k) {
    // Gaps below this are eigensolver noise: a spectrum flat beyond lambda_1
    // (a clique, for one) has no cluster structure to cut.
    constexpr double kFlat = 1e-9;
    const int k_max = std::min(max_k, static_cast<int>(ascending.size()) - 1);
    int best_k = 1;
    double best_gap = kFlat;
    for (int k = 2; k <= k_max; ++k) {
        const double gap = ascending[static_cast<std::size_t>(k)] - ascending[static_cast<std::size_t>(k - 1)];
        if (gap > best_gap) {
            best_gap = gap;
            best_k = k;
        }
    }
    return best_k;
}

Partition spectral_partition(const CoCitationNetwork& net, const SpectralOptions& opts, SpectralTrace* trace) {
    const std::size_t n = net.nodes.size();
    if (n > opts.max_nodes) {
        throw InvalidArgument("spectral_partition: " + std::to_string(n) + " nodes exceeds the dense solver limit of " +
                              std::to_string(opts.max_nodes));
    }
    if (opts.restarts < 1) throw InvalidArgument("spectral_partition: restarts must be >= 1");
    if (opts.max_k < 1) throw InvalidArgument("spectral_partition: max_k must be >= 1");

    const auto affinity = affinity_matrix(net);
    std::vector<std::size_t> active;
    std::vector<std::size_t> isolated;
    for (std::size_t i = 0; i < n; ++i) {
        (affinity.degrees(static_cast<Eigen::Index>(i)) > 0.0 ? active : isolated).push_back(i);
    }
    if (trace) *trace = SpectralTrace{{}, 0, isolated.size(), 0};

    std::vector<int> labels(n, -1);
    int next_label = 0;
    for (const auto i : isolated) labels[i] = next_label++;

    const auto m = static_cast<Eigen::Index>(active.size());
    if (m < 2) {
        for (const auto i : active) labels[i] = next_label++;
        auto p = make_partition(net, labels);
        const auto nc = normalized_cut(net, p);
        p.ncut_value = nc.value;
        p.zero_volume_clusters = nc.zero_volume_clusters;
        return p;
    }

    Eigen::VectorXd inv_sqrt(m);
    for (Eigen::Index a = 0; a < m; ++a) {
        inv_sqrt(a) = 1.0 / std::sqrt(affinity.degrees(static_cast<Eigen::Index>(active[static_cast<std::size_t>(a)])));
    }
    Eigen::MatrixXd laplacian = Eigen::MatrixXd::Identity(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
        for (Eigen::Index b = 0; b < m; ++b) {
            const double w = affinity.weights(static_cast<Eigen::Index>(active[static_cast<std::size_t>(a)]),
                                              static_cast<Eigen::Index>(active[static_cast<std::size_t>(b)]));
            if (w != 0.0) laplacian(a, b) -= inv_sqrt(a) * w * inv_sqrt(b);
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian);
    if (solver.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "spectral_partition: eigensolver did not converge (n=" << m
            << ", min degree=" << affinity.degrees.minCoeff() << ", max degree=" << affinity.degrees.maxCoeff()
            << ", links=" << net.links.size() << ")";
        throw NumericalError(msg.str());
    }
    const Eigen::VectorXd& evals = solver.eigenvalues();
    std::vector<double> ascending(evals.data(), evals.data() + evals.size());

    int k = opts.fixed_k ? std::clamp(*opts.fixed_k, 1, static_cast<int>(m))
                         : choose_k_by_eigengap(ascending, std::min(opts.max_k, static_cast<int>(m) - 1));
    if (trace) {
        trace->eigenvalues = ascending;
        trace->chosen_k = k;
    }

    if (k == 1) {
        for (const auto i : active) labels[i] = next_label;
        auto p = make_partition(net, labels);
        const auto nc = normalized_cut(net, p);
        p.ncut_value = nc.value;
        p.zero_volume_clusters = nc.zero_volume_clusters;
        return p;
    }

    Eigen::MatrixXd embedding = solver.eigenvectors().leftCols(k);
    for (Eigen::Index a = 0; a < m; ++a) {
        const double norm = embedding.row(a).norm();
        if (norm > 0.0) embedding.row(a) /= norm;
    }

    std::optional<Partition> best;
    for (int r = 0; r < opts.restarts; ++r) {
        Rng rng(opts.seed, static_cast<std::uint64_t>(r));
        const auto km = kmeans(embedding, k, opts.max_iterations, rng);
        auto trial = labels;
        for (Eigen::Index a = 0; a < m; ++a) {
            trial[active[static_cast<std::size_t>(a)]] = next_label + km[static_cast<std::size_t>(a)];
        }
        auto p = make_partition(net, trial);
        const auto nc = normalized_cut(net, p);
        p.ncut_value = nc.value;
        p.zero_volume_clusters = nc.zero_volume_clusters;
        if (!best || p.ncut_value < best->ncut_value) {
            best = std::move(p);
            if (trace) trace->restart_used = static_cast<std::size_t>(r);
        }
    }
    return std::move(*best);
}

std::string write_partition(const CoCitationNetwork& net, const Partition& partition) {
    std::string out = "k=" + std::to_string(partition.k) + " ncut=" + format_double(partition.ncut_value) + "\n";
    for (std::size_t i = 0; i < net.nodes.size(); ++i) {
        out += net.nodes[i].key;
        out += '\t';
        out += std::to_string(partition.assignment[i]);
        out += '\n';
    }
    return out;
}

Partition read_partition(const CoCitationNetwork& net, std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line.rfind("k=", 0) != 0) throw ParseError("partition: missing 'k=' header");
    std::vector<int> labels(net.nodes.size(), -1);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tab = line.rfind('\t');
        if (tab == std::string::npos) throw ParseError("partition line " + std::to_string(line_no) + ": missing tab");
        const auto key = line.substr(0, tab);
        const auto idx = net.find(key);
        if (!idx) throw ParseError("partition line " + std::to_string(line_no) + ": unknown node '" + key + "'");
        try {
            labels[*idx] = std::stoi(line.substr(tab + 1));
        } catch (const std::exception&) {
            throw ParseError("partition line " + std::to_string(line_no) + ": bad cluster id");
        }
        if (labels[*idx] < 0) throw ParseError("partition line " + std::to_string(line_no) + ": negative cluster id");
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0) throw ParseError("partition: node '" + net.nodes[i].key + "' has no cluster");
    }

    std::map<int, NodeSet> groups;
    for (std::size_t i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(i);
    const bool contiguous = groups.empty() || (groups.begin()->first == 0 &&
                                               groups.rbegin()->first == static_cast<int>(groups.size()) - 1);
    Partition p;
    if (contiguous) {
        std::vector<NodeSet> clusters;
        for (auto& [id, members] : groups) clusters.push_back(std::move(members));
        p = from_clusters(std::move(clusters), net.nodes.size());
    } else {
        p = make_partition(net, labels);
    }
    const auto nc = normalized_cut(net, p);
    p.ncut_value = nc.value;
    p.zero_volume_clusters = nc.zero_volume_clusters;
    return p;
}

}  // namespace cocite
