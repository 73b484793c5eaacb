#pragma once

// Normalized-cut objective and spectral partitioning with an automatically
// chosen cluster count.

#include "cocite/network.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cocite {

using NodeSet = std::vector<std::size_t>;

/// Hard, exhaustive assignment of network nodes to clusters 0..k-1, numbered
/// by descending size with ties broken by the smallest member key.
struct Partition {
    std::vector<int> assignment;       // per node index
    std::vector<NodeSet> clusters;     // members sorted by node index
    int k = 0;
    double ncut_value = 0.0;
    /// Clusters whose volume is zero; their ncut term is taken as 0.
    std::vector<int> zero_volume_clusters;

    bool operator==(const Partition&) const = default;
};

/// Dense symmetric weight matrix over the network's node order.
struct AffinityMatrix {
    Eigen::MatrixXd weights;
    Eigen::VectorXd degrees;
};

AffinityMatrix affinity_matrix(const CoCitationNetwork& net);

/// Builds a canonical Partition from raw labels (any integers, one per node):
/// relabels by size and smallest key and fills the cluster lists. ncut_value
/// is left at 0.
Partition make_partition(const CoCitationNetwork& net, const std::vector<int>& labels);

/// cut(A, B) = sum over i in A, j in B of w_ij.
double cut(const CoCitationNetwork& net, const NodeSet& a, const NodeSet& b);

struct NcutResult {
    double value = 0.0;
    std::vector<int> zero_volume_clusters;
};

/// Sum over clusters of cut(G_k, G - G_k) / vol(G_k).
NcutResult normalized_cut(const CoCitationNetwork& net, const Partition& partition);

struct SpectralOptions {
    std::uint64_t seed = 42;
    int restarts = 10;
    int max_k = 50;
    int max_iterations = 300;
    std::size_t max_nodes = 2000;
    /// Skip the eigengap choice and use this many clusters on the connected part.
    std::optional<int> fixed_k;
};

/// Diagnostic data from one spectral_partition run.
struct SpectralTrace {
    std::vector<double> eigenvalues;  // ascending, over non-isolated nodes
    int chosen_k = 0;                 // clusters among non-isolated nodes
    std::size_t isolated = 0;
    std::size_t restart_used = 0;
};

Partition spectral_partition(const CoCitationNetwork& net, const SpectralOptions& opts = {},
                             SpectralTrace* trace = nullptr);

/// Eigengap choice over ascending eigenvalues: the k in [2, k_max] maximising
/// lambda_{k+1} - lambda_k (1-based), smallest k on ties. Returns 1 when
/// k_max < 2 or every such gap is below 1e-9 (no structure to cut).
int choose_k_by_eigengap(const std::vector<double>& ascending, int max_k);

/// Partition interchange: "k=<k> ncut=<value>" then node_key TAB cluster_id.
std::string write_partition(const CoCitationNetwork& net, const Partition& partition);
/// Reads a partition for the nodes of `net`; every node must be assigned.
Partition read_partition(const CoCitationNetwork& net, std::string_view text);

}  // namespace cocite
