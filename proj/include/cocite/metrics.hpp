#pragma once

// Structural metrics over a network and a partition: betweenness
// centrality, modularity and silhouette.

#include "cocite/network.hpp"
#include "cocite/spectral.hpp"

#include <vector>

namespace cocite {

/// Brandes betweenness over unweighted shortest paths, halved for the
/// undirected graph and normalized by (n-1)(n-2)/2. Indexed like net.nodes.
std::vector<double> betweenness(const CoCitationNetwork& net);

struct ModularityResult {
    double q = 0.0;
    bool zero_weight = false;  // total weight 0: q defined as 0
};

/// Q = (1/2m) sum_ij [w_ij - d_i d_j / 2m] delta(c_i, c_j).
ModularityResult modularity(const CoCitationNetwork& net, const Partition& partition);

struct SilhouetteResult {
    std::vector<double> node;     // per node index, in [-1, 1]
    std::vector<double> cluster;  // per cluster id: mean over members
    double mean = 0.0;            // unweighted mean over nodes
    bool single_cluster = false;  // k = 1: every value defined as 0
};

/// Dissimilarity d(i,j) = 1 - w_ij, with w_ij = 0 for unlinked pairs.
/// Members of singleton clusters score 0.
SilhouetteResult silhouette(const CoCitationNetwork& net, const Partition& partition);

}  // namespace cocite
