#pragma once

// Comparison of a partition against an external factor solution: best-factor
// matching, per-cluster projections, overlap rate and correspondence patterns.

#include <json.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cocite {

inline constexpr std::string_view kNoMatch = "[no match]";

struct FactorSolution {
    std::map<std::string, std::set<std::string>> factors;              // factor -> keys
    std::map<std::string, std::map<std::string, double>> loadings;     // key -> factor -> loading
};

/// TSV rows "key TAB factor TAB loading". Blank lines, '#' comments and a
/// "key factor loading" header are skipped. Throws ParseError on malformed or
/// non-finite rows.
FactorSolution read_factor_tsv(std::string_view text);

struct FactorMatch {
    std::optional<std::string> factor;  // nullopt: no match
    bool tie = false;                   // several factors share the max |loading|
};

/// The factor with the largest |loading|; ties go to the smallest name.
FactorMatch match_member(const std::string& key, const FactorSolution& solution);

struct ClusterMembers {
    int cluster_id = 0;
    std::vector<std::string> keys;
};

struct Projection {
    int cluster_id = 0;
    std::size_t size = 0;
    std::map<std::string, std::size_t> counts;  // factor (or kNoMatch) -> members
    std::vector<std::string> ties;              // members matched by tie-break

    double fraction(const std::string& factor) const;
};

/// |C ∩ F_j| / |C| per factor plus the no-match share. Throws InvalidArgument
/// for an empty cluster.
Projection project_cluster(const ClusterMembers& cluster, const FactorSolution& solution);

/// Matched members over all distinct cluster members. Throws InvalidArgument
/// when the union is empty.
double overlap_rate(const std::vector<ClusterMembers>& clusters, const FactorSolution& solution);

struct PatternThresholds {
    double dominant = 0.5;   // one factor holding at least this share
    double split = 0.15;     // share counted toward a split
    std::size_t min_split_factors = 3;
    double edge = 0.10;      // similarity-graph edge cut
};

struct PatternReport {
    struct Correspondence {
        int cluster_id;
        std::string factor;
        double fraction;
    };
    struct Containment {
        std::string factor;
        std::vector<int> clusters;
    };
    struct Split {
        int cluster_id;
        std::vector<std::string> factors;
    };
    std::vector<Correspondence> type1;  // cluster >= dominant onto one factor
    std::vector<Containment> type2;     // several clusters >= dominant onto the same factor
    std::vector<Split> type3;           // cluster spread over >= min_split_factors factors >= split
};

PatternReport classify_patterns(const std::vector<Projection>& projections, const PatternThresholds& t = {});

/// "%.<decimals>f" rendering.
std::string format_fixed(double value, int decimals);

/// Rows "cluster TAB factor TAB count TAB percent" with percent at 2 decimals.
std::string projection_tsv(const std::vector<Projection>& projections);

/// {clusters: [{id, size}], factors: [...], edges: [{cluster, factor, weight}]}
/// with edges for shares >= t.edge, the no-match share excluded.
nlohmann::json similarity_graph(const std::vector<Projection>& projections, const FactorSolution& solution,
                                const PatternThresholds& t = {});

nlohmann::json to_json(const PatternReport& report);

}  // namespace cocite
