#pragma once

// Time slicing, top-N selection, co-citation network construction and
// progressive merging of per-slice networks.

#include "cocite/ingest.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cocite {

enum class Unit { cited_author, cited_reference };
enum class SimilarityMeasure { cosine, dice, jaccard };

std::string_view to_string(Unit unit);
std::string_view to_string(SimilarityMeasure measure);
Unit unit_from_string(std::string_view text);
SimilarityMeasure measure_from_string(std::string_view text);

/// A view over the records of a RecordSet dated within [start_year, end_year].
/// The slice does not own the records; the RecordSet must outlive it.
struct TimeSlice {
    int start_year = 0;
    int end_year = 0;
    std::vector<std::reference_wrapper<const Record>> records;
};

struct Node {
    std::string key;
    std::map<int, int> per_year_citations;  // year -> citing records that year
    int first_cited_year = 0;
    // Accumulators for the cited item's publication year: one entry per
    // distinct dated reference per citing record.
    double cited_year_sum = 0.0;
    int cited_year_count = 0;

    int total_citations() const;
    /// The reference year for DCA nodes; the mean year of the cited works
    /// for ACA nodes. Unset when no dated reference was seen.
    std::optional<double> publication_year() const;
    bool operator==(const Node&) const = default;
};

struct Link {
    std::size_t i = 0;  // i < j, indices into CoCitationNetwork::nodes
    std::size_t j = 0;
    double weight = 0.0;
    int raw_count = 0;
    int first_slice_year = 0;

    bool operator==(const Link&) const = default;
};

/// Nodes sorted by key; links sorted by (i, j) and stored once.
struct CoCitationNetwork {
    Unit unit = Unit::cited_author;
    SimilarityMeasure measure = SimilarityMeasure::cosine;
    int start_year = 0;
    int end_year = 0;
    std::vector<Node> nodes;
    std::vector<Link> links;
    /// Per node (same order as `nodes`): uids of the records citing it.
    std::vector<std::set<std::string>> citers;

    std::optional<std::size_t> find(std::string_view key) const;
    bool operator==(const CoCitationNetwork&) const = default;
};

/// Similarity from set sizes: |A|, |B| and |A ∩ B|.
double similarity(SimilarityMeasure measure, std::size_t a, std::size_t b, std::size_t shared);

/// The distinct node keys a record cites under `unit`.
std::set<std::string> cited_keys(const Record& record, Unit unit);

/// Consecutive slices of `slice_len` years covering [start, end]; the last
/// slice may be shorter. Records without a year are never included.
std::vector<TimeSlice> slice_records(const RecordSet& records, int start, int end, int slice_len);

/// The n most cited keys in the slice, ordered by (count desc,
/// first cited year asc, key asc).
std::vector<std::string> select_top_cited(const TimeSlice& slice, std::size_t n, Unit unit);

CoCitationNetwork build_network(const TimeSlice& slice, const std::vector<std::string>& keys, Unit unit,
                                SimilarityMeasure measure);

/// Union of nodes, summed counts, weights recomputed from pooled citer sets.
CoCitationNetwork merge_networks(const std::vector<CoCitationNetwork>& nets);

/// Edge-list interchange: "unit measure" header, then
/// key_i TAB key_j TAB weight TAB raw_count TAB first_slice_year. Nodes
/// without links follow as single-field lines.
std::string write_edge_list(const CoCitationNetwork& net);
CoCitationNetwork read_edge_list(std::string_view text);

}  // namespace cocite
