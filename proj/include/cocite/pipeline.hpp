#pragma once

// End-to-end analysis: ingest, slicing, network, clustering, metrics, bursts,
// labels, summaries, time spans and timeline layout, collected into a
// versioned AnalysisBundle.

#include "cocite/config.hpp"
#include "cocite/error.hpp"
#include "cocite/ingest.hpp"
#include "cocite/labeling.hpp"
#include "cocite/network.hpp"
#include "cocite/spectral.hpp"
#include "cocite/summarizer.hpp"
#include "cocite/temporal.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cocite {

inline constexpr int kBundleVersion = 1;

/// An error raised inside a pipeline stage; what() reads "stage '<name>': <cause>".
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& cause);
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

struct NodeMetrics {
    std::string key;
    int cluster = 0;
    int citations = 0;
    int first_cited_year = 0;
    std::optional<double> publication_year;
    double betweenness = 0.0;
    double burstness = 0.0;
    double sigma = 1.0;
    std::vector<BurstInterval> bursts;

    bool operator==(const NodeMetrics&) const = default;
};

struct ClusterInfo {
    int id = 0;
    std::size_t size = 0;
    double silhouette = 0.0;
    std::string display_label;
    std::optional<TimeSpan> time_span;  // absent without citers or dated members
    std::vector<std::string> members;   // node keys
    std::vector<std::string> citers;    // record uids, sorted

    bool operator==(const ClusterInfo&) const = default;
};

struct TimelineMember {
    std::string key;
    int first_cited_year = 0;
    std::map<int, int> rings;  // year -> citations, one ring per year

    bool operator==(const TimelineMember&) const = default;
};

struct TimelineLane {
    int cluster_id = 0;
    std::string label;
    int start_year = 0;
    int end_year = 0;
    std::vector<TimelineMember> members;  // by (first_cited_year, key)

    bool operator==(const TimelineLane&) const = default;
};

struct PartitionMetrics {
    double modularity = 0.0;
    bool zero_weight = false;
    double mean_silhouette = 0.0;
    bool single_cluster = false;
    double ncut = 0.0;

    bool operator==(const PartitionMetrics&) const = default;
};

struct AnalysisBundle {
    int bundle_version = kBundleVersion;
    AnalysisConfig config;
    int start_year = 0;  // resolved analysis range
    int end_year = 0;
    ParseStats provenance;
    std::vector<Record> records;  // records inside the range that passed the filter
    CoCitationNetwork network;
    Partition partition;
    std::vector<NodeMetrics> node_metrics;  // same order as network.nodes
    PartitionMetrics partition_metrics;
    std::map<int, int> burst_base;          // year -> distinct cited keys summed over records
    std::vector<ClusterInfo> clusters;
    std::vector<LabelSet> labels;
    std::vector<Summary> summaries;
    std::vector<TimelineLane> timeline;

    bool operator==(const AnalysisBundle&) const = default;
};

/// Runs every stage on an already loaded record set.
AnalysisBundle analyze(const AnalysisConfig& config, const RecordSet& records);

/// Validates the config, reads config.inputs and runs analyze().
AnalysisBundle run_pipeline(const AnalysisConfig& config);

/// The filter, slice, network and merge stages alone: the merged network over
/// the resolved range. Throws like analyze().
CoCitationNetwork network_from_records(const AnalysisConfig& config, const RecordSet& records);

/// Records of the bundle citing at least one member of the cluster.
std::vector<std::reference_wrapper<const Record>> cluster_citers(const AnalysisBundle& bundle, int cluster_id);

/// Per-year count of distinct cited keys summed over records, for every year of [start, end].
std::map<int, int> burst_base_counts(const std::vector<Record>& records, Unit unit, int start, int end);

nlohmann::json bundle_to_json(const AnalysisBundle& bundle);
AnalysisBundle bundle_from_json(const nlohmann::json& j);
std::string serialize_bundle(const AnalysisBundle& bundle);
AnalysisBundle parse_bundle(const std::string& text);

/// Writes via a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::string& path, const std::string& contents);
AnalysisBundle read_bundle_file(const std::string& path);

/// Writes bundle.json, network.graphml, edges.tsv and partition.tsv into
/// config.output_dir; on failure every file written by this call is removed.
/// Returns the bundle path.
std::string write_outputs(const AnalysisBundle& bundle);

std::string export_graphml(const AnalysisBundle& bundle);

struct SweepRow {
    int top_n = 0;
    std::size_t nodes = 0;
    std::size_t links = 0;
    int k = 0;
    double modularity = 0.0;
    double mean_silhouette = 0.0;
};

/// Network size sweep: for each top_n, build, cluster and score the merged network.
std::vector<SweepRow> size_sweep(const AnalysisConfig& config, const RecordSet& records, const std::vector<int>& top_ns);
/// Tab-separated report: size, links, k, Q, mean silhouette.
std::string sweep_report(const std::vector<SweepRow>& rows);

}  // namespace cocite
