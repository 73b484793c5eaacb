#include "cocite/pipeline.hpp"

#include "cocite/metrics.hpp"

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <unistd.h>

namespace cocite {
namespace {

std::shared_ptr<spdlog::logger> log() {
    static const auto logger = [] {
        auto existing = spdlog::get("cocite");
        return existing ? existing : spdlog::stderr_logger_mt("cocite");
    }();
    return logger;
}

template <class F>
void run_stage(const char* name, F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    log()->info("stage {} finished in {:.3f}s", name, secs);
}

struct Range {
    int start = 0;
    int end = 0;
};

Range resolve_range(const AnalysisConfig& config, const RecordSet& records) {
    std::optional<int> lo;
    std::optional<int> hi;
    for (const auto& r : records.records) {
        if (!r.year) continue;
        lo = lo ? std::min(*lo, *r.year) : *r.year;
        hi = hi ? std::max(*hi, *r.year) : *r.year;
    }
    const int start = config.start_year ? *config.start_year : lo.value_or(0);
    const int end = config.end_year ? *config.end_year : hi.value_or(-1);
    if (!lo || start > end) throw InvalidArgument("no records in range");
    return {start, end};
}

RecordSet filter_records(const AnalysisConfig& config, const RecordSet& records, const Range& range) {
    RecordSet out;
    out.provenance = records.provenance;
    std::set<DocType> allowed;
    for (const auto& t : config.doc_types) allowed.insert(doc_type_from_string(t));
    for (const auto& r : records.records) {
        if (!r.year || *r.year < range.start || *r.year > range.end) continue;
        if (!allowed.empty() && allowed.count(r.doc_type) == 0) continue;
        out.records.push_back(r);
    }
    if (out.records.empty()) throw InvalidArgument("no records in range");
    return out;
}

CoCitationNetwork build_merged(const AnalysisConfig& config, const RecordSet& filtered, const Range& range,
                               int top_n) {
    const auto unit = unit_from_string(config.unit);
    const auto measure = measure_from_string(config.measure);
    std::vector<CoCitationNetwork> parts;
    for (const auto& slice : slice_records(filtered, range.start, range.end, config.slice_len)) {
        const auto keys = select_top_cited(slice, static_cast<std::size_t>(top_n), unit);
        parts.push_back(build_network(slice, keys, unit, measure));
    }
    auto merged = merge_networks(parts);
    merged.start_year = range.start;
    merged.end_year = range.end;
    return merged;
}

SpectralOptions spectral_options(const AnalysisConfig& config) {
    SpectralOptions opts;
    opts.seed = config.seed;
    opts.restarts = config.restarts;
    opts.max_k = config.max_k;
    return opts;
}

// ---- JSON helpers -------------------------------------------------------

nlohmann::json optional_number(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> read_optional_number(const nlohmann::json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

// Non-finite doubles serialize as null; read them back as +inf.
double read_double_or_inf(const nlohmann::json& j) {
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

nlohmann::json year_counts(const std::map<int, int>& m) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& [year, count] : m) a.push_back({year, count});
    return a;
}

std::map<int, int> read_year_counts(const nlohmann::json& j) {
    std::map<int, int> m;
    for (const auto& pair : j) m[pair.at(0).get<int>()] = pair.at(1).get<int>();
    return m;
}

nlohmann::json intervals_json(const std::vector<BurstInterval>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& b : v) a.push_back({{"start_year", b.start_year}, {"end_year", b.end_year}, {"weight", b.weight}});
    return a;
}

std::vector<BurstInterval> read_intervals(const nlohmann::json& j) {
    std::vector<BurstInterval> v;
    for (const auto& b : j) {
        v.push_back({b.at("start_year").get<int>(), b.at("end_year").get<int>(), b.at("weight").get<double>()});
    }
    return v;
}

nlohmann::json network_json(const CoCitationNetwork& net) {
    nlohmann::json nodes = nlohmann::json::array();
    for (std::size_t i = 0; i < net.nodes.size(); ++i) {
        const auto& n = net.nodes[i];
        nodes.push_back({{"key", n.key},
                         {"per_year", year_counts(n.per_year_citations)},
                         {"first_cited_year", n.first_cited_year},
                         {"cited_year_sum", n.cited_year_sum},
                         {"cited_year_count", n.cited_year_count},
                         {"citers", i < net.citers.size() ? net.citers[i] : std::set<std::string>{}}});
    }
    nlohmann::json links = nlohmann::json::array();
    for (const auto& l : net.links) {
        links.push_back({{"i", l.i}, {"j", l.j}, {"weight", l.weight}, {"raw_count", l.raw_count},
                         {"first_slice_year", l.first_slice_year}});
    }
    return {{"unit", to_string(net.unit)}, {"measure", to_string(net.measure)}, {"start_year", net.start_year},
            {"end_year", net.end_year},    {"nodes", nodes},                   {"links", links}};
}

CoCitationNetwork read_network(const nlohmann::json& j) {
    CoCitationNetwork net;
    net.unit = unit_from_string(j.at("unit").get<std::string>());
    net.measure = measure_from_string(j.at("measure").get<std::string>());
    net.start_year = j.at("start_year").get<int>();
    net.end_year = j.at("end_year").get<int>();
    for (const auto& n : j.at("nodes")) {
        Node node;
        node.key = n.at("key").get<std::string>();
        node.per_year_citations = read_year_counts(n.at("per_year"));
        node.first_cited_year = n.at("first_cited_year").get<int>();
        node.cited_year_sum = n.at("cited_year_sum").get<double>();
        node.cited_year_count = n.at("cited_year_count").get<int>();
        net.nodes.push_back(std::move(node));
        net.citers.push_back(n.at("citers").get<std::set<std::string>>());
    }
    for (const auto& l : j.at("links")) {
        net.links.push_back(Link{l.at("i").get<std::size_t>(), l.at("j").get<std::size_t>(), l.at("weight").get<double>(),
                                 l.at("raw_count").get<int>(), l.at("first_slice_year").get<int>()});
    }
    return net;
}

nlohmann::json partition_json(const Partition& p) {
    return {{"k", p.k},
            {"ncut", p.ncut_value},
            {"assignment", p.assignment},
            {"zero_volume_clusters", p.zero_volume_clusters}};
}

Partition read_partition_json(const nlohmann::json& j) {
    Partition p;
    p.k = j.at("k").get<int>();
    p.ncut_value = j.at("ncut").get<double>();
    p.assignment = j.at("assignment").get<std::vector<int>>();
    p.zero_volume_clusters = j.at("zero_volume_clusters").get<std::vector<int>>();
    p.clusters.assign(static_cast<std::size_t>(p.k), {});
    for (std::size_t i = 0; i < p.assignment.size(); ++i) {
        const int c = p.assignment[i];
        if (c < 0 || c >= p.k) throw ParseError("bundle: partition assignment out of range");
        p.clusters[static_cast<std::size_t>(c)].push_back(i);
    }
    return p;
}

nlohmann::json time_span_json(const std::optional<TimeSpan>& t) {
    if (!t) return nullptr;
    return {{"cluster_id", t->cluster_id},
            {"mean_citer_year", t->mean_citer_year},
            {"mean_member_year", t->mean_member_year},
            {"tau", t->tau}};
}

std::optional<TimeSpan> read_time_span(const nlohmann::json& j) {
    if (j.is_null()) return std::nullopt;
    return TimeSpan{j.at("cluster_id").get<int>(), j.at("mean_citer_year").get<double>(),
                    j.at("mean_member_year").get<double>(), j.at("tau").get<double>()};
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string format_double(double v) {
    if (v == std::numeric_limits<double>::infinity()) return "INF";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

StageError::StageError(std::string stage, const std::string& cause)
    : Error("stage '" + stage + "': " + cause), stage_(std::move(stage)) {}

std::map<int, int> burst_base_counts(const std::vector<Record>& records, Unit unit, int start, int end) {
    std::map<int, int> base;
    for (int y = start; y <= end; ++y) base[y] = 0;
    for (const auto& r : records) {
        if (!r.year || *r.year < start || *r.year > end) continue;
        base[*r.year] += static_cast<int>(cited_keys(r, unit).size());
    }
    return base;
}

std::vector<std::reference_wrapper<const Record>> cluster_citers(const AnalysisBundle& bundle, int cluster_id) {
    std::vector<std::reference_wrapper<const Record>> out;
    if (cluster_id < 0 || static_cast<std::size_t>(cluster_id) >= bundle.clusters.size()) return out;
    const auto& uids = bundle.clusters[static_cast<std::size_t>(cluster_id)].citers;
    for (const auto& r : bundle.records) {
        if (std::binary_search(uids.begin(), uids.end(), r.uid)) out.emplace_back(r);
    }
    return out;
}

AnalysisBundle analyze(const AnalysisConfig& config, const RecordSet& records) {
    run_stage("config", [&] { validate(config); });
    AnalysisBundle b;
    b.config = config;
    b.provenance = records.provenance;
    const auto unit = unit_from_string(config.unit);

    Range range;
    RecordSet filtered;
    run_stage("filter", [&] {
        range = resolve_range(config, records);
        filtered = filter_records(config, records, range);
        log()->info("filter: {} of {} records in {}-{}", filtered.records.size(), records.records.size(), range.start,
                    range.end);
    });
    b.start_year = range.start;
    b.end_year = range.end;

    run_stage("network", [&] {
        b.network = build_merged(config, filtered, range, config.top_n);
        if (b.network.nodes.empty()) throw InvalidArgument("no cited items in range");
        log()->info("network: {} nodes, {} links", b.network.nodes.size(), b.network.links.size());
    });

    run_stage("cluster", [&] {
        b.partition = spectral_partition(b.network, spectral_options(config));
        log()->info("cluster: k={} ncut={:.6f}", b.partition.k, b.partition.ncut_value);
    });

    SilhouetteResult sil;
    std::vector<double> centrality;
    run_stage("metrics", [&] {
        centrality = betweenness(b.network);
        const auto q = modularity(b.network, b.partition);
        sil = silhouette(b.network, b.partition);
        b.partition_metrics = {q.q, q.zero_weight, sil.mean, sil.single_cluster, b.partition.ncut_value};
        log()->info("metrics: Q={:.4f} silhouette={:.4f}", q.q, sil.mean);
    });

    run_stage("bursts", [&] {
        b.burst_base = burst_base_counts(filtered.records, unit, range.start, range.end);
        const BurstOptions opts{config.burst_s, config.burst_gamma};
        std::size_t bursting = 0;
        for (std::size_t i = 0; i < b.network.nodes.size(); ++i) {
            const auto& node = b.network.nodes[i];
            NodeMetrics m;
            m.key = node.key;
            m.cluster = b.partition.assignment[i];
            m.citations = node.total_citations();
            m.first_cited_year = node.first_cited_year;
            m.publication_year = node.publication_year();
            m.betweenness = centrality[i];
            const auto bursts = detect_bursts(node.per_year_citations, b.burst_base, opts);
            m.bursts = bursts.intervals;
            m.burstness = bursts.burstness;
            m.sigma = sigma(m.betweenness, m.burstness);
            if (!m.bursts.empty()) ++bursting;
            b.node_metrics.push_back(std::move(m));
        }
        log()->info("bursts: {} nodes with bursts", bursting);
    });

    // Cluster membership and citers.
    b.clusters.resize(static_cast<std::size_t>(b.partition.k));
    for (int c = 0; c < b.partition.k; ++c) {
        auto& info = b.clusters[static_cast<std::size_t>(c)];
        info.id = c;
        const auto& members = b.partition.clusters[static_cast<std::size_t>(c)];
        info.size = members.size();
        info.silhouette = sil.cluster.empty() ? 0.0 : sil.cluster[static_cast<std::size_t>(c)];
        std::set<std::string> citers;
        for (const auto i : members) {
            info.members.push_back(b.network.nodes[i].key);
            citers.insert(b.network.citers[i].begin(), b.network.citers[i].end());
        }
        info.citers.assign(citers.begin(), citers.end());
    }
    b.records = std::move(filtered.records);

    run_stage("labels", [&] {
        const auto index = build_corpus_index(b.records);
        LabelOptions opts;
        opts.depth = static_cast<std::size_t>(config.label_depth);
        for (auto& info : b.clusters) {
            std::vector<std::size_t> docs;
            for (const auto& uid : info.citers) docs.push_back(index.uid_to_doc.at(uid));
            b.labels.push_back(label_cluster(info.id, docs, index, opts));
            info.display_label = b.labels.back().display_label;
        }
    });

    run_stage("summaries", [&] {
        const auto ranker = ranker_from_string(config.summary_ranker);
        for (const auto& info : b.clusters) {
            b.summaries.push_back(
                summarize_cluster(info.id, cluster_citers(b, info.id), static_cast<std::size_t>(config.summary_k), ranker));
        }
    });

    run_stage("timespans", [&] {
        std::map<std::string, int> year_of;
        for (const auto& r : b.records) year_of[r.uid] = *r.year;
        for (auto& info : b.clusters) {
            std::vector<double> member_years;
            for (const auto i : b.partition.clusters[static_cast<std::size_t>(info.id)]) {
                if (const auto y = b.network.nodes[i].publication_year()) member_years.push_back(*y);
            }
            std::vector<int> citer_years;
            for (const auto& uid : info.citers) citer_years.push_back(year_of.at(uid));
            if (!member_years.empty() && !citer_years.empty()) {
                info.time_span = time_span(info.id, member_years, citer_years);
            }
        }
    });

    run_stage("timeline", [&] {
        for (const auto& info : b.clusters) {
            TimelineLane lane;
            lane.cluster_id = info.id;
            lane.label = info.display_label;
            lane.start_year = std::numeric_limits<int>::max();
            lane.end_year = std::numeric_limits<int>::min();
            for (const auto i : b.partition.clusters[static_cast<std::size_t>(info.id)]) {
                const auto& node = b.network.nodes[i];
                lane.members.push_back({node.key, node.first_cited_year, node.per_year_citations});
                lane.start_year = std::min(lane.start_year, node.first_cited_year);
                if (!node.per_year_citations.empty()) {
                    lane.end_year = std::max(lane.end_year, node.per_year_citations.rbegin()->first);
                }
            }
            if (lane.end_year < lane.start_year) lane.end_year = lane.start_year;
            std::sort(lane.members.begin(), lane.members.end(), [](const TimelineMember& x, const TimelineMember& y) {
                if (x.first_cited_year != y.first_cited_year) return x.first_cited_year < y.first_cited_year;
                return x.key < y.key;
            });
            b.timeline.push_back(std::move(lane));
        }
    });
    return b;
}

CoCitationNetwork network_from_records(const AnalysisConfig& config, const RecordSet& records) {
    run_stage("config", [&] { validate(config); });
    CoCitationNetwork net;
    run_stage("network", [&] {
        const auto range = resolve_range(config, records);
        net = build_merged(config, filter_records(config, records, range), range, config.top_n);
        log()->info("network: {} nodes, {} links", net.nodes.size(), net.links.size());
    });
    return net;
}

AnalysisBundle run_pipeline(const AnalysisConfig& config) {
    run_stage("config", [&] {
        validate(config);
        if (config.inputs.empty()) throw InvalidArgument("no input files");
    });
    RecordSet records;
    run_stage("ingest", [&] {
        std::vector<RecordSet> sets;
        for (const auto& path : config.inputs) sets.push_back(read_records_file(path));
        records = merge_record_sets(std::move(sets));
        log()->info("ingest: {} records, {} rejected, {} malformed CR lines", records.records.size(),
                    records.provenance.records_rejected, records.provenance.malformed_cited_refs);
    });
    return analyze(config, records);
}

nlohmann::json bundle_to_json(const AnalysisBundle& b) {
    nlohmann::json metrics = nlohmann::json::array();
    for (const auto& m : b.node_metrics) {
        metrics.push_back({{"key", m.key},
                           {"cluster", m.cluster},
                           {"citations", m.citations},
                           {"first_cited_year", m.first_cited_year},
                           {"publication_year", optional_number(m.publication_year)},
                           {"betweenness", m.betweenness},
                           {"burstness", m.burstness},
                           {"sigma", m.sigma},
                           {"bursts", intervals_json(m.bursts)}});
    }
    nlohmann::json clusters = nlohmann::json::array();
    for (const auto& c : b.clusters) {
        clusters.push_back({{"id", c.id},
                            {"size", c.size},
                            {"silhouette", c.silhouette},
                            {"display_label", c.display_label},
                            {"time_span", time_span_json(c.time_span)},
                            {"members", c.members},
                            {"citers", c.citers}});
    }
    nlohmann::json timeline = nlohmann::json::array();
    for (const auto& lane : b.timeline) {
        nlohmann::json members = nlohmann::json::array();
        for (const auto& m : lane.members) {
            members.push_back({{"key", m.key}, {"first_cited_year", m.first_cited_year}, {"rings", year_counts(m.rings)}});
        }
        timeline.push_back({{"cluster_id", lane.cluster_id},
                            {"label", lane.label},
                            {"start_year", lane.start_year},
                            {"end_year", lane.end_year},
                            {"members", members}});
    }
    const auto& pm = b.partition_metrics;
    return {{"bundle_version", b.bundle_version},
            {"config", b.config},
            {"start_year", b.start_year},
            {"end_year", b.end_year},
            {"provenance", b.provenance},
            {"records", b.records},
            {"network", network_json(b.network)},
            {"partition", partition_json(b.partition)},
            {"node_metrics", metrics},
            {"partition_metrics",
             {{"modularity", pm.modularity},
              {"zero_weight", pm.zero_weight},
              {"mean_silhouette", pm.mean_silhouette},
              {"single_cluster", pm.single_cluster},
              {"ncut", pm.ncut}}},
            {"burst_base", year_counts(b.burst_base)},
            {"clusters", clusters},
            {"labels", b.labels},
            {"summaries", b.summaries},
            {"timeline", timeline}};
}

AnalysisBundle bundle_from_json(const nlohmann::json& j) {
    AnalysisBundle b;
    try {
        b.bundle_version = j.at("bundle_version").get<int>();
        if (b.bundle_version != kBundleVersion) {
            throw ParseError("bundle: unsupported bundle_version " + std::to_string(b.bundle_version));
        }
        b.config = j.at("config").get<AnalysisConfig>();
        b.start_year = j.at("start_year").get<int>();
        b.end_year = j.at("end_year").get<int>();
        b.provenance = j.at("provenance").get<ParseStats>();
        b.records = j.at("records").get<std::vector<Record>>();
        b.network = read_network(j.at("network"));
        b.partition = read_partition_json(j.at("partition"));
        for (const auto& m : j.at("node_metrics")) {
            NodeMetrics nm;
            nm.key = m.at("key").get<std::string>();
            nm.cluster = m.at("cluster").get<int>();
            nm.citations = m.at("citations").get<int>();
            nm.first_cited_year = m.at("first_cited_year").get<int>();
            nm.publication_year = read_optional_number(m.at("publication_year"));
            nm.betweenness = m.at("betweenness").get<double>();
            nm.burstness = m.at("burstness").get<double>();
            nm.sigma = read_double_or_inf(m.at("sigma"));
            nm.bursts = read_intervals(m.at("bursts"));
            b.node_metrics.push_back(std::move(nm));
        }
        const auto& pm = j.at("partition_metrics");
        b.partition_metrics = {pm.at("modularity").get<double>(), pm.at("zero_weight").get<bool>(),
                               pm.at("mean_silhouette").get<double>(), pm.at("single_cluster").get<bool>(),
                               pm.at("ncut").get<double>()};
        b.burst_base = read_year_counts(j.at("burst_base"));
        for (const auto& c : j.at("clusters")) {
            ClusterInfo info;
            info.id = c.at("id").get<int>();
            info.size = c.at("size").get<std::size_t>();
            info.silhouette = c.at("silhouette").get<double>();
            info.display_label = c.at("display_label").get<std::string>();
            info.time_span = read_time_span(c.at("time_span"));
            info.members = c.at("members").get<std::vector<std::string>>();
            info.citers = c.at("citers").get<std::vector<std::string>>();
            b.clusters.push_back(std::move(info));
        }
        b.labels = j.at("labels").get<std::vector<LabelSet>>();
        b.summaries = j.at("summaries").get<std::vector<Summary>>();
        for (const auto& lane : j.at("timeline")) {
            TimelineLane l;
            l.cluster_id = lane.at("cluster_id").get<int>();
            l.label = lane.at("label").get<std::string>();
            l.start_year = lane.at("start_year").get<int>();
            l.end_year = lane.at("end_year").get<int>();
            for (const auto& m : lane.at("members")) {
                l.members.push_back(
                    {m.at("key").get<std::string>(), m.at("first_cited_year").get<int>(), read_year_counts(m.at("rings"))});
            }
            b.timeline.push_back(std::move(l));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bundle: ") + e.what());
    }
    for (const auto& c : b.clusters) {
        if (c.id < 0 || c.id >= b.partition.k) throw ParseError("bundle: cluster id outside the partition");
    }
    return b;
}

std::string serialize_bundle(const AnalysisBundle& bundle) {
    return bundle_to_json(bundle).dump(1) + "\n";
}

AnalysisBundle parse_bundle(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("bundle: ") + e.what());
    }
    return bundle_from_json(j);
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    static std::atomic<unsigned> counter{0};
    const auto tmp = path + ".tmp-" + std::to_string(::getpid()) + "-" + std::to_string(counter++);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open '" + tmp + "' for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            std::filesystem::remove(tmp);
            throw Error("write to '" + tmp + "' failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error("rename to '" + path + "' failed: " + ec.message());
    }
}

AnalysisBundle read_bundle_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open bundle '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_bundle(ss.str());
}

std::string write_outputs(const AnalysisBundle& bundle) {
    namespace fs = std::filesystem;
    const fs::path dir(bundle.config.output_dir);
    std::vector<fs::path> written;
    try {
        fs::create_directories(dir);
        const std::vector<std::pair<std::string, std::string>> files = {
            {"network.graphml", export_graphml(bundle)},
            {"edges.tsv", write_edge_list(bundle.network)},
            {"partition.tsv", write_partition(bundle.network, bundle.partition)},
            {"bundle.json", serialize_bundle(bundle)},
        };
        for (const auto& [name, contents] : files) {
            const auto path = dir / name;
            write_file_atomic(path.string(), contents);
            written.push_back(path);
        }
    } catch (const std::exception& e) {
        for (const auto& p : written) {
            std::error_code ec;
            fs::remove(p, ec);
        }
        throw StageError("write", e.what());
    }
    return (dir / "bundle.json").string();
}

std::string export_graphml(const AnalysisBundle& b) {
    std::string out =
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\" "
        "xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" "
        "xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
        "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n";
    const std::vector<std::tuple<const char*, const char*, const char*>> keys = {
        {"label", "node", "string"},     {"cluster", "node", "int"},          {"citations", "node", "int"},
        {"betweenness", "node", "double"}, {"burstness", "node", "double"},    {"sigma", "node", "double"},
        {"first_cited_year", "node", "int"}, {"weight", "edge", "double"},     {"raw_count", "edge", "int"},
        {"first_slice_year", "edge", "int"},
    };
    for (const auto& [id, domain, type] : keys) {
        out += std::string("  <key id=\"") + id + "\" for=\"" + domain + "\" attr.name=\"" + id + "\" attr.type=\"" +
               type + "\"/>\n";
    }
    out += "  <graph id=\"cocitation\" edgedefault=\"undirected\">\n";
    auto data = [](const char* key, const std::string& value) {
        return std::string("      <data key=\"") + key + "\">" + value + "</data>\n";
    };
    for (std::size_t i = 0; i < b.network.nodes.size(); ++i) {
        const auto& node = b.network.nodes[i];
        out += "    <node id=\"n" + std::to_string(i) + "\">\n";
        out += data("label", xml_escape(node.key));
        if (i < b.node_metrics.size()) {
            const auto& m = b.node_metrics[i];
            out += data("cluster", std::to_string(m.cluster));
            out += data("citations", std::to_string(m.citations));
            out += data("betweenness", format_double(m.betweenness));
            out += data("burstness", format_double(m.burstness));
            out += data("sigma", format_double(m.sigma));
        }
        out += data("first_cited_year", std::to_string(node.first_cited_year));
        out += "    </node>\n";
    }
    for (std::size_t e = 0; e < b.network.links.size(); ++e) {
        const auto& l = b.network.links[e];
        out += "    <edge id=\"e" + std::to_string(e) + "\" source=\"n" + std::to_string(l.i) + "\" target=\"n" +
               std::to_string(l.j) + "\">\n";
        out += data("weight", format_double(l.weight));
        out += data("raw_count", std::to_string(l.raw_count));
        out += data("first_slice_year", std::to_string(l.first_slice_year));
        out += "    </edge>\n";
    }
    out += "  </graph>\n</graphml>\n";
    return out;
}

std::vector<SweepRow> size_sweep(const AnalysisConfig& config, const RecordSet& records, const std::vector<int>& top_ns) {
    validate(config);
    const auto range = resolve_range(config, records);
    const auto filtered = filter_records(config, records, range);
    std::vector<SweepRow> rows;
    for (const int n : top_ns) {
        if (n < 1) throw InvalidArgument("size_sweep: top_n must be >= 1");
        const auto net = build_merged(config, filtered, range, n);
        const auto p = spectral_partition(net, spectral_options(config));
        rows.push_back({n, net.nodes.size(), net.links.size(), p.k, modularity(net, p).q, silhouette(net, p).mean});
        log()->info("sweep: top_n={} nodes={} k={}", n, net.nodes.size(), p.k);
    }
    return rows;
}

std::string sweep_report(const std::vector<SweepRow>& rows) {
    std::string out = "top_n\tsize\tlinks\tk\tQ\tmean_silhouette\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%d\t%zu\t%zu\t%d\t%.4f\t%.4f\n", r.top_n, r.nodes, r.links, r.k, r.modularity,
                      r.mean_silhouette);
        out += buf;
    }
    return out;
}

}  // namespace cocite
