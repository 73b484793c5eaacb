// cocite: command-line front end. Each stage can run on its own over the
// interchange files (records JSONL, edges.tsv, partition.tsv), or all stages
// at once with `run`.

#include "cocite/compare.hpp"
#include "cocite/metrics.hpp"
#include "cocite/pipeline.hpp"
#include "cocite/service.hpp"
#include "cocite/synthetic.hpp"

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace cocite;

namespace {

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& output, const std::string& text) {
    if (output.empty() || output == "-") {
        std::cout << text;
    } else {
        write_file_atomic(output, text);
    }
}

RecordSet load_records(const std::vector<std::string>& inputs) {
    if (inputs.empty()) throw InvalidArgument("no input files (use --input)");
    std::vector<RecordSet> sets;
    for (const auto& path : inputs) sets.push_back(read_records_file(path));
    return merge_record_sets(std::move(sets));
}

// Config resolution: defaults, then the config file (--config or
// COCITER_CONFIG), then any flag given on the command line.
struct ConfigFlags {
    AnalysisConfig v;
    int start_year = 0;
    int end_year = 0;
    std::string config_path;
    std::vector<std::pair<CLI::Option*, std::function<void(AnalysisConfig&)>>> setters;

    void add(CLI::App* app) {
        app->add_option("--config", config_path, "JSON config file (fallback: $COCITER_CONFIG)");
        auto bind = [&](CLI::Option* o, std::function<void(AnalysisConfig&)> f) { setters.emplace_back(o, std::move(f)); };
        bind(app->add_option("-i,--input", v.inputs, "Input files: WoS export or records JSONL"),
             [this](AnalysisConfig& c) { c.inputs = v.inputs; });
        bind(app->add_option("--unit", v.unit, "cited_author | cited_reference"),
             [this](AnalysisConfig& c) { c.unit = v.unit; });
        bind(app->add_option("--start-year", start_year, "First year of the analysis range"),
             [this](AnalysisConfig& c) { c.start_year = start_year; });
        bind(app->add_option("--end-year", end_year, "Last year of the analysis range"),
             [this](AnalysisConfig& c) { c.end_year = end_year; });
        bind(app->add_option("--slice-len", v.slice_len, "Years per time slice"),
             [this](AnalysisConfig& c) { c.slice_len = v.slice_len; });
        bind(app->add_option("--top-n", v.top_n, "Most cited items kept per slice"),
             [this](AnalysisConfig& c) { c.top_n = v.top_n; });
        bind(app->add_option("--measure", v.measure, "cosine | dice | jaccard"),
             [this](AnalysisConfig& c) { c.measure = v.measure; });
        bind(app->add_option("--doc-types", v.doc_types, "Comma-separated: article,review,other")->delimiter(','),
             [this](AnalysisConfig& c) { c.doc_types = v.doc_types; });
        bind(app->add_option("--seed", v.seed, "Clustering seed"), [this](AnalysisConfig& c) { c.seed = v.seed; });
        bind(app->add_option("--restarts", v.restarts, "k-means restarts"),
             [this](AnalysisConfig& c) { c.restarts = v.restarts; });
        bind(app->add_option("--max-k", v.max_k, "Largest cluster count considered"),
             [this](AnalysisConfig& c) { c.max_k = v.max_k; });
        bind(app->add_option("--burst-s", v.burst_s, "Burst state rate ratio s"),
             [this](AnalysisConfig& c) { c.burst_s = v.burst_s; });
        bind(app->add_option("--burst-gamma", v.burst_gamma, "Burst transition cost gamma"),
             [this](AnalysisConfig& c) { c.burst_gamma = v.burst_gamma; });
        bind(app->add_option("--label-depth", v.label_depth, "Consensus depth per ranked list"),
             [this](AnalysisConfig& c) { c.label_depth = v.label_depth; });
        bind(app->add_option("--summary-k", v.summary_k, "Sentences per cluster summary"),
             [this](AnalysisConfig& c) { c.summary_k = v.summary_k; });
        bind(app->add_option("--summary-ranker", v.summary_ranker, "energy | gtf | gtf_idf"),
             [this](AnalysisConfig& c) { c.summary_ranker = v.summary_ranker; });
        bind(app->add_option("--output-dir", v.output_dir, "Directory for run outputs"),
             [this](AnalysisConfig& c) { c.output_dir = v.output_dir; });
        bind(app->add_option("--port", v.port, "Port for serve"), [this](AnalysisConfig& c) { c.port = v.port; });
    }

    AnalysisConfig resolve() const {
        AnalysisConfig c;
        std::optional<std::string> path;
        if (!config_path.empty()) path = config_path;
        else path = config_path_from_env();
        if (path) c = load_config_file(*path);
        for (const auto& [option, apply] : setters) {
            if (option->count() > 0) apply(c);
        }
        validate(c);
        return c;
    }
};

// Citing-record uids of every node, recomputed from the records.
std::vector<std::set<std::string>> citers_from_records(const CoCitationNetwork& net, const RecordSet& records) {
    std::vector<std::set<std::string>> citers(net.nodes.size());
    for (const auto& r : records.records) {
        for (const auto& key : cited_keys(r, net.unit)) {
            if (const auto i = net.find(key)) citers[*i].insert(r.uid);
        }
    }
    return citers;
}

std::vector<std::string> cluster_citer_uids(const Partition& p, const std::vector<std::set<std::string>>& citers, int c) {
    std::set<std::string> uids;
    for (const auto i : p.clusters[static_cast<std::size_t>(c)]) uids.insert(citers[i].begin(), citers[i].end());
    return {uids.begin(), uids.end()};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Co-citation network analysis: build, cluster, label and summarize."};
    app.require_subcommand(1);
    bool quiet = false;
    app.add_flag("-q,--quiet", quiet, "Only log warnings and errors");

    std::string output;
    std::string edges_path;
    std::string partition_path;
    std::string bundle_path;

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Parse WoS exports into records JSONL");
    std::vector<std::string> ingest_inputs;
    ingest->add_option("-i,--input", ingest_inputs, "Input files")->required();
    ingest->add_option("-o,--output", output, "Output JSONL (default stdout)");

    // network
    auto* network = app.add_subcommand("network", "Build the merged co-citation network (edges.tsv)");
    ConfigFlags network_flags;
    network_flags.add(network);
    network->add_option("-o,--output", output, "Output edge list (default stdout)");

    // cluster
    auto* cluster = app.add_subcommand("cluster", "Spectral clustering of an edge list (partition.tsv)");
    SpectralOptions spectral;
    cluster->add_option("--edges", edges_path, "Edge list")->required();
    cluster->add_option("--seed", spectral.seed, "Seed");
    cluster->add_option("--restarts", spectral.restarts, "k-means restarts");
    cluster->add_option("--max-k", spectral.max_k, "Largest cluster count considered");
    cluster->add_option("-o,--output", output, "Output partition (default stdout)");

    // metrics
    auto* metrics = app.add_subcommand("metrics", "Betweenness, modularity and silhouette of a partition");
    metrics->add_option("--edges", edges_path, "Edge list")->required();
    metrics->add_option("--partition", partition_path, "Partition")->required();
    metrics->add_option("-o,--output", output, "Output TSV (default stdout)");

    // label
    auto* label = app.add_subcommand("label", "Label clusters from citer titles, abstracts and index terms");
    std::vector<std::string> record_inputs;
    int depth = 3;
    label->add_option("-i,--input", record_inputs, "Citing records")->required();
    label->add_option("--edges", edges_path, "Edge list")->required();
    label->add_option("--partition", partition_path, "Partition")->required();
    label->add_option("--label-depth", depth, "Consensus depth per ranked list");
    label->add_option("-o,--output", output, "Output JSON (default stdout)");

    // summarize
    auto* summarize = app.add_subcommand("summarize", "Extractive summaries of cluster citers' abstracts");
    int k = 5;
    std::string ranker = "energy";
    std::optional<int> only_cluster;
    summarize->add_option("-i,--input", record_inputs, "Citing records")->required();
    summarize->add_option("--edges", edges_path, "Edge list")->required();
    summarize->add_option("--partition", partition_path, "Partition")->required();
    summarize->add_option("--summary-k", k, "Sentences per summary");
    summarize->add_option("--summary-ranker", ranker, "energy | gtf | gtf_idf");
    summarize->add_option("--cluster", only_cluster, "Only this cluster");
    summarize->add_option("-o,--output", output, "Output JSON (default stdout)");

    // compare
    auto* compare = app.add_subcommand("compare", "Project clusters onto a factor-analysis solution");
    std::string factors_path;
    std::string report_path;
    compare->add_option("--edges", edges_path, "Edge list")->required();
    compare->add_option("--partition", partition_path, "Partition")->required();
    compare->add_option("--factors", factors_path, "Factor loadings TSV: key, factor, loading")->required();
    compare->add_option("-o,--output", output, "Projection TSV (default stdout)");
    compare->add_option("--report", report_path, "JSON with overlap rate, patterns and similarity graph");

    // run
    auto* run = app.add_subcommand("run", "Run every stage and write the bundle, GraphML and TSVs");
    ConfigFlags run_flags;
    run_flags.add(run);

    // export
    auto* exporter = app.add_subcommand("export", "Export a bundle as GraphML");
    exporter->add_option("--bundle", bundle_path, "bundle.json")->required();
    exporter->add_option("-o,--output", output, "Output GraphML (default stdout)");

    // serve
    auto* serve = app.add_subcommand("serve", "Serve a bundle over the read-only JSON API");
    std::string host = "127.0.0.1";
    std::optional<int> port;
    serve->add_option("--bundle", bundle_path, "bundle.json")->required();
    serve->add_option("--host", host, "Listen address");
    serve->add_option("--port", port, "Port (default: the bundle's config)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Network size sweep: k, Q and silhouette per top-N");
    ConfigFlags sweep_flags;
    sweep_flags.add(sweep);
    std::vector<int> top_ns = {60, 100, 150, 200, 300, 400, 500};
    sweep->add_option("--top-ns", top_ns, "Comma-separated top-N values")->delimiter(',');
    sweep->add_option("-o,--output", output, "Report TSV (default stdout)");

    // synth
    auto* synth = app.add_subcommand("synth", "Write a seeded synthetic corpus with planted communities (JSONL)");
    SyntheticOptions synth_opts;
    synth->add_option("--communities", synth_opts.communities, "Planted communities");
    synth->add_option("--records-per-community", synth_opts.records_per_community, "Citing records per community");
    synth->add_option("--refs-per-community", synth_opts.refs_per_community, "Cited references per community");
    synth->add_option("--refs-per-record", synth_opts.refs_per_record, "References per citing record");
    synth->add_option("--p-in", synth_opts.p_in, "Chance a citation stays inside the community");
    synth->add_option("--seed", synth_opts.seed, "Seed");
    synth->add_option("-o,--output", output, "Output JSONL (default stdout)");

    CLI11_PARSE(app, argc, argv);
    spdlog::set_level(quiet ? spdlog::level::warn : spdlog::level::info);

    try {
        if (*ingest) {
            const auto records = load_records(ingest_inputs);
            const auto& p = records.provenance;
            spdlog::info("ingest: {} records read, {} rejected, {} malformed CR lines", records.records.size(),
                         p.records_rejected, p.malformed_cited_refs);
            emit(output, to_jsonl(records.records));
        } else if (*network) {
            const auto config = network_flags.resolve();
            emit(output, write_edge_list(network_from_records(config, load_records(config.inputs))));
        } else if (*cluster) {
            const auto net = read_edge_list(read_text(edges_path));
            const auto p = spectral_partition(net, spectral);
            spdlog::info("cluster: k={} ncut={:.6f}", p.k, p.ncut_value);
            emit(output, write_partition(net, p));
        } else if (*metrics) {
            const auto net = read_edge_list(read_text(edges_path));
            const auto p = read_partition(net, read_text(partition_path));
            const auto centrality = betweenness(net);
            const auto q = modularity(net, p);
            const auto s = silhouette(net, p);
            std::string out = "# k=" + std::to_string(p.k) + " modularity=" + format_fixed(q.q, 6) +
                              " mean_silhouette=" + format_fixed(s.mean, 6) + "\n";
            out += "key\tcluster\tbetweenness\tsilhouette\n";
            for (std::size_t i = 0; i < net.nodes.size(); ++i) {
                out += net.nodes[i].key + "\t" + std::to_string(p.assignment[i]) + "\t" + format_fixed(centrality[i], 6) +
                       "\t" + format_fixed(s.node[i], 6) + "\n";
            }
            emit(output, out);
        } else if (*label || *summarize) {
            const auto records = load_records(record_inputs);
            const auto net = read_edge_list(read_text(edges_path));
            const auto p = read_partition(net, read_text(partition_path));
            const auto citers = citers_from_records(net, records);
            nlohmann::json out = nlohmann::json::array();
            if (*label) {
                const auto index = build_corpus_index(records.records);
                LabelOptions opts;
                opts.depth = static_cast<std::size_t>(depth);
                for (int c = 0; c < p.k; ++c) {
                    std::vector<std::size_t> docs;
                    for (const auto& uid : cluster_citer_uids(p, citers, c)) docs.push_back(index.uid_to_doc.at(uid));
                    out.push_back(label_cluster(c, docs, index, opts));
                }
            } else {
                const auto r = ranker_from_string(ranker);
                if (k < 0) throw InvalidArgument("--summary-k must be >= 0");
                for (int c = 0; c < p.k; ++c) {
                    if (only_cluster && *only_cluster != c) continue;
                    const auto uids = cluster_citer_uids(p, citers, c);
                    std::vector<std::reference_wrapper<const Record>> docs;
                    for (const auto& rec : records.records) {
                        if (std::binary_search(uids.begin(), uids.end(), rec.uid)) docs.emplace_back(rec);
                    }
                    out.push_back(summarize_cluster(c, docs, static_cast<std::size_t>(k), r));
                }
                if (only_cluster && out.empty()) throw InvalidArgument("no cluster " + std::to_string(*only_cluster));
            }
            emit(output, out.dump(2) + "\n");
        } else if (*compare) {
            const auto net = read_edge_list(read_text(edges_path));
            const auto p = read_partition(net, read_text(partition_path));
            const auto solution = read_factor_tsv(read_text(factors_path));
            std::vector<ClusterMembers> clusters;
            std::vector<Projection> projections;
            for (int c = 0; c < p.k; ++c) {
                ClusterMembers m{c, {}};
                for (const auto i : p.clusters[static_cast<std::size_t>(c)]) m.keys.push_back(net.nodes[i].key);
                if (m.keys.empty()) continue;
                projections.push_back(project_cluster(m, solution));
                clusters.push_back(std::move(m));
            }
            const double rate = overlap_rate(clusters, solution);
            spdlog::info("compare: overlap rate {}", format_fixed(rate, 2));
            emit(output, projection_tsv(projections));
            if (!report_path.empty()) {
                const nlohmann::json report = {{"overlap_rate", rate},
                                               {"patterns", to_json(classify_patterns(projections))},
                                               {"graph", similarity_graph(projections, solution)}};
                write_file_atomic(report_path, report.dump(2) + "\n");
            }
        } else if (*run) {
            const auto bundle = run_pipeline(run_flags.resolve());
            std::cout << write_outputs(bundle) << "\n";
        } else if (*exporter) {
            emit(output, export_graphml(read_bundle_file(bundle_path)));
        } else if (*serve) {
            const auto bundle = read_bundle_file(bundle_path);
            ApiServer server(bundle);
            const int bound = server.bind(host, port.value_or(bundle.config.port));
            if (bound <= 0) throw Error("cannot bind " + host + ":" + std::to_string(port.value_or(bundle.config.port)));
            spdlog::info("serving on http://{}:{}/api/meta", host, bound);
            if (!server.listen()) throw Error("listener failed");
        } else if (*synth) {
            emit(output, to_jsonl(generate_corpus(synth_opts).records));
        } else if (*sweep) {
            const auto config = sweep_flags.resolve();
            emit(output, sweep_report(size_sweep(config, load_records(config.inputs), top_ns)));
        }
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return 1;
    }
    return 0;
}
