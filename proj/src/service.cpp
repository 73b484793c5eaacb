#include "cocite/service.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <set>

namespace cocite {
namespace {

using nlohmann::json;

constexpr int kMaxSummaryK = 1000;

struct HttpError {
    int status;
    std::string message;
};

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::size_t i = 0;
    while (i < path.size()) {
        const auto next = path.find('/', i);
        const auto end = next == std::string::npos ? path.size() : next;
        if (end > i) parts.push_back(path.substr(i, end - i));
        i = end + 1;
    }
    return parts;
}

std::optional<long long> parse_integer(const std::string& s) {
    long long v = 0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (s.empty() || ec != std::errc{} || ptr != last) return std::nullopt;
    return v;
}

int cluster_id_or_throw(const AnalysisBundle& b, const std::string& text) {
    const auto id = parse_integer(text);
    if (!id) throw HttpError{400, "cluster id must be an integer"};
    if (*id < 0 || *id >= static_cast<long long>(b.clusters.size())) {
        throw HttpError{404, "unknown cluster " + text};
    }
    return static_cast<int>(*id);
}

json nullable(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json bursts_json(const std::vector<BurstInterval>& v) {
    json a = json::array();
    for (const auto& b : v) a.push_back({{"start_year", b.start_year}, {"end_year", b.end_year}, {"weight", b.weight}});
    return a;
}

json per_year_json(const std::map<int, int>& m) {
    json a = json::array();
    for (const auto& [year, count] : m) a.push_back({{"year", year}, {"count", count}});
    return a;
}

json meta(const AnalysisBundle& b) {
    const auto& pm = b.partition_metrics;
    return {{"bundle_version", b.bundle_version},
            {"config", b.config},
            {"start_year", b.start_year},
            {"end_year", b.end_year},
            {"k", b.partition.k},
            {"modularity", pm.modularity},
            {"mean_silhouette", pm.mean_silhouette},
            {"ncut", pm.ncut},
            {"nodes", b.network.nodes.size()},
            {"links", b.network.links.size()},
            {"records", b.records.size()},
            {"provenance", b.provenance}};
}

json network(const AnalysisBundle& b, const std::map<std::string, std::string>& query) {
    std::optional<int> only;
    if (const auto it = query.find("cluster"); it != query.end()) only = cluster_id_or_throw(b, it->second);
    auto included = [&](std::size_t i) { return !only || b.partition.assignment[i] == *only; };
    json nodes = json::array();
    for (std::size_t i = 0; i < b.network.nodes.size(); ++i) {
        if (!included(i)) continue;
        const auto& m = b.node_metrics[i];
        nodes.push_back({{"key", m.key},
                         {"cluster", m.cluster},
                         {"citations", m.citations},
                         {"first_cited_year", m.first_cited_year},
                         {"publication_year", nullable(m.publication_year)},
                         {"betweenness", m.betweenness},
                         {"burstness", m.burstness},
                         {"sigma", m.sigma}});
    }
    json links = json::array();
    for (const auto& l : b.network.links) {
        if (!included(l.i) || !included(l.j)) continue;
        links.push_back({{"source", b.network.nodes[l.i].key},
                         {"target", b.network.nodes[l.j].key},
                         {"weight", l.weight},
                         {"raw_count", l.raw_count},
                         {"first_slice_year", l.first_slice_year}});
    }
    return {{"cluster", only ? json(*only) : json(nullptr)}, {"nodes", nodes}, {"links", links}};
}

json clusters(const AnalysisBundle& b) {
    std::vector<const ClusterInfo*> order;
    for (const auto& c : b.clusters) order.push_back(&c);
    std::stable_sort(order.begin(), order.end(), [](const ClusterInfo* x, const ClusterInfo* y) {
        if (x->size != y->size) return x->size > y->size;
        return x->id < y->id;
    });
    json a = json::array();
    for (const auto* c : order) {
        json span = nullptr;
        if (c->time_span) {
            span = {{"mean_citer_year", c->time_span->mean_citer_year},
                    {"mean_member_year", c->time_span->mean_member_year},
                    {"tau", c->time_span->tau}};
        }
        a.push_back({{"id", c->id},
                     {"size", c->size},
                     {"silhouette", c->silhouette},
                     {"display_label", c->display_label},
                     {"tau", c->time_span ? json(c->time_span->tau) : json(nullptr)},
                     {"time_span", span},
                     {"citers", c->citers.size()}});
    }
    return a;
}

json summary(const AnalysisBundle& b, int id, const std::map<std::string, std::string>& query) {
    auto ranker = ranker_from_string(b.config.summary_ranker);
    if (const auto it = query.find("ranker"); it != query.end()) {
        try {
            ranker = ranker_from_string(it->second);
        } catch (const InvalidArgument&) {
            throw HttpError{400, "ranker must be energy, gtf or gtf_idf"};
        }
    }
    long long k = b.config.summary_k;
    if (const auto it = query.find("k"); it != query.end()) {
        const auto v = parse_integer(it->second);
        if (!v || *v < 0 || *v > kMaxSummaryK) throw HttpError{400, "k must be an integer in 0..1000"};
        k = *v;
    }
    const auto& stored = b.summaries[static_cast<std::size_t>(id)];
    if (stored.ranker == ranker && k == b.config.summary_k) return stored;
    return summarize_cluster(id, cluster_citers(b, id), static_cast<std::size_t>(k), ranker);
}

json citers(const AnalysisBundle& b, int id) {
    auto records = cluster_citers(b, id);
    std::stable_sort(records.begin(), records.end(), [](const Record& x, const Record& y) {
        if (x.year != y.year) return x.year < y.year;
        return x.uid < y.uid;
    });
    json a = json::array();
    for (const Record& r : records) {
        a.push_back({{"uid", r.uid},
                     {"year", r.year ? json(*r.year) : json(nullptr)},
                     {"title", r.title},
                     {"doc_type", std::string(to_string(r.doc_type))}});
    }
    return {{"cluster_id", id}, {"citers", a}};
}

json history(const AnalysisBundle& b, const std::string& key) {
    const auto i = b.network.find(key);
    if (!i) throw HttpError{404, "unknown node " + key};
    const auto& m = b.node_metrics[*i];
    return {{"key", m.key},
            {"cluster", m.cluster},
            {"citations", m.citations},
            {"first_cited_year", m.first_cited_year},
            {"publication_year", nullable(m.publication_year)},
            {"per_year", per_year_json(b.network.nodes[*i].per_year_citations)},
            {"bursts", bursts_json(m.bursts)},
            {"betweenness", m.betweenness},
            {"burstness", m.burstness},
            {"sigma", m.sigma}};
}

json timeline(const AnalysisBundle& b) {
    json lanes = json::array();
    for (const auto& lane : b.timeline) {
        json members = json::array();
        for (const auto& m : lane.members) {
            members.push_back({{"key", m.key}, {"first_cited_year", m.first_cited_year}, {"rings", per_year_json(m.rings)}});
        }
        const auto& info = b.clusters[static_cast<std::size_t>(lane.cluster_id)];
        lanes.push_back({{"cluster_id", lane.cluster_id},
                         {"label", lane.label},
                         {"start_year", lane.start_year},
                         {"end_year", lane.end_year},
                         {"tau", info.time_span ? json(info.time_span->tau) : json(nullptr)},
                         {"members", members}});
    }
    return {{"start_year", b.start_year}, {"end_year", b.end_year}, {"lanes", lanes}};
}

json dispatch(const AnalysisBundle& b, const ApiRequest& req) {
    const auto parts = split_path(req.path);
    if (parts.size() < 2 || parts[0] != "api") throw HttpError{404, "no such endpoint"};
    const auto& what = parts[1];
    if (parts.size() == 2) {
        if (what == "meta") return meta(b);
        if (what == "network") return network(b, req.query);
        if (what == "clusters") return clusters(b);
        if (what == "timeline") return timeline(b);
    }
    if (what == "clusters" && parts.size() == 4) {
        const int id = cluster_id_or_throw(b, parts[2]);
        if (parts[3] == "labels") return b.labels[static_cast<std::size_t>(id)];
        if (parts[3] == "summary") return summary(b, id, req.query);
        if (parts[3] == "citers") return citers(b, id);
    }
    if (what == "nodes" && parts.size() >= 4 && parts.back() == "history") {
        // Keys may contain '/', so rejoin everything between "nodes" and "history".
        std::string key;
        const auto first = req.path.find("/nodes/") + 7;
        const auto last = req.path.rfind("/history");
        if (last != std::string::npos && last > first) key = req.path.substr(first, last - first);
        return history(b, key);
    }
    throw HttpError{404, "no such endpoint"};
}

ApiResponse error_response(int status, const std::string& message) {
    ApiResponse r;
    r.status = status;
    r.body = json{{"error", {{"status", status}, {"message", message}}}}.dump();
    r.headers["Content-Type"] = "application/json";
    r.headers["Cache-Control"] = "no-store";
    return r;
}

}  // namespace

std::string body_etag(const std::string& body) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const unsigned char c : body) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "\"%016llx\"", static_cast<unsigned long long>(h));
    return buf;
}

ApiResponse route(const AnalysisBundle& bundle, const ApiRequest& request) {
    if (request.method != "GET" && request.method != "HEAD") {
        auto r = error_response(405, "read-only API: only GET is supported");
        r.headers["Allow"] = "GET, HEAD";
        return r;
    }
    json body;
    try {
        body = dispatch(bundle, request);
    } catch (const HttpError& e) {
        return error_response(e.status, e.message);
    } catch (const std::exception& e) {
        return error_response(500, e.what());
    }
    ApiResponse r;
    r.body = body.dump();
    const auto etag = body_etag(r.body);
    r.headers["Content-Type"] = "application/json";
    r.headers["Cache-Control"] = "public, max-age=3600";
    r.headers["ETag"] = etag;
    if (!request.if_none_match.empty() &&
        (request.if_none_match == etag || request.if_none_match == "*" ||
         request.if_none_match.find(etag) != std::string::npos)) {
        r.status = 304;
        r.body.clear();
    }
    return r;
}

}  // namespace cocite
