#include "cocite/compare.hpp"

#include "cocite/error.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace cocite {
namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
        if (tab == std::string::npos) break;
        start = tab + 1;
    }
    return fields;
}

}  // namespace

FactorSolution read_factor_tsv(std::string_view text) {
    FactorSolution solution;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto fields = split_tabs(line);
        if (fields.size() != 3) {
            throw ParseError("factor TSV line " + std::to_string(line_no) + ": expected 3 tab-separated fields");
        }
        if (line_no == 1 && fields[2] == "loading") continue;
        double loading = 0.0;
        try {
            std::size_t used = 0;
            loading = std::stod(fields[2], &used);
            if (used != fields[2].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ParseError("factor TSV line " + std::to_string(line_no) + ": bad loading '" + fields[2] + "'");
        }
        if (!std::isfinite(loading)) {
            throw ParseError("factor TSV line " + std::to_string(line_no) + ": non-finite loading");
        }
        if (fields[0].empty() || fields[1].empty()) {
            throw ParseError("factor TSV line " + std::to_string(line_no) + ": empty key or factor");
        }
        solution.factors[fields[1]].insert(fields[0]);
        solution.loadings[fields[0]][fields[1]] = loading;
    }
    return solution;
}

FactorMatch match_member(const std::string& key, const FactorSolution& solution) {
    FactorMatch match;
    const auto it = solution.loadings.find(key);
    if (it == solution.loadings.end() || it->second.empty()) return match;
    double best = -1.0;
    // Factors iterate in name order, so the first maximum is the tie winner.
    for (const auto& [factor, loading] : it->second) {
        const double a = std::fabs(loading);
        if (a > best) {
            best = a;
            match.factor = factor;
            match.tie = false;
        } else if (a == best) {
            match.tie = true;
        }
    }
    return match;
}

double Projection::fraction(const std::string& factor) const {
    const auto it = counts.find(factor);
    if (it == counts.end() || size == 0) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(size);
}

Projection project_cluster(const ClusterMembers& cluster, const FactorSolution& solution) {
    if (cluster.keys.empty()) {
        throw InvalidArgument("project_cluster: cluster " + std::to_string(cluster.cluster_id) + " is empty");
    }
    Projection p;
    p.cluster_id = cluster.cluster_id;
    p.size = cluster.keys.size();
    for (const auto& key : cluster.keys) {
        const auto m = match_member(key, solution);
        if (m.factor) {
            ++p.counts[*m.factor];
            if (m.tie) p.ties.push_back(key);
        } else {
            ++p.counts[std::string(kNoMatch)];
        }
    }
    return p;
}

double overlap_rate(const std::vector<ClusterMembers>& clusters, const FactorSolution& solution) {
    std::set<std::string> members;
    for (const auto& c : clusters) members.insert(c.keys.begin(), c.keys.end());
    if (members.empty()) throw InvalidArgument("overlap_rate: no cluster members");
    std::size_t matched = 0;
    for (const auto& key : members) {
        if (match_member(key, solution).factor) ++matched;
    }
    return static_cast<double>(matched) / static_cast<double>(members.size());
}

PatternReport classify_patterns(const std::vector<Projection>& projections, const PatternThresholds& t) {
    PatternReport report;
    std::map<std::string, std::vector<int>> dominant_by_factor;
    for (const auto& p : projections) {
        std::vector<std::string> split_factors;
        for (const auto& [factor, count] : p.counts) {
            if (factor == kNoMatch) continue;
            const double f = p.fraction(factor);
            if (f >= t.dominant) {
                report.type1.push_back({p.cluster_id, factor, f});
                dominant_by_factor[factor].push_back(p.cluster_id);
            }
            if (f >= t.split) split_factors.push_back(factor);
        }
        if (split_factors.size() >= t.min_split_factors) report.type3.push_back({p.cluster_id, split_factors});
    }
    for (const auto& [factor, clusters] : dominant_by_factor) {
        if (clusters.size() >= 2) report.type2.push_back({factor, clusters});
    }
    return report;
}

std::string format_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

std::string projection_tsv(const std::vector<Projection>& projections) {
    std::string out = "cluster\tfactor\tcount\tpercent\n";
    for (const auto& p : projections) {
        for (const auto& [factor, count] : p.counts) {
            out += std::to_string(p.cluster_id) + "\t" + factor + "\t" + std::to_string(count) + "\t" +
                   format_fixed(100.0 * p.fraction(factor), 2) + "\n";
        }
    }
    return out;
}

nlohmann::json similarity_graph(const std::vector<Projection>& projections, const FactorSolution& solution,
                                const PatternThresholds& t) {
    nlohmann::json clusters = nlohmann::json::array();
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& p : projections) {
        clusters.push_back({{"id", p.cluster_id}, {"size", p.size}});
        for (const auto& [factor, count] : p.counts) {
            if (factor == kNoMatch) continue;
            const double f = p.fraction(factor);
            if (f >= t.edge) edges.push_back({{"cluster", p.cluster_id}, {"factor", factor}, {"weight", f}});
        }
    }
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& [name, keys] : solution.factors) factors.push_back({{"name", name}, {"size", keys.size()}});
    return {{"clusters", clusters}, {"factors", factors}, {"edges", edges}};
}

nlohmann::json to_json(const PatternReport& report) {
    nlohmann::json j{{"type1", nlohmann::json::array()}, {"type2", nlohmann::json::array()},
                     {"type3", nlohmann::json::array()}};
    for (const auto& c : report.type1) {
        j["type1"].push_back({{"cluster", c.cluster_id}, {"factor", c.factor}, {"fraction", c.fraction}});
    }
    for (const auto& c : report.type2) j["type2"].push_back({{"factor", c.factor}, {"clusters", c.clusters}});
    for (const auto& s : report.type3) j["type3"].push_back({{"cluster", s.cluster_id}, {"factors", s.factors}});
    return j;
}

}  // namespace cocite
