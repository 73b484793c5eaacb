#include "cocite/network.hpp"

#include "cocite/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_map>

namespace cocite {
namespace {

using PairKey = std::pair<std::string, std::string>;

std::size_t intersection_size(const std::set<std::string>& a, const std::set<std::string>& b) {
    std::size_t n = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++n;
            ++ia;
            ++ib;
        }
    }
    return n;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Year of each distinct reference a record attributes to `key`.
std::vector<int> cited_years_for(const Record& record, Unit unit, const std::string& key) {
    std::set<std::string> seen;
    std::vector<int> years;
    for (const auto& ref : record.cited_refs) {
        const auto& k = unit == Unit::cited_author ? ref.author_key : ref.ref_key;
        if (k != key || !ref.year) continue;
        if (seen.insert(ref.ref_key).second) years.push_back(*ref.year);
    }
    return years;
}

void finish_links(CoCitationNetwork& net, const std::map<std::pair<std::size_t, std::size_t>, std::pair<int, int>>& pairs) {
    net.links.clear();
    for (const auto& [ij, info] : pairs) {
        const auto [i, j] = ij;
        const auto shared = intersection_size(net.citers[i], net.citers[j]);
        if (shared == 0) continue;
        net.links.push_back(Link{i, j, similarity(net.measure, net.citers[i].size(), net.citers[j].size(), shared),
                                 info.first, info.second});
    }
}

}  // namespace

std::string_view to_string(Unit unit) {
    return unit == Unit::cited_author ? "cited_author" : "cited_reference";
}

std::string_view to_string(SimilarityMeasure measure) {
    switch (measure) {
        case SimilarityMeasure::cosine: return "cosine";
        case SimilarityMeasure::dice: return "dice";
        case SimilarityMeasure::jaccard: return "jaccard";
    }
    return "cosine";
}

Unit unit_from_string(std::string_view text) {
    if (text == "cited_author" || text == "author") return Unit::cited_author;
    if (text == "cited_reference" || text == "reference") return Unit::cited_reference;
    throw InvalidArgument("unknown unit '" + std::string(text) + "'");
}

SimilarityMeasure measure_from_string(std::string_view text) {
    if (text == "cosine") return SimilarityMeasure::cosine;
    if (text == "dice") return SimilarityMeasure::dice;
    if (text == "jaccard") return SimilarityMeasure::jaccard;
    throw InvalidArgument("unknown similarity measure '" + std::string(text) + "'");
}

int Node::total_citations() const {
    int total = 0;
    for (const auto& [year, count] : per_year_citations) total += count;
    return total;
}

std::optional<double> Node::publication_year() const {
    if (cited_year_count == 0) return std::nullopt;
    return cited_year_sum / cited_year_count;
}

std::optional<std::size_t> CoCitationNetwork::find(std::string_view key) const {
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), key,
                                     [](const Node& n, std::string_view k) { return n.key < k; });
    if (it == nodes.end() || it->key != key) return std::nullopt;
    return static_cast<std::size_t>(it - nodes.begin());
}

double similarity(SimilarityMeasure measure, std::size_t a, std::size_t b, std::size_t shared) {
    if (a == 0 || b == 0) throw InvalidArgument("similarity: citer sets must be non-empty");
    const auto s = static_cast<double>(shared);
    const auto da = static_cast<double>(a);
    const auto db = static_cast<double>(b);
    switch (measure) {
        case SimilarityMeasure::cosine: return s / std::sqrt(da * db);
        case SimilarityMeasure::dice: return 2.0 * s / (da + db);
        case SimilarityMeasure::jaccard: return s / (da + db - s);
    }
    return 0.0;
}

std::set<std::string> cited_keys(const Record& record, Unit unit) {
    std::set<std::string> keys;
    for (const auto& ref : record.cited_refs) {
        keys.insert(unit == Unit::cited_author ? ref.author_key : ref.ref_key);
    }
    return keys;
}

std::vector<TimeSlice> slice_records(const RecordSet& records, int start, int end, int slice_len) {
    if (start > end) throw InvalidArgument("slice_records: empty year range");
    if (slice_len < 1) throw InvalidArgument("slice_records: slice length must be >= 1");
    std::vector<TimeSlice> slices;
    for (int s = start; s <= end; s += slice_len) {
        slices.push_back(TimeSlice{s, std::min(end, s + slice_len - 1), {}});
    }
    for (const auto& rec : records.records) {
        if (!rec.year || *rec.year < start || *rec.year > end) continue;
        slices[static_cast<std::size_t>((*rec.year - start) / slice_len)].records.emplace_back(rec);
    }
    return slices;
}

std::vector<std::string> select_top_cited(const TimeSlice& slice, std::size_t n, Unit unit) {
    struct Tally {
        int count = 0;
        int first_year = 0;
    };
    std::unordered_map<std::string, Tally> tally;
    for (const Record& rec : slice.records) {
        const int year = rec.year.value_or(slice.start_year);
        for (const auto& key : cited_keys(rec, unit)) {
            auto [it, inserted] = tally.try_emplace(key, Tally{0, year});
            ++it->second.count;
            it->second.first_year = std::min(it->second.first_year, year);
        }
    }
    std::vector<std::pair<std::string, Tally>> ranked(tally.begin(), tally.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second.count != b.second.count) return a.second.count > b.second.count;
        if (a.second.first_year != b.second.first_year) return a.second.first_year < b.second.first_year;
        return a.first < b.first;
    });
    if (ranked.size() > n) ranked.resize(n);
    std::vector<std::string> keys;
    keys.reserve(ranked.size());
    for (auto& [key, t] : ranked) keys.push_back(key);
    return keys;
}

CoCitationNetwork build_network(const TimeSlice& slice, const std::vector<std::string>& keys, Unit unit,
                                SimilarityMeasure measure) {
    CoCitationNetwork net;
    net.unit = unit;
    net.measure = measure;
    net.start_year = slice.start_year;
    net.end_year = slice.end_year;

    std::vector<std::string> sorted(keys);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (auto& key : sorted) net.nodes.push_back(Node{std::move(key), {}, 0, 0.0, 0});
    net.citers.resize(net.nodes.size());

    std::map<std::pair<std::size_t, std::size_t>, std::pair<int, int>> pairs;
    for (const Record& rec : slice.records) {
        if (!rec.year) continue;
        std::vector<std::size_t> present;
        for (const auto& key : cited_keys(rec, unit)) {
            if (const auto idx = net.find(key)) present.push_back(*idx);
        }
        for (const auto idx : present) {
            auto& node = net.nodes[idx];
            ++node.per_year_citations[*rec.year];
            net.citers[idx].insert(rec.uid);
            for (const int y : cited_years_for(rec, unit, node.key)) {
                node.cited_year_sum += y;
                ++node.cited_year_count;
            }
        }
        for (std::size_t a = 0; a < present.size(); ++a) {
            for (std::size_t b = a + 1; b < present.size(); ++b) {
                auto& info = pairs[{std::min(present[a], present[b]), std::max(present[a], present[b])}];
                ++info.first;
                info.second = slice.start_year;
            }
        }
    }
    for (auto& node : net.nodes) {
        if (!node.per_year_citations.empty()) node.first_cited_year = node.per_year_citations.begin()->first;
    }
    finish_links(net, pairs);
    return net;
}

CoCitationNetwork merge_networks(const std::vector<CoCitationNetwork>& nets) {
    if (nets.empty()) throw InvalidArgument("merge_networks: nothing to merge");
    CoCitationNetwork out;
    out.unit = nets.front().unit;
    out.measure = nets.front().measure;
    out.start_year = nets.front().start_year;
    out.end_year = nets.front().end_year;

    std::map<std::string, std::pair<Node, std::set<std::string>>> nodes;
    std::map<PairKey, std::pair<int, int>> links;
    for (const auto& net : nets) {
        if (net.unit != out.unit) throw InvalidArgument("merge_networks: mixed units");
        if (net.measure != out.measure) throw InvalidArgument("merge_networks: mixed similarity measures");
        out.start_year = std::min(out.start_year, net.start_year);
        out.end_year = std::max(out.end_year, net.end_year);
        for (std::size_t i = 0; i < net.nodes.size(); ++i) {
            const auto& src = net.nodes[i];
            auto [it, inserted] = nodes.try_emplace(src.key);
            auto& [node, citer_set] = it->second;
            node.key = src.key;
            for (const auto& [year, count] : src.per_year_citations) node.per_year_citations[year] += count;
            node.cited_year_sum += src.cited_year_sum;
            node.cited_year_count += src.cited_year_count;
            if (i < net.citers.size()) citer_set.insert(net.citers[i].begin(), net.citers[i].end());
        }
        for (const auto& link : net.links) {
            PairKey key{net.nodes[link.i].key, net.nodes[link.j].key};
            auto [it, inserted] = links.try_emplace(key, std::pair<int, int>{0, link.first_slice_year});
            it->second.first += link.raw_count;
            it->second.second = std::min(it->second.second, link.first_slice_year);
        }
    }

    for (auto& [key, entry] : nodes) {
        auto& node = entry.first;
        node.first_cited_year = 0;
        for (const auto& [year, count] : node.per_year_citations) {
            if (count > 0) {
                node.first_cited_year = year;
                break;
            }
        }
        out.nodes.push_back(std::move(node));
        out.citers.push_back(std::move(entry.second));
    }
    std::map<std::pair<std::size_t, std::size_t>, std::pair<int, int>> pairs;
    for (const auto& [key, info] : links) {
        pairs[{*out.find(key.first), *out.find(key.second)}] = info;
    }
    finish_links(out, pairs);
    return out;
}

std::string write_edge_list(const CoCitationNetwork& net) {
    std::string out;
    out += std::string(to_string(net.unit)) + " " + std::string(to_string(net.measure)) + "\n";
    for (const auto& link : net.links) {
        out += net.nodes[link.i].key;
        out += '\t';
        out += net.nodes[link.j].key;
        out += '\t';
        out += format_double(link.weight);
        out += '\t';
        out += std::to_string(link.raw_count);
        out += '\t';
        out += std::to_string(link.first_slice_year);
        out += '\n';
    }
    std::vector<char> linked(net.nodes.size(), 0);
    for (const auto& link : net.links) linked[link.i] = linked[link.j] = 1;
    for (std::size_t i = 0; i < net.nodes.size(); ++i) {
        if (!linked[i]) out += net.nodes[i].key + "\n";
    }
    return out;
}

CoCitationNetwork read_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) throw ParseError("edge list: missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    CoCitationNetwork net;
    {
        std::istringstream header(line);
        std::string unit;
        std::string measure;
        if (!(header >> unit >> measure)) throw ParseError("edge list: malformed header '" + line + "'");
        try {
            net.unit = unit_from_string(unit);
            net.measure = measure_from_string(measure);
        } catch (const InvalidArgument& e) {
            throw ParseError(std::string("edge list: ") + e.what());
        }
    }

    struct Row {
        std::string a, b;
        double weight;
        int raw;
        int year;
    };
    std::vector<Row> rows;
    std::set<std::string> keys;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const auto pos = line.find('\t', start);
            fields.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        if (fields.size() == 1) {
            keys.insert(fields[0]);
            continue;
        }
        if (fields.size() != 5) {
            throw ParseError("edge list line " + std::to_string(line_no) + ": expected 5 tab-separated fields");
        }
        Row row;
        row.a = fields[0];
        row.b = fields[1];
        try {
            std::size_t used = 0;
            row.weight = std::stod(fields[2], &used);
            if (used != fields[2].size()) throw std::invalid_argument("weight");
            row.raw = std::stoi(fields[3]);
            row.year = std::stoi(fields[4]);
        } catch (const std::exception&) {
            throw ParseError("edge list line " + std::to_string(line_no) + ": malformed numeric field");
        }
        if (row.a == row.b) throw ParseError("edge list line " + std::to_string(line_no) + ": self-link");
        keys.insert(row.a);
        keys.insert(row.b);
        rows.push_back(std::move(row));
    }
    for (const auto& key : keys) net.nodes.push_back(Node{key, {}, 0, 0.0, 0});
    net.citers.resize(net.nodes.size());
    std::map<std::pair<std::size_t, std::size_t>, Link> links;
    int min_year = 0;
    int max_year = 0;
    for (const auto& row : rows) {
        auto i = *net.find(row.a);
        auto j = *net.find(row.b);
        if (i > j) std::swap(i, j);
        links[{i, j}] = Link{i, j, row.weight, row.raw, row.year};
        min_year = min_year == 0 ? row.year : std::min(min_year, row.year);
        max_year = std::max(max_year, row.year);
    }
    for (auto& [ij, link] : links) net.links.push_back(link);
    net.start_year = min_year;
    net.end_year = max_year;
    return net;
}

}  // namespace cocite
