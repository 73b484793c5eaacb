#include "cocite/labeling.hpp"

#include "cocite/error.hpp"
#include "cocite/text.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace cocite {
namespace {

std::size_t source_index(TermSource source) {
    return static_cast<std::size_t>(source);
}

std::string lowercase(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

void sort_ranked(std::vector<RankedTerm>& terms) {
    std::sort(terms.begin(), terms.end(), [](const RankedTerm& x, const RankedTerm& y) {
        if (x.score != y.score) return x.score > y.score;
        return x.term < y.term;
    });
}

double xlogx_ratio(double o, double e) {
    return o > 0.0 ? o * std::log(o / e) : 0.0;
}

bool overrepresented(const TermStats& t, std::size_t n1, std::size_t n2) {
    const double n = static_cast<double>(n1 + n2);
    const double expected = static_cast<double>(t.df_corpus) * static_cast<double>(n1) / n;
    return static_cast<double>(t.df_cluster) > expected;
}

void check_contingency(const TermStats& t, std::size_t n1, std::size_t n2) {
    if (t.df_cluster < 0 || t.df_cluster > t.df_corpus || static_cast<std::size_t>(t.df_cluster) > n1 ||
        static_cast<std::size_t>(t.df_corpus - t.df_cluster) > n2) {
        throw InvalidArgument("term '" + t.term + "': document frequencies inconsistent with n1/n2");
    }
}

}  // namespace

std::string_view to_string(TermSource source) {
    switch (source) {
        case TermSource::title: return "title";
        case TermSource::abstract: return "abstract";
        case TermSource::index: return "index";
    }
    return "title";
}

std::string_view to_string(RankAlgo algo) {
    switch (algo) {
        case RankAlgo::tfidf: return "tfidf";
        case RankAlgo::llr: return "llr";
        case RankAlgo::mi: return "mi";
    }
    return "tfidf";
}

std::string method_name(TermSource source, RankAlgo algo) {
    return std::string(to_string(source)) + "." + std::string(to_string(algo));
}

CorpusIndex build_corpus_index(const std::vector<Record>& records) {
    CorpusIndex index;
    index.size = records.size();
    for (auto& per_doc : index.doc_terms) per_doc.resize(records.size());
    for (std::size_t d = 0; d < records.size(); ++d) {
        const auto& rec = records[d];
        index.uid_to_doc.emplace(rec.uid, d);
        for (const auto& phrase : text::extract_noun_phrases(rec.title)) {
            ++index.doc_terms[source_index(TermSource::title)][d][phrase];
        }
        for (const auto& phrase : text::extract_noun_phrases(rec.abstract)) {
            ++index.doc_terms[source_index(TermSource::abstract)][d][phrase];
        }
        for (const auto& term : rec.index_terms) {
            auto t = lowercase(trim(term));
            if (!t.empty()) ++index.doc_terms[source_index(TermSource::index)][d][t];
        }
        for (std::size_t s = 0; s < 3; ++s) {
            for (const auto& [term, tf] : index.doc_terms[s][d]) ++index.df[s][term];
        }
    }
    return index;
}

std::vector<TermStats> cluster_term_stats(const CorpusIndex& index, TermSource source,
                                          const std::vector<std::size_t>& docs) {
    const auto s = source_index(source);
    std::map<std::string, TermStats> acc;
    for (const auto d : docs) {
        if (d >= index.size) throw InvalidArgument("cluster_term_stats: document index out of range");
        for (const auto& [term, tf] : index.doc_terms[s][d]) {
            auto& t = acc[term];
            t.term = term;
            t.df_cluster += 1;
            t.tf_cluster += tf;
        }
    }
    std::vector<TermStats> out;
    out.reserve(acc.size());
    for (auto& [term, t] : acc) {
        t.df_corpus = index.df[s].at(term);
        out.push_back(std::move(t));
    }
    return out;
}

double log_likelihood_ratio(double a, double b, double c, double d) {
    const double n = a + b + c + d;
    if (n <= 0.0) return 0.0;
    const double r1 = a + b;
    const double r2 = c + d;
    const double c1 = a + c;
    const double c2 = b + d;
    const double g = xlogx_ratio(a, r1 * c1 / n) + xlogx_ratio(b, r1 * c2 / n) + xlogx_ratio(c, r2 * c1 / n) +
                     xlogx_ratio(d, r2 * c2 / n);
    return std::max(0.0, 2.0 * g);
}

double mutual_information(double a, double b, double c, double d) {
    a += 0.5;
    b += 0.5;
    c += 0.5;
    d += 0.5;
    const double n = a + b + c + d;
    const double present = (a + b) / n;
    const double absent = (c + d) / n;
    const double in_cluster = (a + c) / n;
    const double in_rest = (b + d) / n;
    auto term = [n](double cell, double px, double py) {
        const double p = cell / n;
        return p * std::log(p / (px * py));
    };
    return term(a, present, in_cluster) + term(b, present, in_rest) + term(c, absent, in_cluster) +
           term(d, absent, in_rest);
}

std::vector<RankedTerm> rank_tfidf(const std::vector<TermStats>& stats, std::size_t corpus_size) {
    if (corpus_size < 1) throw InvalidArgument("rank_tfidf: corpus size must be >= 1");
    std::vector<RankedTerm> out;
    for (const auto& t : stats) {
        if (t.df_corpus <= 0) continue;
        const double idf = std::log(static_cast<double>(corpus_size) / static_cast<double>(t.df_corpus));
        out.push_back({t.term, static_cast<double>(t.tf_cluster) * idf, false});
    }
    sort_ranked(out);
    return out;
}

std::vector<RankedTerm> rank_llr(const std::vector<TermStats>& stats, std::size_t n1, std::size_t n2) {
    if (n1 < 1 || n2 < 1) throw InvalidArgument("rank_llr: n1 and n2 must be >= 1");
    std::vector<RankedTerm> out;
    for (const auto& t : stats) {
        if (t.df_corpus <= 0) continue;
        check_contingency(t, n1, n2);
        if (!overrepresented(t, n1, n2)) continue;
        const double a = t.df_cluster;
        const double b = t.df_corpus - t.df_cluster;
        const double g2 = log_likelihood_ratio(a, b, static_cast<double>(n1) - a, static_cast<double>(n2) - b);
        out.push_back({t.term, g2, g2 >= kLlrCritical});
    }
    sort_ranked(out);
    return out;
}

std::vector<RankedTerm> rank_mi(const std::vector<TermStats>& stats, std::size_t n1, std::size_t n2) {
    if (n1 < 1 || n2 < 1) throw InvalidArgument("rank_mi: n1 and n2 must be >= 1");
    std::vector<RankedTerm> out;
    for (const auto& t : stats) {
        if (t.df_corpus <= 0) continue;
        check_contingency(t, n1, n2);
        if (!overrepresented(t, n1, n2)) continue;
        const double a = t.df_cluster;
        const double b = t.df_corpus - t.df_cluster;
        out.push_back({t.term, mutual_information(a, b, static_cast<double>(n1) - a, static_cast<double>(n2) - b),
                       false});
    }
    sort_ranked(out);
    return out;
}

Consensus consensus_scores(const std::map<std::string, std::vector<RankedTerm>>& lists, std::size_t depth) {
    std::map<std::string, int> methods_with_term;
    for (const auto& [method, ranked] : lists) {
        const auto top = std::min(depth, ranked.size());
        for (std::size_t i = 0; i < top; ++i) ++methods_with_term[ranked[i].term];
    }
    Consensus result;
    // n + 1 equals the number of methods holding the term, so r = count / 10.
    for (const auto& [term, count] : methods_with_term) result.r[term] = count / 10.0;

    std::vector<std::string> order;
    for (const auto source : kTermSources) {
        for (const auto algo : kRankAlgos) {
            const auto name = method_name(source, algo);
            if (lists.count(name) > 0) order.push_back(name);
        }
    }
    for (const auto& [method, ranked] : lists) {
        if (std::find(order.begin(), order.end(), method) == order.end()) order.push_back(method);
    }
    for (const auto& method : order) {
        const auto& ranked = lists.at(method);
        double total = 0.0;
        const auto top = std::min(depth, ranked.size());
        for (std::size_t i = 0; i < top; ++i) total += result.r.at(ranked[i].term);
        result.reliability.push_back({method, total});
    }
    std::stable_sort(result.reliability.begin(), result.reliability.end(),
                     [](const MethodReliability& x, const MethodReliability& y) {
                         return x.reliability > y.reliability;
                     });
    return result;
}

LabelSet label_cluster(int cluster_id, const std::vector<std::size_t>& citer_docs, const CorpusIndex& index,
                       const LabelOptions& opts) {
    LabelSet labels;
    labels.cluster_id = cluster_id;
    for (const auto source : kTermSources) {
        for (const auto algo : kRankAlgos) labels.lists[method_name(source, algo)];
    }
    std::vector<std::size_t> docs = citer_docs;
    std::sort(docs.begin(), docs.end());
    docs.erase(std::unique(docs.begin(), docs.end()), docs.end());
    if (docs.empty()) {
        labels.no_citers = true;
        labels.consensus = consensus_scores(labels.lists, opts.depth);
        return labels;
    }
    const std::size_t n1 = docs.size();
    const std::size_t n2 = index.size - n1;
    for (const auto source : kTermSources) {
        const auto stats = cluster_term_stats(index, source, docs);
        labels.lists[method_name(source, RankAlgo::tfidf)] = rank_tfidf(stats, index.size);
        // With no documents outside the cluster there is no contrast to test.
        if (n2 > 0) {
            labels.lists[method_name(source, RankAlgo::llr)] = rank_llr(stats, n1, n2);
            labels.lists[method_name(source, RankAlgo::mi)] = rank_mi(stats, n1, n2);
        }
    }
    labels.consensus = consensus_scores(labels.lists, opts.depth);
    const auto& title_llr = labels.lists[method_name(TermSource::title, RankAlgo::llr)];
    const auto& title_tfidf = labels.lists[method_name(TermSource::title, RankAlgo::tfidf)];
    if (!title_tfidf.empty()) labels.alternate_label = title_tfidf.front().term;
    labels.display_label = !title_llr.empty() ? title_llr.front().term : labels.alternate_label;
    if (opts.max_terms > 0) {
        for (auto& [method, ranked] : labels.lists) {
            if (ranked.size() > opts.max_terms) ranked.resize(opts.max_terms);
        }
    }
    return labels;
}

void to_json(nlohmann::json& j, const RankedTerm& term) {
    j = nlohmann::json{{"term", term.term}, {"score", term.score}, {"significant", term.significant}};
}

void from_json(const nlohmann::json& j, RankedTerm& term) {
    j.at("term").get_to(term.term);
    j.at("score").get_to(term.score);
    j.at("significant").get_to(term.significant);
}

void to_json(nlohmann::json& j, const LabelSet& labels) {
    nlohmann::json reliability = nlohmann::json::array();
    for (const auto& m : labels.consensus.reliability) {
        reliability.push_back({{"method", m.method}, {"reliability", m.reliability}});
    }
    j = nlohmann::json{{"cluster_id", labels.cluster_id},
                       {"display_label", labels.display_label},
                       {"alternate_label", labels.alternate_label},
                       {"no_citers", labels.no_citers},
                       {"lists", labels.lists},
                       {"consensus", labels.consensus.r},
                       {"reliability", reliability}};
}

void from_json(const nlohmann::json& j, LabelSet& labels) {
    j.at("cluster_id").get_to(labels.cluster_id);
    j.at("display_label").get_to(labels.display_label);
    labels.alternate_label = j.value("alternate_label", std::string{});
    labels.no_citers = j.value("no_citers", false);
    j.at("lists").get_to(labels.lists);
    j.at("consensus").get_to(labels.consensus.r);
    labels.consensus.reliability.clear();
    if (j.contains("reliability")) {
        for (const auto& m : j.at("reliability")) {
            labels.consensus.reliability.push_back({m.at("method").get<std::string>(), m.at("reliability").get<double>()});
        }
    }
}

}  // namespace cocite
