#pragma once

// Candidate cluster labels from the citing records of each cluster: three
// term sources (titles, abstracts, index terms) ranked by tf*idf,
// log-likelihood ratio and mutual information, plus consensus scores.

#include "cocite/ingest.hpp"

#include <json.hpp>

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace cocite {

enum class TermSource { title, abstract, index };
enum class RankAlgo { tfidf, llr, mi };

inline constexpr std::array<TermSource, 3> kTermSources{TermSource::title, TermSource::abstract, TermSource::index};
inline constexpr std::array<RankAlgo, 3> kRankAlgos{RankAlgo::tfidf, RankAlgo::llr, RankAlgo::mi};

std::string_view to_string(TermSource source);
std::string_view to_string(RankAlgo algo);
/// "title.llr" style method name.
std::string method_name(TermSource source, RankAlgo algo);

/// Critical value of chi-square with 1 degree of freedom at p = 0.0001.
inline constexpr double kLlrCritical = 15.137;

struct TermStats {
    std::string term;
    int df_cluster = 0;  // cluster documents containing the term
    int df_corpus = 0;   // all documents containing the term
    int tf_cluster = 0;  // occurrences within the cluster documents

    bool operator==(const TermStats&) const = default;
};

/// Per-document term frequencies for every source, built once per corpus.
struct CorpusIndex {
    std::size_t size = 0;
    std::map<std::string, std::size_t> uid_to_doc;
    // [source][doc] -> term -> frequency
    std::array<std::vector<std::map<std::string, int>>, 3> doc_terms;
    // [source] -> term -> document frequency
    std::array<std::map<std::string, int>, 3> df;
};

/// Titles and abstracts are chunked into noun phrases; index terms are kept
/// verbatim, lowercased.
CorpusIndex build_corpus_index(const std::vector<Record>& records);

/// Stats for every term occurring in `docs` (document indices), sorted by term.
std::vector<TermStats> cluster_term_stats(const CorpusIndex& index, TermSource source,
                                          const std::vector<std::size_t>& docs);

struct RankedTerm {
    std::string term;
    double score = 0.0;
    bool significant = false;  // LLR only: G2 >= kLlrCritical

    bool operator==(const RankedTerm&) const = default;
};

/// G2 = 2 sum O ln(O/E) over the 2x2 table
/// [[a, b], [c, d]] = [[present in cluster, present in rest],
///                     [absent in cluster,  absent in rest]].
double log_likelihood_ratio(double a, double b, double c, double d);
/// Four-cell mutual information with 0.5 added to each cell.
double mutual_information(double a, double b, double c, double d);

/// tf_cluster * ln(N / df_corpus), descending; ties by term.
std::vector<RankedTerm> rank_tfidf(const std::vector<TermStats>& stats, std::size_t corpus_size);
/// Terms overrepresented in the cluster ranked by G2; n1 cluster docs, n2 rest docs.
std::vector<RankedTerm> rank_llr(const std::vector<TermStats>& stats, std::size_t n1, std::size_t n2);
std::vector<RankedTerm> rank_mi(const std::vector<TermStats>& stats, std::size_t n1, std::size_t n2);

struct MethodReliability {
    std::string method;
    double reliability = 0.0;

    bool operator==(const MethodReliability&) const = default;
};

struct Consensus {
    /// term -> r = 0.1 * (n + 1), n = other methods with the term in their top k.
    std::map<std::string, double> r;
    /// All methods, best first; ties keep source-major, algorithm-minor order.
    std::vector<MethodReliability> reliability;

    bool operator==(const Consensus&) const = default;
};

/// `lists` is keyed by method name; depth is the top-k cut per list.
Consensus consensus_scores(const std::map<std::string, std::vector<RankedTerm>>& lists, std::size_t depth = 3);

struct LabelSet {
    int cluster_id = 0;
    std::string display_label;    // top title term by LLR
    std::string alternate_label;  // top title term by tf*idf
    std::map<std::string, std::vector<RankedTerm>> lists;
    Consensus consensus;
    bool no_citers = false;

    bool operator==(const LabelSet&) const = default;
};

struct LabelOptions {
    std::size_t depth = 3;
    /// Entries kept per list in the report; 0 keeps all.
    std::size_t max_terms = 50;
};

/// `citer_docs` are document indices into `index` (records citing at least
/// one cluster member).
LabelSet label_cluster(int cluster_id, const std::vector<std::size_t>& citer_docs, const CorpusIndex& index,
                       const LabelOptions& opts = {});

void to_json(nlohmann::json& j, const RankedTerm& term);
void from_json(const nlohmann::json& j, RankedTerm& term);
void to_json(nlohmann::json& j, const LabelSet& labels);
void from_json(const nlohmann::json& j, LabelSet& labels);

}  // namespace cocite
