#pragma once

// Extractive cluster summaries: sentences from the abstracts of a cluster's
// citers ranked by the Enertex energy or its gtf / gtf-idf approximations.

#include "cocite/ingest.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace cocite {

struct SentenceUnit {
    std::string record_uid;
    int position = 0;  // index within its abstract
    std::string text;
    std::map<std::string, int> nominal_terms;  // content word -> frequency

    bool operator==(const SentenceUnit&) const = default;
};

/// Segments an abstract and attaches the content words of each sentence.
std::vector<SentenceUnit> sentence_units(std::string_view record_uid, std::string_view abstract);

enum class Ranker { energy, gtf, gtf_idf };
std::string_view to_string(Ranker ranker);
Ranker ranker_from_string(std::string_view text);

/// M[i][j] = number of content word types shared by sentences i and j.
std::vector<std::vector<std::int64_t>> overlap_matrix(const std::vector<SentenceUnit>& sentences);

/// Row sums of M*M, computed without materializing M.
std::vector<std::int64_t> energy_scores(const std::vector<SentenceUnit>& sentences);
/// sum_w f(w, i) * sum_j f(w, j).
std::vector<double> gtf_scores(const std::vector<SentenceUnit>& sentences);
/// gtf with each word weighted by idf_w^2, idf_w = ln(N / sentence df).
std::vector<double> gtf_idf_scores(const std::vector<SentenceUnit>& sentences);

struct RankedSentence {
    std::string uid;
    int position = 0;
    double score = 0.0;
    std::string text;

    bool operator==(const RankedSentence&) const = default;
};

/// All sentences by descending score; ties by (uid, position).
std::vector<RankedSentence> rank_sentences(const std::vector<SentenceUnit>& sentences, Ranker ranker);

struct Summary {
    int cluster_id = 0;
    Ranker ranker = Ranker::energy;
    std::vector<RankedSentence> sentences;
    bool no_abstracts = false;

    bool operator==(const Summary&) const = default;
};

/// Pools the sentences of every citer abstract and keeps the top k.
Summary summarize_cluster(int cluster_id, const std::vector<std::reference_wrapper<const Record>>& citers,
                          std::size_t k, Ranker ranker);

void to_json(nlohmann::json& j, const RankedSentence& sentence);
void from_json(const nlohmann::json& j, RankedSentence& sentence);
void to_json(nlohmann::json& j, const Summary& summary);
void from_json(const nlohmann::json& j, Summary& summary);

}  // namespace cocite
