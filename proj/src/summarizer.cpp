#include "cocite/summarizer.hpp"

#include "cocite/error.hpp"
#include "cocite/text.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cocite {

std::vector<SentenceUnit> sentence_units(std::string_view record_uid, std::string_view abstract) {
    std::vector<SentenceUnit> units;
    int position = 0;
    for (auto& sentence : text::segment_sentences(abstract)) {
        SentenceUnit unit;
        unit.record_uid = std::string(record_uid);
        unit.position = position++;
        for (auto& token : text::content_tokens(sentence)) ++unit.nominal_terms[token];
        unit.text = std::move(sentence);
        units.push_back(std::move(unit));
    }
    return units;
}

std::string_view to_string(Ranker ranker) {
    switch (ranker) {
        case Ranker::energy: return "energy";
        case Ranker::gtf: return "gtf";
        case Ranker::gtf_idf: return "gtf_idf";
    }
    return "energy";
}

Ranker ranker_from_string(std::string_view text) {
    if (text == "energy") return Ranker::energy;
    if (text == "gtf") return Ranker::gtf;
    if (text == "gtf_idf") return Ranker::gtf_idf;
    throw InvalidArgument("unknown ranker '" + std::string(text) + "' (expected energy, gtf or gtf_idf)");
}

std::vector<std::vector<std::int64_t>> overlap_matrix(const std::vector<SentenceUnit>& sentences) {
    const auto n = sentences.size();
    std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            std::int64_t shared = 0;
            for (const auto& [word, f] : sentences[i].nominal_terms) {
                if (sentences[j].nominal_terms.count(word) > 0) ++shared;
            }
            m[i][j] = m[j][i] = shared;
        }
    }
    return m;
}

std::vector<std::int64_t> energy_scores(const std::vector<SentenceUnit>& sentences) {
    // sum_j (M M)_ij = sum_k M_ik R_k with R_k = sum_j M_kj = sum_{w in s_k} df_w,
    // and sum_k M_ik R_k = sum_{w in s_i} sum_{k contains w} R_k.
    std::map<std::string, std::int64_t> df;
    for (const auto& s : sentences) {
        for (const auto& [word, f] : s.nominal_terms) ++df[word];
    }
    std::vector<std::int64_t> row_sum(sentences.size(), 0);
    std::map<std::string, std::int64_t> word_mass;
    for (std::size_t k = 0; k < sentences.size(); ++k) {
        for (const auto& [word, f] : sentences[k].nominal_terms) row_sum[k] += df.at(word);
    }
    for (std::size_t k = 0; k < sentences.size(); ++k) {
        for (const auto& [word, f] : sentences[k].nominal_terms) word_mass[word] += row_sum[k];
    }
    std::vector<std::int64_t> energy(sentences.size(), 0);
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        for (const auto& [word, f] : sentences[i].nominal_terms) energy[i] += word_mass.at(word);
    }
    return energy;
}

namespace {

std::vector<double> weighted_gtf(const std::vector<SentenceUnit>& sentences, bool use_idf) {
    std::map<std::string, double> total_freq;
    std::map<std::string, int> df;
    for (const auto& s : sentences) {
        for (const auto& [word, f] : s.nominal_terms) {
            total_freq[word] += f;
            ++df[word];
        }
    }
    const double n = static_cast<double>(sentences.size());
    std::vector<double> scores(sentences.size(), 0.0);
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        for (const auto& [word, f] : sentences[i].nominal_terms) {
            double contribution = f * total_freq.at(word);
            if (use_idf) {
                const double idf = std::log(n / df.at(word));
                contribution *= idf * idf;
            }
            scores[i] += contribution;
        }
    }
    return scores;
}

}  // namespace

std::vector<double> gtf_scores(const std::vector<SentenceUnit>& sentences) {
    return weighted_gtf(sentences, false);
}

std::vector<double> gtf_idf_scores(const std::vector<SentenceUnit>& sentences) {
    return weighted_gtf(sentences, true);
}

std::vector<RankedSentence> rank_sentences(const std::vector<SentenceUnit>& sentences, Ranker ranker) {
    std::vector<double> scores;
    switch (ranker) {
        case Ranker::energy: {
            const auto e = energy_scores(sentences);
            scores.assign(e.begin(), e.end());
            break;
        }
        case Ranker::gtf: scores = gtf_scores(sentences); break;
        case Ranker::gtf_idf: scores = gtf_idf_scores(sentences); break;
    }
    std::vector<RankedSentence> ranked;
    ranked.reserve(sentences.size());
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        ranked.push_back({sentences[i].record_uid, sentences[i].position, scores[i], sentences[i].text});
    }
    std::sort(ranked.begin(), ranked.end(), [](const RankedSentence& a, const RankedSentence& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.uid != b.uid) return a.uid < b.uid;
        return a.position < b.position;
    });
    return ranked;
}

Summary summarize_cluster(int cluster_id, const std::vector<std::reference_wrapper<const Record>>& citers,
                          std::size_t k, Ranker ranker) {
    Summary summary;
    summary.cluster_id = cluster_id;
    summary.ranker = ranker;
    std::vector<SentenceUnit> pool;
    for (const Record& rec : citers) {
        auto units = sentence_units(rec.uid, rec.abstract);
        pool.insert(pool.end(), std::make_move_iterator(units.begin()), std::make_move_iterator(units.end()));
    }
    if (pool.empty()) {
        summary.no_abstracts = true;
        return summary;
    }
    auto ranked = rank_sentences(pool, ranker);
    if (ranked.size() > k) ranked.resize(k);
    summary.sentences = std::move(ranked);
    return summary;
}

void to_json(nlohmann::json& j, const RankedSentence& sentence) {
    j = nlohmann::json{
        {"uid", sentence.uid}, {"position", sentence.position}, {"score", sentence.score}, {"text", sentence.text}};
}

void from_json(const nlohmann::json& j, RankedSentence& sentence) {
    j.at("uid").get_to(sentence.uid);
    sentence.position = j.value("position", 0);
    j.at("score").get_to(sentence.score);
    j.at("text").get_to(sentence.text);
}

void to_json(nlohmann::json& j, const Summary& summary) {
    j = nlohmann::json{{"cluster_id", summary.cluster_id},
                       {"ranker", to_string(summary.ranker)},
                       {"no_abstracts", summary.no_abstracts},
                       {"sentences", summary.sentences}};
}

void from_json(const nlohmann::json& j, Summary& summary) {
    j.at("cluster_id").get_to(summary.cluster_id);
    summary.ranker = ranker_from_string(j.at("ranker").get<std::string>());
    summary.no_abstracts = j.value("no_abstracts", false);
    j.at("sentences").get_to(summary.sentences);
}

}  // namespace cocite
