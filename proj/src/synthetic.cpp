#include "cocite/synthetic.hpp"

#include "cocite/error.hpp"

#include <cmath>
#include <random>
#include <set>

namespace cocite {
namespace {

const std::vector<std::vector<std::string>> kTopics = {
    {"burst detection", "citation burst", "emerging trend", "burst interval"},
    {"spectral clustering", "normalized cut", "eigenvector embedding", "graph partition"},
    {"author co-citation", "intellectual structure", "factor analysis", "citation image"},
    {"web search engine", "query log", "search session", "relevance feedback"},
    {"h-index", "research evaluation", "citation impact", "bibliometric indicator"},
    {"digital library", "metadata harvesting", "repository service", "open archive"},
    {"information seeking", "user behavior", "sense making", "task complexity"},
    {"scholarly communication", "open access", "journal pricing", "preprint server"},
    {"text summarization", "sentence extraction", "summary evaluation", "topic signature"},
    {"social tagging", "folksonomy structure", "tag recommendation", "bookmark network"},
};

const std::vector<std::string> kCommonPhrases = {"experimental result", "proposed method", "large dataset",
                                                 "empirical study"};

std::string pick(const std::vector<std::string>& v, std::mt19937_64& rng) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

std::string capitalize(std::string s) {
    if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
    return s;
}

CitedReference make_ref(int community, int index, int start_year) {
    CitedReference ref;
    ref.author_key = "SYN" + std::to_string(community) + "AUTHOR" + std::to_string(index) + " A";
    ref.year = start_year - 1 - (index % 20);
    ref.source = "J SYN COMM " + std::to_string(community);
    ref.volume = index + 1;
    ref.page = std::to_string(100 + index);
    ref.ref_key = make_ref_key(ref);
    return ref;
}

}  // namespace

std::vector<std::string> community_vocabulary(int c) {
    if (c < 0) throw InvalidArgument("community_vocabulary: negative community");
    if (static_cast<std::size_t>(c) < kTopics.size()) return kTopics[static_cast<std::size_t>(c)];
    const auto tag = "theme" + std::to_string(c);
    return {tag + " concept", tag + " framework", tag + " measure", tag + " corpus"};
}

int planted_community_of_ref(const std::string& ref_key) {
    if (ref_key.rfind("SYN", 0) != 0) return -1;
    const auto pos = ref_key.find("AUTHOR");
    if (pos == std::string::npos || pos == 3) return -1;
    try {
        return std::stoi(ref_key.substr(3, pos - 3));
    } catch (const std::exception&) {
        return -1;
    }
}

RecordSet generate_corpus(const SyntheticOptions& opts) {
    if (opts.communities < 1 || opts.records_per_community < 1 || opts.refs_per_community < 1 ||
        opts.refs_per_record < 1 || opts.refs_per_record > opts.refs_per_community) {
        throw InvalidArgument("generate_corpus: invalid sizes");
    }
    if (opts.p_in < 0.0 || opts.p_in > 1.0 || opts.end_year < opts.start_year) {
        throw InvalidArgument("generate_corpus: invalid p_in or year range");
    }
    std::mt19937_64 rng(opts.seed);
    std::vector<double> weights(static_cast<std::size_t>(opts.refs_per_community));
    for (std::size_t i = 0; i < weights.size(); ++i) weights[i] = 1.0 / std::pow(static_cast<double>(i + 1), opts.zipf);
    std::discrete_distribution<int> popularity(weights.begin(), weights.end());
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> year_dist(opts.start_year, opts.end_year);
    std::uniform_int_distribution<int> other_dist(0, std::max(0, opts.communities - 2));

    RecordSet out;
    out.provenance.files.push_back("synthetic");
    for (int c = 0; c < opts.communities; ++c) {
        const auto vocab = community_vocabulary(c);
        for (int r = 0; r < opts.records_per_community; ++r) {
            Record rec;
            rec.uid = "SYN-" + std::to_string(c) + "-" + std::to_string(r);
            rec.authors = {"Writer" + std::to_string(c) + "x" + std::to_string(r) + ", A"};
            rec.year = year_dist(rng);
            rec.doc_type = r % 10 == 9 ? DocType::review : DocType::article;
            rec.source = "SYNTHETIC JOURNAL " + std::to_string(c % 3);
            rec.title = capitalize(vocab[0]) + " and " + pick(vocab, rng) + " in " + pick(kCommonPhrases, rng);
            rec.abstract = "We examine " + pick(vocab, rng) + " with " + pick(vocab, rng) + ". The " +
                           pick(kCommonPhrases, rng) + " supports " + pick(vocab, rng) + ". " +
                           capitalize(pick(vocab, rng)) + " remains open.";
            rec.index_terms = {vocab[0], pick(vocab, rng)};
            std::set<std::string> chosen;
            while (static_cast<int>(rec.cited_refs.size()) < opts.refs_per_record) {
                int community = c;
                if (opts.communities > 1 && unit(rng) >= opts.p_in) {
                    community = other_dist(rng);
                    if (community >= c) ++community;
                }
                auto ref = make_ref(community, popularity(rng), opts.start_year);
                if (chosen.insert(ref.ref_key).second) rec.cited_refs.push_back(std::move(ref));
            }
            ++out.provenance.records_read;
            out.records.push_back(std::move(rec));
        }
    }
    return out;
}

}  // namespace cocite
