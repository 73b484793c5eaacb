#pragma once

// Seeded synthetic corpora with planted communities: each record belongs to
// one community, cites mostly that community's references and draws its
// title, abstract and index terms from that community's vocabulary.

#include "cocite/ingest.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cocite {

struct SyntheticOptions {
    int communities = 10;
    int records_per_community = 30;
    int refs_per_community = 60;
    int refs_per_record = 12;
    double p_in = 0.9;  // chance a citation stays inside the record's community
    /// Popularity skew within a community: weight of the i-th reference is 1 / (i + 1)^zipf.
    double zipf = 0.8;
    int start_year = 2000;
    int end_year = 2009;
    std::uint64_t seed = 1;
};

/// Deterministic for a given options value. Record uids are "SYN-<community>-<index>".
RecordSet generate_corpus(const SyntheticOptions& opts);

/// The planted community of a generated reference key, or -1.
int planted_community_of_ref(const std::string& ref_key);

/// The vocabulary phrases of community c (first entry is its signature phrase).
std::vector<std::string> community_vocabulary(int c);

}  // namespace cocite
