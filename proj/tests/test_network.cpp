#include "cocite/error.hpp"
#include "cocite/network.hpp"
#include "cocite/synthetic.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace cocite;
using namespace testsupport;

namespace {

RecordSet small_corpus() {
    SyntheticOptions o;
    o.communities = 3;
    o.records_per_community = 10;
    o.refs_per_community = 12;
    o.refs_per_record = 5;
    o.seed = 7;
    return generate_corpus(o);
}

}  // namespace

TEST_CASE("similarity spot values") {
    CHECK(similarity(SimilarityMeasure::cosine, 4, 9, 3) == 0.5);
    CHECK(similarity(SimilarityMeasure::dice, 4, 9, 3) == doctest::Approx(6.0 / 13.0).epsilon(1e-15));
    CHECK(similarity(SimilarityMeasure::jaccard, 4, 9, 3) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(similarity(SimilarityMeasure::cosine, 5, 5, 5) == 1.0);
    CHECK_THROWS_AS(similarity(SimilarityMeasure::cosine, 0, 3, 0), InvalidArgument);
}

TEST_CASE("every link weight equals the set-intersection oracle") {
    const auto corpus = small_corpus();
    REQUIRE(corpus.records.size() == 30);
    for (const auto unit : {Unit::cited_reference, Unit::cited_author}) {
        for (const auto m : {SimilarityMeasure::cosine, SimilarityMeasure::dice, SimilarityMeasure::jaccard}) {
            const auto slices = slice_records(corpus, 2000, 2009, 10);
            REQUIRE(slices.size() == 1);
            const auto keys = select_top_cited(slices[0], 1000, unit);
            const auto net = build_network(slices[0], keys, unit, m);
            std::size_t expected_links = 0;
            for (std::size_t i = 0; i < net.nodes.size(); ++i) {
                const auto ci = citers_of(corpus.records, net.nodes[i].key, unit);
                CHECK(net.citers[i] == ci);
                for (std::size_t j = i + 1; j < net.nodes.size(); ++j) {
                    const auto cj = citers_of(corpus.records, net.nodes[j].key, unit);
                    const double w = oracle_weight(m, ci, cj);
                    const auto it = std::find_if(net.links.begin(), net.links.end(),
                                                 [&](const Link& l) { return l.i == i && l.j == j; });
                    if (w == 0.0) {
                        CHECK(it == net.links.end());
                        continue;
                    }
                    ++expected_links;
                    REQUIRE(it != net.links.end());
                    CHECK(std::fabs(it->weight - w) <= 1e-12);
                }
            }
            CHECK(net.links.size() == expected_links);
        }
    }
}

TEST_CASE("slices cover the range; the last may be shorter") {
    const auto corpus = small_corpus();
    const auto slices = slice_records(corpus, 2000, 2009, 3);
    REQUIRE(slices.size() == 4);
    CHECK(slices.back().start_year == 2009);
    CHECK(slices.back().end_year == 2009);
    std::size_t total = 0;
    for (const auto& s : slices) {
        total += s.records.size();
        for (const Record& r : s.records) CHECK((*r.year >= s.start_year && *r.year <= s.end_year));
    }
    CHECK(total == corpus.records.size());
    CHECK_THROWS_AS(slice_records(corpus, 2000, 2009, 0), InvalidArgument);
}

TEST_CASE("top cited ordering: count, first year, key") {
    RecordSet set;
    auto mk = [](std::string uid, int year, std::vector<std::string> keys) {
        Record r;
        r.uid = std::move(uid);
        r.year = year;
        for (auto& k : keys) {
            CitedReference ref;
            ref.author_key = k;
            ref.year = 1990;
            ref.source = "S";
            ref.ref_key = make_ref_key(ref);
            r.cited_refs.push_back(ref);
        }
        return r;
    };
    set.records = {mk("a", 2001, {"B X", "C X"}), mk("b", 2000, {"A X", "D X"}), mk("c", 2001, {"A X", "B X"})};
    const auto slices = slice_records(set, 2000, 2001, 2);
    CHECK(select_top_cited(slices[0], 10, Unit::cited_author) ==
          std::vector<std::string>{"A X", "B X", "D X", "C X"});
    CHECK(select_top_cited(slices[0], 1, Unit::cited_author) == std::vector<std::string>{"A X"});
}

TEST_CASE("merging slices reweights from pooled citers") {
    const auto corpus = small_corpus();
    const auto unit = Unit::cited_reference;
    std::vector<CoCitationNetwork> parts;
    for (const auto& s : slice_records(corpus, 2000, 2009, 2)) {
        parts.push_back(build_network(s, select_top_cited(s, 1000, unit), unit, SimilarityMeasure::cosine));
    }
    const auto merged = merge_networks(parts);
    const auto whole_slice = slice_records(corpus, 2000, 2009, 10);
    const auto whole = build_network(whole_slice[0], select_top_cited(whole_slice[0], 1000, unit), unit,
                                     SimilarityMeasure::cosine);
    REQUIRE(merged.nodes.size() == whole.nodes.size());
    CHECK(merged.citers == whole.citers);
    CHECK(merged.links.size() == whole.links.size());
    for (const auto& l : merged.links) {
        const auto it = std::find_if(whole.links.begin(), whole.links.end(),
                                     [&](const Link& w) { return w.i == l.i && w.j == l.j; });
        REQUIRE(it != whole.links.end());
        CHECK(l.weight == it->weight);
        CHECK(l.raw_count == it->raw_count);
        CHECK(l.first_slice_year >= 2000);
    }
    for (std::size_t i = 0; i < merged.nodes.size(); ++i) {
        CHECK(merged.nodes[i].total_citations() == whole.nodes[i].total_citations());
        CHECK(merged.nodes[i].first_cited_year == whole.nodes[i].first_cited_year);
    }
    auto mixed = parts;
    mixed.back().measure = SimilarityMeasure::dice;
    CHECK_THROWS_AS(merge_networks(mixed), InvalidArgument);
}

TEST_CASE("edge list round trip keeps links and isolated nodes") {
    const auto corpus = small_corpus();
    const auto s = slice_records(corpus, 2000, 2009, 10)[0];
    auto keys = select_top_cited(s, 1000, Unit::cited_reference);
    keys.push_back("UNCITED_1999_X__");
    const auto net = build_network(s, keys, Unit::cited_reference, SimilarityMeasure::jaccard);
    const auto back = read_edge_list(write_edge_list(net));
    REQUIRE(back.nodes.size() == net.nodes.size());
    REQUIRE(back.links.size() == net.links.size());
    for (std::size_t i = 0; i < net.links.size(); ++i) CHECK(back.links[i] == net.links[i]);
    CHECK(back.measure == SimilarityMeasure::jaccard);
    CHECK_THROWS_AS(read_edge_list("cited_author cosine\na\tb\tx\t1\t2000\n"), ParseError);
}

TEST_CASE("link weights are symmetric in [0, 1] (property)") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SyntheticOptions o;
        o.communities = 4;
        o.records_per_community = 8;
        o.seed = seed;
        const auto corpus = generate_corpus(o);
        const auto s = slice_records(corpus, 2000, 2009, 10)[0];
        const auto net = build_network(s, select_top_cited(s, 60, Unit::cited_reference), Unit::cited_reference,
                                       SimilarityMeasure::cosine);
        for (const auto& l : net.links) {
            CHECK(l.i < l.j);
            CHECK(l.weight > 0.0);
            CHECK(l.weight <= 1.0 + 1e-15);
            CHECK(l.raw_count >= 1);
        }
    }
}
