#include "cocite/error.hpp"
#include "cocite/labeling.hpp"
#include "cocite/synthetic.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace cocite;
using namespace testsupport;

namespace {

Record doc(std::string uid, std::string title, std::string abstract = "", std::vector<std::string> terms = {}) {
    Record r;
    r.uid = std::move(uid);
    r.year = 2005;
    r.title = std::move(title);
    r.abstract = std::move(abstract);
    r.index_terms = std::move(terms);
    return r;
}

std::vector<Record> two_topic_corpus() {
    std::vector<Record> records;
    for (int i = 0; i < 10; ++i) {
        records.push_back(doc("A" + std::to_string(i), "Spectral clustering of citation data",
                              "Spectral clustering finds groups. Citation data are sparse.", {"Spectral Clustering"}));
    }
    for (int i = 0; i < 10; ++i) {
        records.push_back(doc("B" + std::to_string(i), "Burst detection in citation data",
                              "Burst detection finds surges. Citation data are noisy.", {"Burst Detection"}));
    }
    return records;
}

std::vector<std::size_t> range(std::size_t from, std::size_t to) {
    std::vector<std::size_t> v;
    for (auto i = from; i < to; ++i) v.push_back(i);
    return v;
}

}  // namespace

TEST_CASE("tf-idf arithmetic") {
    const auto r = rank_tfidf({{"x", 1, 10, 3}}, 100);
    REQUIRE(r.size() == 1);
    CHECK(r[0].score == doctest::Approx(3.0 * std::log(10.0)).epsilon(1e-15));
    CHECK(r[0].score == doctest::Approx(6.9078).epsilon(1e-4));
    CHECK(rank_tfidf({{"everywhere", 5, 100, 7}}, 100)[0].score == 0.0);
    CHECK_THROWS_AS(rank_tfidf({}, 0), InvalidArgument);
}

TEST_CASE("LLR: proportional table gives 0, exclusive 10/10 vs 0/90 gives the hand value") {
    CHECK(std::fabs(log_likelihood_ratio(5, 45, 5, 45)) <= 1e-9);
    CHECK(std::fabs(log_likelihood_ratio(2, 18, 8, 72)) <= 1e-9);
    const double hand = 2.0 * (10.0 * std::log(10.0 / 1.0) + 90.0 * std::log(90.0 / 81.0));
    const double g2 = log_likelihood_ratio(10, 0, 0, 90);
    CHECK(std::fabs(g2 - hand) <= 0.01);
    CHECK(std::fabs(g2 - 65.02) <= 0.01);
    const auto ranked = rank_llr({{"x", 10, 10, 10}}, 10, 90);
    REQUIRE(ranked.size() == 1);
    CHECK(ranked[0].significant);
}

TEST_CASE("LLR critical value matches an independent chi-square inverse") {
    CHECK(std::fabs(chi2_1df_critical(0.0001) - kLlrCritical) <= 0.01);
}

TEST_CASE("significant flag is exactly G2 >= critical") {
    std::mt19937_64 rng(5);
    std::vector<TermStats> stats;
    for (int i = 0; i < 200; ++i) {
        const int in = static_cast<int>(rng() % 11);
        const int out = static_cast<int>(rng() % 30);
        if (in + out == 0) continue;
        stats.push_back({"t" + std::to_string(i), in, in + out, in});
    }
    for (const auto& t : rank_llr(stats, 10, 90)) CHECK(t.significant == (t.score >= kLlrCritical));
}

TEST_CASE("LLR and MI keep only overrepresented terms") {
    const std::vector<TermStats> stats = {{"over", 5, 10, 5}, {"under", 1, 50, 1}, {"even", 1, 10, 1}};
    const auto llr = rank_llr(stats, 10, 90);
    REQUIRE(llr.size() == 1);
    CHECK(llr[0].term == "over");
    const auto mi = rank_mi(stats, 10, 90);
    REQUIRE(mi.size() == 1);
    CHECK(mi[0].term == "over");
}

TEST_CASE("MI: independence near zero, exclusive term maximal, equals the four-cell oracle") {
    CHECK(std::fabs(mutual_information(5, 45, 5, 45)) <= 1e-3);
    std::mt19937_64 rng(9);
    std::vector<TermStats> stats = {{"exclusive", 10, 10, 10}};
    for (int i = 0; i < 50; ++i) {
        const int in = 1 + static_cast<int>(rng() % 10);
        const int out = static_cast<int>(rng() % 60);
        stats.push_back({"t" + std::to_string(i), in, in + out, in});
    }
    const auto ranked = rank_mi(stats, 10, 90);
    REQUIRE(!ranked.empty());
    CHECK(ranked[0].term == "exclusive");
    for (const auto& r : ranked) {
        const auto it = std::find_if(stats.begin(), stats.end(), [&](const TermStats& t) { return t.term == r.term; });
        const double want = mi_oracle(it->df_cluster, it->df_corpus - it->df_cluster, 10, 90);
        CHECK(std::fabs(r.score - want) <= 1e-12);
    }
}

TEST_CASE("consensus r values") {
    std::map<std::string, std::vector<RankedTerm>> lists;
    for (const auto s : kTermSources) {
        for (const auto a : kRankAlgos) {
            lists[method_name(s, a)] = {{"shared", 3.0, false}, {"only " + method_name(s, a), 2.0, false}};
        }
    }
    const auto c = consensus_scores(lists);
    CHECK(c.r.at("shared") == 0.9);
    CHECK(c.r.at("only title.llr") == 0.1);
    for (const auto& [term, r] : c.r) {
        CHECK(r >= 0.1);
        CHECK(r <= 0.9);
        CHECK(std::fabs(r * 10.0 - std::round(r * 10.0)) < 1e-12);
    }
}

TEST_CASE("title LLR reported first when it accumulates the most agreement") {
    auto t = [](std::vector<std::string> terms) {
        std::vector<RankedTerm> out;
        double s = 10.0;
        for (auto& term : terms) out.push_back({term, s--, false});
        return out;
    };
    std::map<std::string, std::vector<RankedTerm>> lists = {
        {"title.tfidf", t({"a", "x1", "x2"})},   {"title.llr", t({"a", "b", "c"})},
        {"title.mi", t({"m1", "m2", "m3"})},     {"abstract.tfidf", t({"p1", "p2", "p3"})},
        {"abstract.llr", t({"b", "y1", "y2"})},  {"abstract.mi", t({"q1", "q2", "q3"})},
        {"index.tfidf", t({"r1", "r2", "r3"})},  {"index.llr", t({"c", "z1", "z2"})},
        {"index.mi", t({"s1", "s2", "s3"})},
    };
    const auto c = consensus_scores(lists);
    REQUIRE(c.reliability.size() == 9);
    CHECK(c.reliability[0].method == "title.llr");
    CHECK(c.reliability[0].reliability == doctest::Approx(0.6));
}

TEST_CASE("planted vocabularies label the right clusters") {
    const auto records = two_topic_corpus();
    const auto index = build_corpus_index(records);
    const auto a = label_cluster(0, range(0, 10), index);
    const auto b = label_cluster(1, range(10, 20), index);
    CHECK(a.display_label == "spectral clustering");
    CHECK(b.display_label == "burst detection");
    CHECK(a.alternate_label == "spectral clustering");
    CHECK(a.lists.at("index.llr").front().term == "spectral clustering");
    // shared phrase is not overrepresented anywhere
    for (const auto& t : a.lists.at("title.llr")) CHECK(t.term != "citation data");
    CHECK(a.lists.at("title.tfidf").front().term == a.lists.at("title.llr").front().term);
}

TEST_CASE("planted phrase ranks first by tf-idf in a synthetic corpus") {
    SyntheticOptions o;
    o.communities = 2;
    o.records_per_community = 15;
    o.seed = 3;
    const auto corpus = generate_corpus(o);
    const auto index = build_corpus_index(corpus.records);
    const auto labels = label_cluster(0, range(0, 15), index);
    CHECK(labels.lists.at("title.tfidf").front().term == community_vocabulary(0)[0]);
    CHECK(labels.display_label == community_vocabulary(0)[0]);
}

TEST_CASE("missing abstracts leave abstract lists empty") {
    auto records = two_topic_corpus();
    for (auto& r : records) r.abstract.clear();
    const auto index = build_corpus_index(records);
    const auto labels = label_cluster(0, range(0, 10), index);
    CHECK(labels.lists.at("abstract.tfidf").empty());
    CHECK(labels.lists.at("abstract.llr").empty());
    CHECK(!labels.lists.at("title.llr").empty());
    CHECK(!labels.lists.at("index.tfidf").empty());
}

TEST_CASE("citer-less cluster is flagged") {
    const auto index = build_corpus_index(two_topic_corpus());
    const auto labels = label_cluster(3, {}, index);
    CHECK(labels.no_citers);
    CHECK(labels.display_label.empty());
    CHECK(labels.lists.size() == 9);
    for (const auto& [method, list] : labels.lists) CHECK(list.empty());
}

TEST_CASE("labels are stable under record reordering") {
    auto records = two_topic_corpus();
    const auto index = build_corpus_index(records);
    const auto before = label_cluster(0, range(0, 10), index);
    std::reverse(records.begin(), records.end());
    const auto index2 = build_corpus_index(records);
    const auto after = label_cluster(0, range(10, 20), index2);
    CHECK(before.lists == after.lists);
    CHECK(before.consensus == after.consensus);
}

TEST_CASE("label JSON round trip") {
    const auto index = build_corpus_index(two_topic_corpus());
    const auto labels = label_cluster(0, range(0, 10), index);
    const nlohmann::json j = labels;
    CHECK(j.at("display_label") == "spectral clustering");
    CHECK(j.at("lists").contains("title.llr"));
    CHECK(j.get<LabelSet>() == labels);
}
