#include "cocite/error.hpp"
#include "cocite/ingest.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace cocite;

TEST_CASE("author normalization") {
    CHECK(normalize_author("Kuhlthau, C. C.") == "KUHLTHAU CC");
    CHECK(normalize_author("KUHLTHAU CC") == "KUHLTHAU CC");
    CHECK(normalize_author("van Rijsbergen, C. J.") == "VANRIJSBERGEN CJ");
    CHECK(normalize_author("McCain KW") == "MCCAIN KW");
    CHECK_THROWS_AS(normalize_author("   "), InvalidArgument);
}

TEST_CASE("cited reference parsing") {
    const auto ref = parse_cited_reference("SMALL H, 1973, J AM SOC INFORM SCI, V24, P265");
    REQUIRE(ref);
    CHECK(ref->author_key == "SMALL H");
    CHECK(ref->year == 1973);
    CHECK(ref->source == "J AM SOC INFORM SCI");
    CHECK(ref->volume == 24);
    CHECK(ref->page == "265");
    CHECK(ref->ref_key == "SMALL H_1973_J AM SOC INFORM SCI_24_265");

    const auto doi = parse_cited_reference("GIRVAN M, 2002, P NATL ACAD SCI USA, V99, P7821, DOI 10.1073/pnas.122653799");
    REQUIRE(doi);
    CHECK(doi->page == "7821");
    CHECK(doi->volume == 99);

    const auto short_ref = parse_cited_reference("GARFIELD E, 1979, CITATION INDEXING");
    REQUIRE(short_ref);
    CHECK(!short_ref->volume);
    CHECK(!short_ref->page);
    CHECK(short_ref->ref_key == "GARFIELD E_1979_CITATION INDEXING__");

    CHECK(!parse_cited_reference("SMALL H"));
    CHECK(!parse_cited_reference(", 1973, X"));
}

TEST_CASE("CR line round trip") {
    const auto ref = parse_cited_reference("SMALL H, 1973, J AM SOC INFORM SCI, V24, P265");
    REQUIRE(ref);
    CHECK(parse_cited_reference(to_cr_line(*ref)) == ref);
}

TEST_CASE("golden export parses to the hand-written records") {
    const auto set = parse_wos_file(testsupport::read_fixture("golden_export.txt"), "golden_export.txt");
    const auto golden = parse_jsonl(testsupport::read_fixture("golden_export.jsonl"), "golden_export.jsonl");
    REQUIRE(set.records.size() == golden.records.size());
    for (std::size_t i = 0; i < set.records.size(); ++i) {
        INFO(set.records[i].uid);
        CHECK(set.records[i] == golden.records[i]);
    }
    CHECK(set.provenance.records_read == 5);
    CHECK(set.provenance.records_rejected == 0);
    CHECK(set.provenance.lines_skipped == 0);
    CHECK(set.provenance.malformed_cited_refs == 1);
    CHECK(set.records[4].uid == "GEN-golden_export.txt-5");
    CHECK(set.records[4].doc_type == DocType::review);
}

TEST_CASE("JSONL round trip is lossless") {
    const auto set = parse_wos_file(testsupport::read_fixture("golden_export.txt"), "golden_export.txt");
    const auto text = to_jsonl(set.records);
    const auto back = parse_jsonl(text);
    CHECK(back.records == set.records);
    CHECK(to_jsonl(back.records) == text);
}

TEST_CASE("unreadable header is a parse error") {
    CHECK_THROWS_AS(parse_wos_file("garbage\nmore garbage\n", "bad.txt"), ParseError);
}

TEST_CASE("duplicate uids and out-of-range years are rejected") {
    const std::string text =
        "FN Test\nVR 1.0\n"
        "PT J\nAU A, B\nTI One\nPY 2001\nUT X1\nER\n"
        "PT J\nAU A, B\nTI Two\nPY 2002\nUT X1\nER\n"
        "PT J\nAU A, B\nTI Three\nPY 1800\nUT X3\nER\n"
        "PT J\nAU A, B\nTI Four\nUT X4\nER\nEF\n";
    const auto set = parse_wos_file(text, "t.txt");
    CHECK(set.records.size() == 2);
    CHECK(set.provenance.records_read == 2);
    CHECK(set.provenance.records_read + set.provenance.records_rejected == 4);
    CHECK(set.provenance.records_rejected == 2);
    CHECK(set.provenance.records_without_year == 1);
    CHECK(!set.records[1].year);
}

TEST_CASE("merging record sets drops later duplicates") {
    const auto set = parse_wos_file(testsupport::read_fixture("golden_export.txt"), "golden_export.txt");
    std::vector<RecordSet> sets{set, set};
    const auto merged = merge_record_sets(sets);
    CHECK(merged.records.size() == set.records.size());
    CHECK(merged.provenance.records_rejected == set.records.size());
}

TEST_CASE("invalid UTF-8 is replaced, BOM dropped") {
    CHECK(sanitize_utf8("\xEF\xBB\xBF" "abc") == "abc");
    CHECK(sanitize_utf8("a\xFF" "b") == "a\xEF\xBF\xBD" "b");
    CHECK(sanitize_utf8("caf\xC3\xA9") == "caf\xC3\xA9");
}
