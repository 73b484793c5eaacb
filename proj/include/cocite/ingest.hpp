#pragma once

// Field-tagged bibliographic export parsing (Web of Science style) and the
// line-delimited JSON record format used for synthetic corpora.

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cocite {

enum class DocType { article, review, other };

std::string_view to_string(DocType type);
DocType doc_type_from_string(std::string_view text);

/// One entry of a record's CR block: first author, year, source, volume, page.
struct CitedReference {
    std::string author_key;
    std::optional<int> year;
    std::string source;
    std::optional<int> volume;
    std::optional<std::string> page;
    /// Canonical identity "AUTHOR_YEAR_SOURCE_V_P"; absent parts render empty.
    std::string ref_key;

    bool operator==(const CitedReference&) const = default;
};

struct Record {
    std::string uid;
    std::vector<std::string> authors;
    std::optional<int> year;  // nullopt when PY is missing
    std::string title;
    std::string abstract;
    std::vector<std::string> index_terms;
    std::string source;
    DocType doc_type = DocType::other;
    std::vector<CitedReference> cited_refs;

    bool operator==(const Record&) const = default;
};

struct ParseStats {
    std::vector<std::string> files;
    std::size_t records_read = 0;
    std::size_t records_rejected = 0;
    std::size_t lines_skipped = 0;
    std::size_t malformed_cited_refs = 0;
    std::size_t records_without_year = 0;

    bool operator==(const ParseStats&) const = default;
};

/// Immutable after construction; shareable across threads.
struct RecordSet {
    std::vector<Record> records;
    ParseStats provenance;
};

inline constexpr int kMinYear = 1900;
inline constexpr int kMaxYear = 2100;

/// Normalizes a raw author name to "SURNAME INITIALS".
/// "Kuhlthau, C. C." and "KUHLTHAU CC" both map to "KUHLTHAU CC"; name
/// particles collapse into the surname ("van Rijsbergen" -> "VANRIJSBERGEN").
/// Throws InvalidArgument on empty input.
std::string normalize_author(std::string_view raw);

/// Builds the canonical ref_key from the other fields.
std::string make_ref_key(const CitedReference& ref);

/// Parses one CR line ("SMALL H, 1973, J AM SOC INFORM SCI, V24, P265").
/// Returns nullopt when the line has fewer than two segments or no author.
std::optional<CitedReference> parse_cited_reference(std::string_view line);

/// Renders a reference back into CR-line form.
std::string to_cr_line(const CitedReference& ref);

/// Parses the full contents of a field-tagged export. `file_name` is used in
/// error messages and synthesized uids ("GEN-<file>-<ordinal>").
/// Throws ParseError when the header is unreadable.
RecordSet parse_wos_file(std::string_view text, std::string_view file_name = "<memory>");

/// One Record JSON object per non-empty line.
RecordSet parse_jsonl(std::string_view text, std::string_view file_name = "<memory>");
std::string to_jsonl(const std::vector<Record>& records);

/// Reads a file from disk, picking the JSONL reader for ".jsonl"/".ndjson"
/// and the field-tagged reader otherwise.
RecordSet read_records_file(const std::string& path);

/// Concatenates record sets; later duplicates of a uid are rejected and
/// counted in provenance.
RecordSet merge_record_sets(std::vector<RecordSet> sets);

/// Replaces invalid UTF-8 sequences with U+FFFD and drops a leading BOM.
std::string sanitize_utf8(std::string_view bytes);

void to_json(nlohmann::json& j, const CitedReference& ref);
void from_json(const nlohmann::json& j, CitedReference& ref);
void to_json(nlohmann::json& j, const Record& record);
void from_json(const nlohmann::json& j, Record& record);
void to_json(nlohmann::json& j, const ParseStats& stats);
void from_json(const nlohmann::json& j, ParseStats& stats);

}  // namespace cocite
