#include "cocite/ingest.hpp"

#include "cocite/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace cocite {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::string upper_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    }
    return out;
}

std::string collapse_spaces(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending = false;
    for (char c : trim(s)) {
        if (is_space(c)) {
            pending = true;
            continue;
        }
        if (pending && !out.empty()) out.push_back(' ');
        pending = false;
        out.push_back(c);
    }
    return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(s.substr(start));
            break;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

std::optional<int> parse_int(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    int value = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return value;
}

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool has_lower(std::string_view s) {
    return std::any_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

// Surname characters kept: letters (including non-ASCII bytes), digits,
// hyphens and apostrophes. Spaces collapse particles into the surname.
std::string clean_surname(std::string_view s) {
    std::string out;
    for (char c : s) {
        const auto u = static_cast<unsigned char>(c);
        if (std::isalnum(u) || u >= 0x80 || c == '-' || c == '\'') out.push_back(c);
    }
    return upper_ascii(out);
}

// "C. C." -> "CC", "CJ" -> "CJ", "Carol C." -> "CC", "Jean-Pierre" -> "JP".
std::string initials_from(std::string_view given) {
    std::string out;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        if (token.size() > 1 && has_lower(token)) {
            out.push_back(token.front());
        } else {
            out += token;
        }
        token.clear();
    };
    for (char c : given) {
        const auto u = static_cast<unsigned char>(c);
        if (std::isalnum(u) || u >= 0x80) {
            token.push_back(c);
        } else {
            flush();
        }
    }
    flush();
    return upper_ascii(out);
}

struct RawRecord {
    std::map<std::string, std::vector<std::string>> fields;
    std::size_t line_count = 0;
};

std::string join_field(const RawRecord& raw, const std::string& tag) {
    const auto it = raw.fields.find(tag);
    if (it == raw.fields.end()) return {};
    std::string out;
    for (const auto& line : it->second) {
        const auto piece = trim(line);
        if (piece.empty()) continue;
        if (!out.empty()) out.push_back(' ');
        out += piece;
    }
    return collapse_spaces(out);
}

std::vector<std::string> field_lines(const RawRecord& raw, const std::string& tag) {
    std::vector<std::string> out;
    const auto it = raw.fields.find(tag);
    if (it == raw.fields.end()) return out;
    for (const auto& line : it->second) {
        auto piece = collapse_spaces(line);
        if (!piece.empty()) out.push_back(std::move(piece));
    }
    return out;
}

void append_terms(std::vector<std::string>& terms, const std::string& joined) {
    for (auto part : split(joined, ';')) {
        auto term = collapse_spaces(part);
        if (!term.empty()) terms.push_back(std::move(term));
    }
}

DocType map_doc_type(const std::string& dt) {
    if (dt.empty()) return DocType::other;
    const auto first = upper_ascii(trim(split(dt, ';').front()));
    if (first == "ARTICLE") return DocType::article;
    if (first == "REVIEW") return DocType::review;
    return DocType::other;
}

bool valid_year(int year) { return year >= kMinYear && year <= kMaxYear; }

}  // namespace

std::string_view to_string(DocType type) {
    switch (type) {
        case DocType::article: return "article";
        case DocType::review: return "review";
        case DocType::other: return "other";
    }
    return "other";
}

DocType doc_type_from_string(std::string_view text) {
    const auto up = upper_ascii(trim(text));
    if (up == "ARTICLE") return DocType::article;
    if (up == "REVIEW") return DocType::review;
    return DocType::other;
}

std::string sanitize_utf8(std::string_view bytes) {
    static constexpr std::string_view kReplacement = "\xEF\xBF\xBD";
    if (bytes.substr(0, 3) == "\xEF\xBB\xBF") bytes.remove_prefix(3);
    std::string out;
    out.reserve(bytes.size());
    std::size_t i = 0;
    while (i < bytes.size()) {
        const auto c = static_cast<unsigned char>(bytes[i]);
        if (c < 0x80) {
            out.push_back(static_cast<char>(c));
            ++i;
            continue;
        }
        std::size_t len = 0;
        unsigned min_cp = 0;
        unsigned cp = 0;
        if ((c & 0xE0) == 0xC0) {
            len = 2; cp = c & 0x1F; min_cp = 0x80;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3; cp = c & 0x0F; min_cp = 0x800;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4; cp = c & 0x07; min_cp = 0x10000;
        }
        bool ok = len != 0 && i + len <= bytes.size();
        for (std::size_t k = 1; ok && k < len; ++k) {
            const auto cc = static_cast<unsigned char>(bytes[i + k]);
            if ((cc & 0xC0) != 0x80) {
                ok = false;
            } else {
                cp = (cp << 6) | (cc & 0x3F);
            }
        }
        if (ok && (cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))) ok = false;
        if (ok) {
            out.append(bytes.substr(i, len));
            i += len;
        } else {
            out.append(kReplacement);
            ++i;
        }
    }
    return out;
}

std::string normalize_author(std::string_view raw) {
    auto text = trim(raw);
    while (!text.empty() && (text.back() == '.' || text.back() == ',' || text.back() == ';')) {
        text.remove_suffix(1);
        text = trim(text);
    }
    if (text.empty()) throw InvalidArgument("normalize_author: empty author name");

    std::string surname;
    std::string initials;
    if (const auto comma = text.find(','); comma != std::string_view::npos) {
        surname = clean_surname(text.substr(0, comma));
        initials = initials_from(text.substr(comma + 1));
    } else {
        const auto owned = collapse_spaces(text);
        std::vector<std::string_view> tokens;
        for (auto tok : split(owned, ' ')) {
            if (!tok.empty()) tokens.push_back(tok);
        }
        if (tokens.size() == 1) {
            surname = clean_surname(tokens.front());
        } else {
            std::string joined;
            for (std::size_t i = 0; i + 1 < tokens.size(); ++i) joined += tokens[i];
            surname = clean_surname(joined);
            initials = initials_from(tokens.back());
        }
    }
    if (surname.empty()) throw InvalidArgument("normalize_author: no surname in '" + std::string(raw) + "'");
    return initials.empty() ? surname : surname + " " + initials;
}

std::string make_ref_key(const CitedReference& ref) {
    std::string key = ref.author_key;
    key += '_';
    if (ref.year) key += std::to_string(*ref.year);
    key += '_';
    key += ref.source;
    key += '_';
    if (ref.volume) key += std::to_string(*ref.volume);
    key += '_';
    if (ref.page) key += *ref.page;
    return key;
}

std::optional<CitedReference> parse_cited_reference(std::string_view line) {
    const auto segments = split(trim(line), ',');
    if (segments.size() < 2) return std::nullopt;

    CitedReference ref;
    try {
        ref.author_key = normalize_author(segments[0]);
    } catch (const InvalidArgument&) {
        return std::nullopt;
    }

    std::size_t next = 1;
    if (const auto y = trim(segments[1]); all_digits(y)) {
        ref.year = parse_int(y);
        next = 2;
    }
    bool source_seen = false;
    for (std::size_t i = next; i < segments.size(); ++i) {
        const auto seg = trim(segments[i]);
        if (seg.empty()) continue;
        const auto up = upper_ascii(seg);
        if (up.size() > 1 && up[0] == 'V' && all_digits(std::string_view(up).substr(1))) {
            if (!ref.volume) ref.volume = parse_int(std::string_view(up).substr(1));
            continue;
        }
        const bool no_space = up.find(' ') == std::string::npos;
        const bool has_digit = std::any_of(up.begin(), up.end(), [](char c) { return c >= '0' && c <= '9'; });
        if (up.size() > 1 && up[0] == 'P' && no_space && has_digit) {
            if (!ref.page) ref.page = std::string(seg.substr(1));
            continue;
        }
        if (up.rfind("DOI ", 0) == 0 || up == "DOI") continue;
        if (!source_seen) {
            ref.source = collapse_spaces(up);
            source_seen = true;
        }
    }
    ref.ref_key = make_ref_key(ref);
    return ref;
}

std::string to_cr_line(const CitedReference& ref) {
    std::string line = ref.author_key;
    if (ref.year) line += ", " + std::to_string(*ref.year);
    if (!ref.source.empty()) line += ", " + ref.source;
    if (ref.volume) line += ", V" + std::to_string(*ref.volume);
    if (ref.page) line += ", P" + *ref.page;
    return line;
}

RecordSet parse_wos_file(std::string_view input, std::string_view file_name) {
    const std::string text = sanitize_utf8(input);
    RecordSet out;
    out.provenance.files.emplace_back(file_name);
    auto& stats = out.provenance;

    std::vector<std::string_view> lines;
    for (auto line : split(text, '\n')) {
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
    }

    const auto first = std::find_if(lines.begin(), lines.end(), [](std::string_view l) { return !trim(l).empty(); });
    if (first == lines.end()) {
        throw ParseError(std::string(file_name) + ": unreadable header (file is empty)");
    }
    {
        const auto head = *first;
        const bool ok = head.size() >= 2 && (head.substr(0, 2) == "FN" || head.substr(0, 2) == "PT") &&
                        (head.size() == 2 || head[2] == ' ');
        if (!ok) {
            throw ParseError(std::string(file_name) + ": unreadable header, expected FN or PT, got '" +
                             std::string(head.substr(0, 40)) + "'");
        }
    }

    std::set<std::string> seen_uids;
    std::optional<RawRecord> current;
    std::string current_tag;
    std::size_t er_count = 0;

    auto finalize = [&](RawRecord raw) {
        ++er_count;
        Record rec;
        rec.uid = join_field(raw, "UT");
        if (rec.uid.empty()) rec.uid = "GEN-" + std::string(file_name) + "-" + std::to_string(er_count);
        rec.authors = field_lines(raw, "AU");
        rec.title = join_field(raw, "TI");
        rec.abstract = join_field(raw, "AB");
        append_terms(rec.index_terms, join_field(raw, "DE"));
        append_terms(rec.index_terms, join_field(raw, "ID"));
        rec.source = join_field(raw, "SO");
        rec.doc_type = map_doc_type(join_field(raw, "DT"));
        if (const auto py = join_field(raw, "PY"); !py.empty()) {
            rec.year = parse_int(py);
        }
        for (const auto& cr : field_lines(raw, "CR")) {
            auto ref = parse_cited_reference(cr);
            if (!ref || !ref->year) {
                ++stats.malformed_cited_refs;
                continue;
            }
            rec.cited_refs.push_back(std::move(*ref));
        }
        if ((rec.year && !valid_year(*rec.year)) || !seen_uids.insert(rec.uid).second) {
            ++stats.records_rejected;
            return;
        }
        if (!rec.year) ++stats.records_without_year;
        ++stats.records_read;
        out.records.push_back(std::move(rec));
    };

    for (const auto line : lines) {
        if (trim(line).empty()) continue;
        if (line.size() >= 3 && line.substr(0, 3) == "   ") {
            if (current && !current_tag.empty()) {
                current->fields[current_tag].emplace_back(line.substr(3));
                ++current->line_count;
            } else {
                ++stats.lines_skipped;
            }
            continue;
        }
        const bool tagged = line.size() >= 2 && std::isupper(static_cast<unsigned char>(line[0])) &&
                            std::isalnum(static_cast<unsigned char>(line[1])) &&
                            (line.size() == 2 || line[2] == ' ');
        if (!tagged) {
            ++stats.lines_skipped;
            current_tag.clear();
            continue;
        }
        const std::string tag(line.substr(0, 2));
        const auto value = line.size() > 3 ? line.substr(3) : std::string_view{};
        if (tag == "EF") {
            if (current) {
                stats.lines_skipped += current->line_count;
                current.reset();
            }
            break;
        }
        if (tag == "PT") {
            if (current) stats.lines_skipped += current->line_count;
            current = RawRecord{};
            current->line_count = 1;
            current_tag.clear();
            continue;
        }
        if (tag == "ER") {
            if (current) {
                finalize(std::move(*current));
                current.reset();
            } else {
                ++stats.lines_skipped;
            }
            current_tag.clear();
            continue;
        }
        if (!current) {
            if (tag != "FN" && tag != "VR") ++stats.lines_skipped;
            current_tag.clear();
            continue;
        }
        current_tag = tag;
        current->fields[tag].emplace_back(value);
        ++current->line_count;
    }
    if (current) stats.lines_skipped += current->line_count;
    return out;
}

void to_json(nlohmann::json& j, const CitedReference& ref) {
    j = nlohmann::json{{"author_key", ref.author_key},
                       {"year", ref.year ? nlohmann::json(*ref.year) : nlohmann::json(nullptr)},
                       {"source", ref.source},
                       {"volume", ref.volume ? nlohmann::json(*ref.volume) : nlohmann::json(nullptr)},
                       {"page", ref.page ? nlohmann::json(*ref.page) : nlohmann::json(nullptr)},
                       {"ref_key", ref.ref_key}};
}

void from_json(const nlohmann::json& j, CitedReference& ref) {
    if (j.is_string()) {
        auto parsed = parse_cited_reference(j.get<std::string>());
        if (!parsed) throw ParseError("malformed cited reference '" + j.get<std::string>() + "'");
        ref = std::move(*parsed);
        return;
    }
    ref = CitedReference{};
    ref.author_key = normalize_author(j.at("author_key").get<std::string>());
    if (const auto it = j.find("year"); it != j.end() && !it->is_null()) ref.year = it->get<int>();
    if (const auto it = j.find("source"); it != j.end()) ref.source = collapse_spaces(upper_ascii(it->get<std::string>()));
    if (const auto it = j.find("volume"); it != j.end() && !it->is_null()) ref.volume = it->get<int>();
    if (const auto it = j.find("page"); it != j.end() && !it->is_null()) ref.page = it->get<std::string>();
    ref.ref_key = make_ref_key(ref);
}

void to_json(nlohmann::json& j, const Record& record) {
    j = nlohmann::json{{"uid", record.uid},
                       {"authors", record.authors},
                       {"year", record.year ? nlohmann::json(*record.year) : nlohmann::json(nullptr)},
                       {"title", record.title},
                       {"abstract", record.abstract},
                       {"index_terms", record.index_terms},
                       {"source", record.source},
                       {"doc_type", std::string(to_string(record.doc_type))},
                       {"cited_refs", record.cited_refs}};
}

void from_json(const nlohmann::json& j, Record& record) {
    record = Record{};
    record.uid = j.at("uid").get<std::string>();
    record.authors = j.value("authors", std::vector<std::string>{});
    if (const auto it = j.find("year"); it != j.end() && !it->is_null()) record.year = it->get<int>();
    record.title = j.value("title", std::string{});
    record.abstract = j.value("abstract", std::string{});
    record.index_terms = j.value("index_terms", std::vector<std::string>{});
    record.source = j.value("source", std::string{});
    record.doc_type = doc_type_from_string(j.value("doc_type", std::string{"other"}));
    if (const auto it = j.find("cited_refs"); it != j.end()) {
        record.cited_refs = it->get<std::vector<CitedReference>>();
    }
}

void to_json(nlohmann::json& j, const ParseStats& stats) {
    j = nlohmann::json{{"files", stats.files},
                       {"records_read", stats.records_read},
                       {"records_rejected", stats.records_rejected},
                       {"lines_skipped", stats.lines_skipped},
                       {"malformed_cited_refs", stats.malformed_cited_refs},
                       {"records_without_year", stats.records_without_year}};
}

void from_json(const nlohmann::json& j, ParseStats& stats) {
    stats.files = j.at("files").get<std::vector<std::string>>();
    stats.records_read = j.at("records_read").get<std::size_t>();
    stats.records_rejected = j.at("records_rejected").get<std::size_t>();
    stats.lines_skipped = j.at("lines_skipped").get<std::size_t>();
    stats.malformed_cited_refs = j.at("malformed_cited_refs").get<std::size_t>();
    stats.records_without_year = j.at("records_without_year").get<std::size_t>();
}

RecordSet parse_jsonl(std::string_view input, std::string_view file_name) {
    const std::string text = sanitize_utf8(input);
    RecordSet out;
    out.provenance.files.emplace_back(file_name);
    auto& stats = out.provenance;
    std::set<std::string> seen;
    std::size_t line_no = 0;
    for (auto line : split(text, '\n')) {
        ++line_no;
        if (trim(line).empty()) continue;
        Record rec;
        try {
            rec = nlohmann::json::parse(line).get<Record>();
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string(file_name) + ":" + std::to_string(line_no) + ": " + e.what());
        } catch (const InvalidArgument& e) {
            throw ParseError(std::string(file_name) + ":" + std::to_string(line_no) + ": " + e.what());
        }
        if (rec.uid.empty() || (rec.year && !valid_year(*rec.year)) || !seen.insert(rec.uid).second) {
            ++stats.records_rejected;
            continue;
        }
        if (!rec.year) ++stats.records_without_year;
        ++stats.records_read;
        out.records.push_back(std::move(rec));
    }
    return out;
}

std::string to_jsonl(const std::vector<Record>& records) {
    std::string out;
    for (const auto& rec : records) {
        out += nlohmann::json(rec).dump();
        out.push_back('\n');
    }
    return out;
}

RecordSet read_records_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    const auto ext = std::filesystem::path(path).extension().string();
    const auto name = std::filesystem::path(path).filename().string();
    if (ext == ".jsonl" || ext == ".ndjson") return parse_jsonl(buf.str(), name);
    return parse_wos_file(buf.str(), name);
}

RecordSet merge_record_sets(std::vector<RecordSet> sets) {
    RecordSet out;
    std::unordered_set<std::string> seen;
    for (auto& set : sets) {
        auto& p = set.provenance;
        out.provenance.files.insert(out.provenance.files.end(), p.files.begin(), p.files.end());
        out.provenance.records_rejected += p.records_rejected;
        out.provenance.lines_skipped += p.lines_skipped;
        out.provenance.malformed_cited_refs += p.malformed_cited_refs;
        for (auto& rec : set.records) {
            if (!seen.insert(rec.uid).second) {
                ++out.provenance.records_rejected;
                continue;
            }
            ++out.provenance.records_read;
            if (!rec.year) ++out.provenance.records_without_year;
            out.records.push_back(std::move(rec));
        }
    }
    return out;
}

}  // namespace cocite
