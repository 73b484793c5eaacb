#include "cocite/config.hpp"

#include "cocite/error.hpp"
#include "cocite/ingest.hpp"
#include "cocite/network.hpp"
#include "cocite/summarizer.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace cocite {
namespace {

void require(bool ok, const std::string& field, const std::string& rule) {
    if (!ok) throw InvalidArgument("config: " + field + " " + rule);
}

const std::set<std::string>& known_fields() {
    static const std::set<std::string> fields = {
        "inputs",  "unit",     "start_year", "end_year",    "slice_len",   "top_n",     "measure",
        "doc_types", "seed",   "restarts",   "max_k",       "burst_s",     "burst_gamma", "label_depth",
        "summary_k", "summary_ranker", "output_dir", "port",
    };
    return fields;
}

}  // namespace

void validate(const AnalysisConfig& c) {
    try {
        unit_from_string(c.unit);
    } catch (const InvalidArgument&) {
        require(false, "unit", "must be cited_author or cited_reference");
    }
    try {
        measure_from_string(c.measure);
    } catch (const InvalidArgument&) {
        require(false, "measure", "must be cosine, dice or jaccard");
    }
    try {
        ranker_from_string(c.summary_ranker);
    } catch (const InvalidArgument&) {
        require(false, "summary_ranker", "must be energy, gtf or gtf_idf");
    }
    if (c.start_year) require(*c.start_year >= kMinYear && *c.start_year <= kMaxYear, "start_year", "must be in 1900..2100");
    if (c.end_year) require(*c.end_year >= kMinYear && *c.end_year <= kMaxYear, "end_year", "must be in 1900..2100");
    if (c.start_year && c.end_year) require(*c.start_year <= *c.end_year, "start_year", "must not exceed end_year");
    require(c.slice_len >= 1 && c.slice_len <= 200, "slice_len", "must be in 1..200");
    require(c.top_n >= 1 && c.top_n <= 2000, "top_n", "must be in 1..2000");
    for (const auto& t : c.doc_types) {
        require(t == "article" || t == "review" || t == "other", "doc_types", "entries must be article, review or other");
    }
    require(c.restarts >= 1 && c.restarts <= 1000, "restarts", "must be in 1..1000");
    require(c.max_k >= 1 && c.max_k <= 2000, "max_k", "must be in 1..2000");
    require(std::isfinite(c.burst_s) && c.burst_s > 1.0 && c.burst_s <= 100.0, "burst_s", "must be in (1, 100]");
    require(std::isfinite(c.burst_gamma) && c.burst_gamma >= 0.0 && c.burst_gamma <= 100.0, "burst_gamma",
            "must be in [0, 100]");
    require(c.label_depth >= 1 && c.label_depth <= 50, "label_depth", "must be in 1..50");
    require(c.summary_k >= 0 && c.summary_k <= 1000, "summary_k", "must be in 0..1000");
    require(!c.output_dir.empty(), "output_dir", "must not be empty");
    require(c.port >= 1 && c.port <= 65535, "port", "must be in 1..65535");
}

void to_json(nlohmann::json& j, const AnalysisConfig& c) {
    j = nlohmann::json{
        {"inputs", c.inputs},
        {"unit", c.unit},
        {"start_year", c.start_year ? nlohmann::json(*c.start_year) : nlohmann::json(nullptr)},
        {"end_year", c.end_year ? nlohmann::json(*c.end_year) : nlohmann::json(nullptr)},
        {"slice_len", c.slice_len},
        {"top_n", c.top_n},
        {"measure", c.measure},
        {"doc_types", c.doc_types},
        {"seed", c.seed},
        {"restarts", c.restarts},
        {"max_k", c.max_k},
        {"burst_s", c.burst_s},
        {"burst_gamma", c.burst_gamma},
        {"label_depth", c.label_depth},
        {"summary_k", c.summary_k},
        {"summary_ranker", c.summary_ranker},
        {"output_dir", c.output_dir},
        {"port", c.port},
    };
}

void from_json(const nlohmann::json& j, AnalysisConfig& c) {
    if (!j.is_object()) throw InvalidArgument("config: expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (known_fields().count(key) == 0) throw InvalidArgument("config: unknown field '" + key + "'");
    }
    try {
        c = AnalysisConfig{};
        if (j.contains("inputs")) j.at("inputs").get_to(c.inputs);
        if (j.contains("unit")) j.at("unit").get_to(c.unit);
        if (j.contains("start_year") && !j.at("start_year").is_null()) c.start_year = j.at("start_year").get<int>();
        if (j.contains("end_year") && !j.at("end_year").is_null()) c.end_year = j.at("end_year").get<int>();
        if (j.contains("slice_len")) j.at("slice_len").get_to(c.slice_len);
        if (j.contains("top_n")) j.at("top_n").get_to(c.top_n);
        if (j.contains("measure")) j.at("measure").get_to(c.measure);
        if (j.contains("doc_types")) j.at("doc_types").get_to(c.doc_types);
        if (j.contains("seed")) j.at("seed").get_to(c.seed);
        if (j.contains("restarts")) j.at("restarts").get_to(c.restarts);
        if (j.contains("max_k")) j.at("max_k").get_to(c.max_k);
        if (j.contains("burst_s")) j.at("burst_s").get_to(c.burst_s);
        if (j.contains("burst_gamma")) j.at("burst_gamma").get_to(c.burst_gamma);
        if (j.contains("label_depth")) j.at("label_depth").get_to(c.label_depth);
        if (j.contains("summary_k")) j.at("summary_k").get_to(c.summary_k);
        if (j.contains("summary_ranker")) j.at("summary_ranker").get_to(c.summary_ranker);
        if (j.contains("output_dir")) j.at("output_dir").get_to(c.output_dir);
        if (j.contains("port")) j.at("port").get_to(c.port);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("config: ") + e.what());
    }
}

AnalysisConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(ss.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument("config: '" + path + "' is not valid JSON: " + e.what());
    }
    return j.get<AnalysisConfig>();
}

std::optional<std::string> config_path_from_env() {
    const char* value = std::getenv("COCITER_CONFIG");
    if (value == nullptr || *value == '\0') return std::nullopt;
    return std::string(value);
}

}  // namespace cocite
