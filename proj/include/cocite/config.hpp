#pragma once

// Analysis configuration: one struct shared by the JSON config file, the CLI
// flags and the bundle's config echo.

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cocite {

struct AnalysisConfig {
    std::vector<std::string> inputs;
    std::string unit = "cited_reference";
    std::optional<int> start_year;  // default: earliest record year
    std::optional<int> end_year;    // default: latest record year
    int slice_len = 1;
    int top_n = 50;
    std::string measure = "cosine";
    std::vector<std::string> doc_types = {"article", "review"};  // empty keeps every type
    std::uint64_t seed = 42;
    int restarts = 10;
    int max_k = 50;
    double burst_s = 2.0;
    double burst_gamma = 1.0;
    int label_depth = 3;
    int summary_k = 5;
    std::string summary_ranker = "energy";
    std::string output_dir = "out";
    int port = 8080;

    bool operator==(const AnalysisConfig&) const = default;
};

/// Throws InvalidArgument naming the first offending field.
void validate(const AnalysisConfig& config);

/// Unknown fields are rejected.
void to_json(nlohmann::json& j, const AnalysisConfig& config);
void from_json(const nlohmann::json& j, AnalysisConfig& config);

AnalysisConfig load_config_file(const std::string& path);

/// Path from COCITER_CONFIG, if set and non-empty.
std::optional<std::string> config_path_from_env();

}  // namespace cocite
