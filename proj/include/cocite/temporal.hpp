#pragma once

// Citation bursts (two-state batched automaton), the Sigma novelty score,
// and the time span between a cluster's citers and its members.

#include <map>
#include <string>
#include <vector>

namespace cocite {

struct BurstOptions {
    double s = 2.0;      // burst rate multiplier over the baseline rate
    double gamma = 1.0;  // low -> high transition cost factor, times ln(years)
};

struct BurstInterval {
    int start_year = 0;
    int end_year = 0;
    double weight = 0.0;  // cost saved versus staying in the low state

    bool operator==(const BurstInterval&) const = default;
};

struct BurstResult {
    std::vector<BurstInterval> intervals;  // chronological, non-overlapping
    double burstness = 0.0;                // max interval weight, 0 if none
    bool no_baseline = false;              // baseline rate was 0

    bool operator==(const BurstResult&) const = default;
};

/// Cost model of the automaton over a contiguous year range; exposed so the
/// state sequence can be checked against other solvers.
struct BurstModel {
    int first_year = 0;
    std::vector<double> low_cost;   // -ln Binomial(n_t, r_t, p_0)
    std::vector<double> high_cost;  // -ln Binomial(n_t, r_t, p_1)
    double transition_cost = 0.0;   // gamma * ln(T), charged on low -> high
    double p0 = 0.0;
    double p1 = 0.0;
};

/// Builds the cost model for `series` (relevant events per year) against
/// `base` (all events per year). Years span min..max of `base`; years missing
/// from `series` count 0. Throws InvalidArgument on gaps in `base`, negative
/// counts or series > base.
BurstModel make_burst_model(const std::map<int, int>& series, const std::map<int, int>& base,
                            const BurstOptions& opts = {});

/// Minimum-cost state sequence (0 = low, 1 = high) starting from the low state.
/// Ties prefer the low state.
std::vector<int> optimal_states(const BurstModel& model);
double sequence_cost(const BurstModel& model, const std::vector<int>& states);

BurstResult detect_bursts(const std::map<int, int>& series, const std::map<int, int>& base,
                          const BurstOptions& opts = {});

/// (centrality + 1) ^ burstness.
double sigma(double centrality, double burstness);

struct TimeSpan {
    int cluster_id = 0;
    double mean_citer_year = 0.0;
    double mean_member_year = 0.0;
    double tau = 0.0;

    bool operator==(const TimeSpan&) const = default;
};

/// tau = mean citer year - mean member year + 1. Throws InvalidArgument when
/// either year list is empty.
TimeSpan time_span(int cluster_id, const std::vector<double>& member_years, const std::vector<int>& citer_years);

}  // namespace cocite
