#include "cocite/temporal.hpp"

#include "cocite/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace cocite {
namespace {

double neg_log_binomial(int n, int r, double p) {
    if (n == 0) return 0.0;
    const double log_choose = std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
    const double log_p = r > 0 ? r * std::log(p) : 0.0;
    const double log_q = n - r > 0 ? (n - r) * std::log1p(-p) : 0.0;
    return -(log_choose + log_p + log_q);
}

}  // namespace

BurstModel make_burst_model(const std::map<int, int>& series, const std::map<int, int>& base,
                            const BurstOptions& opts) {
    if (base.empty()) throw InvalidArgument("detect_bursts: empty base series");
    if (opts.s <= 1.0) throw InvalidArgument("detect_bursts: s must be > 1");
    if (opts.gamma < 0.0) throw InvalidArgument("detect_bursts: gamma must be >= 0");
    const int first = base.begin()->first;
    const int last = base.rbegin()->first;
    const auto years = static_cast<std::size_t>(last - first + 1);
    if (base.size() != years) throw InvalidArgument("detect_bursts: base years are not contiguous");
    for (const auto& [year, count] : series) {
        if (year < first || year > last) throw InvalidArgument("detect_bursts: series year outside base range");
        if (count < 0) throw InvalidArgument("detect_bursts: negative count");
    }

    std::vector<int> n(years);
    std::vector<int> r(years, 0);
    long total_n = 0;
    long total_r = 0;
    for (const auto& [year, count] : base) {
        if (count < 0) throw InvalidArgument("detect_bursts: negative base count");
        n[static_cast<std::size_t>(year - first)] = count;
        total_n += count;
    }
    for (const auto& [year, count] : series) {
        const auto t = static_cast<std::size_t>(year - first);
        if (count > n[t]) throw InvalidArgument("detect_bursts: series exceeds base in " + std::to_string(year));
        r[t] = count;
        total_r += count;
    }

    BurstModel model;
    model.first_year = first;
    model.p0 = total_n > 0 ? static_cast<double>(total_r) / static_cast<double>(total_n) : 0.0;
    model.p1 = std::min(opts.s * model.p0, 0.9999);
    model.transition_cost = opts.gamma * std::log(static_cast<double>(years));
    model.low_cost.resize(years);
    model.high_cost.resize(years);
    if (model.p0 <= 0.0) return model;
    for (std::size_t t = 0; t < years; ++t) {
        model.low_cost[t] = neg_log_binomial(n[t], r[t], model.p0);
        model.high_cost[t] = neg_log_binomial(n[t], r[t], model.p1);
    }
    return model;
}

std::vector<int> optimal_states(const BurstModel& model) {
    const std::size_t years = model.low_cost.size();
    std::vector<int> states(years, 0);
    if (years == 0) return states;

    // cost[t][s]: best cost of years 0..t ending in state s; the automaton starts low.
    std::vector<std::array<double, 2>> cost(years);
    std::vector<std::array<int, 2>> from(years);
    cost[0] = {model.low_cost[0], model.transition_cost + model.high_cost[0]};
    from[0] = {0, 0};
    for (std::size_t t = 1; t < years; ++t) {
        // Into low: high -> low is free.
        if (cost[t - 1][1] < cost[t - 1][0]) {
            cost[t][0] = cost[t - 1][1] + model.low_cost[t];
            from[t][0] = 1;
        } else {
            cost[t][0] = cost[t - 1][0] + model.low_cost[t];
            from[t][0] = 0;
        }
        const double via_low = cost[t - 1][0] + model.transition_cost;
        const double via_high = cost[t - 1][1];
        if (via_high < via_low) {
            cost[t][1] = via_high + model.high_cost[t];
            from[t][1] = 1;
        } else {
            cost[t][1] = via_low + model.high_cost[t];
            from[t][1] = 0;
        }
    }
    int s = cost[years - 1][1] < cost[years - 1][0] ? 1 : 0;
    for (std::size_t t = years; t-- > 0;) {
        states[t] = s;
        s = from[t][s];
    }
    return states;
}

double sequence_cost(const BurstModel& model, const std::vector<int>& states) {
    double total = 0.0;
    int prev = 0;
    for (std::size_t t = 0; t < states.size(); ++t) {
        if (states[t] == 1 && prev == 0) total = total + model.transition_cost;
        total = total + (states[t] == 1 ? model.high_cost[t] : model.low_cost[t]);
        prev = states[t];
    }
    return total;
}

BurstResult detect_bursts(const std::map<int, int>& series, const std::map<int, int>& base, const BurstOptions& opts) {
    const auto model = make_burst_model(series, base, opts);
    BurstResult result;
    if (model.p0 <= 0.0) {
        result.no_baseline = true;
        return result;
    }
    const auto states = optimal_states(model);
    std::size_t t = 0;
    while (t < states.size()) {
        if (states[t] == 0) {
            ++t;
            continue;
        }
        const std::size_t begin = t;
        double saved = 0.0;
        while (t < states.size() && states[t] == 1) {
            saved += model.low_cost[t] - model.high_cost[t];
            ++t;
        }
        if (saved > 0.0) {
            result.intervals.push_back(BurstInterval{model.first_year + static_cast<int>(begin),
                                                     model.first_year + static_cast<int>(t - 1), saved});
            result.burstness = std::max(result.burstness, saved);
        }
    }
    return result;
}

double sigma(double centrality, double burstness) {
    if (centrality < 0.0 || burstness < 0.0) throw InvalidArgument("sigma: arguments must be non-negative");
    return std::pow(centrality + 1.0, burstness);
}

TimeSpan time_span(int cluster_id, const std::vector<double>& member_years, const std::vector<int>& citer_years) {
    if (citer_years.empty()) throw InvalidArgument("cluster has no citers");
    if (member_years.empty()) throw InvalidArgument("cluster has no dated members");
    TimeSpan span;
    span.cluster_id = cluster_id;
    span.mean_citer_year = std::accumulate(citer_years.begin(), citer_years.end(), 0.0) /
                           static_cast<double>(citer_years.size());
    span.mean_member_year = std::accumulate(member_years.begin(), member_years.end(), 0.0) /
                            static_cast<double>(member_years.size());
    span.tau = span.mean_citer_year - span.mean_member_year + 1.0;
    return span;
}

}  // namespace cocite
