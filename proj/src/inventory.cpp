#include "krigopt/inventory.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

#include "krigopt/rng.hpp"

namespace krigopt {

void InventoryParams::validate() const {
    double psum = 0.0;
    for (double p : demand_prob) psum += p;
    if (std::fabs(psum - 1.0) > 1e-12)
        throw std::invalid_argument("InventoryParams: demand pmf must sum to 1");
    if (horizon_months <= 0 || review_period <= 0.0)
        throw std::invalid_argument("InventoryParams: bad horizon/review period");
    if (std::fmod(static_cast<double>(horizon_months), review_period) != 0.0)
        throw std::invalid_argument("InventoryParams: horizon must be a multiple of the review period");
    if (order_fixed_cost < 0.0 || holding_cost < 0.0 || backlog_cost < 0.0)
        throw std::invalid_argument("InventoryParams: negative cost");
    if (!(lead_time_lo <= lead_time_hi) || lead_time_lo < 0.0)
        throw std::invalid_argument("InventoryParams: bad lead time range");
    if (!(interdemand_mean > 0.0))
        throw std::invalid_argument("InventoryParams: bad interdemand mean");
}

SimulationOutput simulate_inventory(int s, int S, const InventoryParams& params,
                                    std::uint64_t seed) {
    if (!(1 <= s && s < S)) throw std::invalid_argument("simulate_inventory: need 1 <= s < S");
    params.validate();

    Rng rng(seed);
    SimulationOutput out;
    out.replication_seed = seed;

    double cdf[4];
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
        acc += params.demand_prob[i];
        cdf[i] = acc;
    }

    const double horizon = static_cast<double>(params.horizon_months);
    long level = S;        // net inventory: on-hand minus backlog
    long on_order = 0;     // units in transit
    // pending order arrivals, earliest first
    using Arrival = std::pair<double, long>;
    std::priority_queue<Arrival, std::vector<Arrival>, std::greater<>> arrivals;

    double next_demand = rng.exponential(params.interdemand_mean);
    double ordering_total = 0.0, holding_total = 0.0, backlog_total = 0.0;

    const int reviews = static_cast<int>(horizon / params.review_period);
    for (int m = 0; m < reviews; ++m) {
        const double t0 = static_cast<double>(m) * params.review_period;
        const double t1 = t0 + params.review_period;

        // review at the start of the period
        const long position = level + on_order;
        if (position <= s) {
            const long qty = S - position;
            ordering_total += params.order_fixed_cost;
            ++out.orders_placed;
            out.units_ordered += qty;
            on_order += qty;
            arrivals.emplace(t0 + rng.uniform(params.lead_time_lo, params.lead_time_hi), qty);
        }

        // demands and order arrivals within (t0, t1], arrivals first on ties
        while (true) {
            const bool has_arrival = !arrivals.empty() && arrivals.top().first <= t1;
            const bool has_demand = next_demand <= t1;
            if (!has_arrival && !has_demand) break;
            if (has_arrival && (!has_demand || arrivals.top().first <= next_demand)) {
                const long qty = arrivals.top().second;
                arrivals.pop();
                level += qty;  // backlog, if any, is served by the netted level
                on_order -= qty;
                out.units_delivered += qty;
            } else {
                const long size = 1 + rng.discrete_cdf(cdf, 4);
                level -= size;
                out.units_demanded += size;
                next_demand += rng.exponential(params.interdemand_mean);
            }
        }

        // end-of-period accounting on the netted level
        const double months = params.review_period;
        if (level > 0)
            holding_total += params.holding_cost * static_cast<double>(level) * months;
        else
            backlog_total += params.backlog_cost * static_cast<double>(-level) * months;
    }

    out.units_in_transit_at_horizon = on_order;
    out.final_net_inventory = level;
    out.total_cost = ordering_total + holding_total + backlog_total;
    out.avg_ordering_cost = ordering_total / horizon;
    out.avg_holding_cost = holding_total / horizon;
    out.avg_backlog_cost = backlog_total / horizon;
    out.avg_monthly_total_cost = out.total_cost / horizon;
    return out;
}

}  // namespace krigopt
