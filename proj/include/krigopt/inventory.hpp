#pragma once

#include <cstdint>

namespace krigopt {

// Periodic-review (R,s,S) inventory system with backlogging.
struct InventoryParams {
    double review_period = 1.0;       // months
    int horizon_months = 120;
    double interdemand_mean = 0.1;    // months, exponential
    // demand sizes 1..4
    double demand_prob[4] = {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0};
    double lead_time_lo = 0.5;        // months, uniform
    double lead_time_hi = 1.0;
    double order_fixed_cost = 32.0;   // $ per order
    double holding_cost = 1.0;        // $ per item per month, end-of-month level
    double backlog_cost = 5.0;        // $ per unit per month, end-of-month level

    void validate() const;
};

struct SimulationOutput {
    double avg_monthly_total_cost = 0.0;
    double avg_ordering_cost = 0.0;
    double avg_holding_cost = 0.0;
    double avg_backlog_cost = 0.0;
    double total_cost = 0.0;  // over the full horizon
    std::uint64_t replication_seed = 0;

    // bookkeeping for the conservation identity
    long orders_placed = 0;
    long units_ordered = 0;
    long units_delivered = 0;
    long units_in_transit_at_horizon = 0;
    long units_demanded = 0;
    long final_net_inventory = 0;  // on-hand minus backlog
};

// Event-driven run over the horizon, deterministic per seed. Inventory
// starts at level S with nothing on order; the position is reviewed at the
// start of each month and holding/backlog are charged on end-of-month
// levels. Requires 1 <= s < S.
SimulationOutput simulate_inventory(int s, int S, const InventoryParams& params,
                                    std::uint64_t seed);

}  // namespace krigopt
