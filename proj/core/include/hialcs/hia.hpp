#pragma once

#include <cstdint>
#include <optional>

#include "hialcs/grid.hpp"
#include "hialcs/tree.hpp"

namespace hialcs {

// Query against a fixed tree pair. Overrides replace the weights of v1/v2
// themselves (never proper ancestors) and must sit in
// (weight(parent(v)), weight(v)] so effective weights stay strictly
// increasing along root paths.
struct hia_query {
    node_id_t v1 = k_no_node;
    node_id_t v2 = k_no_node;
    std::optional<weight_t> w1_override;
    std::optional<weight_t> w2_override;
};

// u1/u2 are ancestors-or-self of the queried nodes, induced (sharing a leaf
// descendant), with maximum combined effective weight.
struct hia_answer {
    node_id_t u1 = k_no_node;
    node_id_t u2 = k_no_node;
    weight_t combined = 0;
};

struct probe_counters {
    uint64_t emptiness_calls = 0;
    uint64_t path_pair_visits = 0;
    uint64_t reported_points = 0;
};

// Throws std::invalid_argument on out-of-range nodes or overrides breaking
// the sandwich condition.
void validate_query(const weighted_tree& t1, const weighted_tree& t2,
                    const hia_query& q);

inline weight_t eff_weight(const weighted_tree& t, node_id_t u, node_id_t v,
                           const std::optional<weight_t>& override_w) {
    return (u == v && override_w) ? *override_w : t.weight[u];
}

} // namespace hialcs
