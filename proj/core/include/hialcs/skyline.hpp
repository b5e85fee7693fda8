#pragma once

#include <unordered_map>
#include <vector>

#include "hialcs/hia.hpp"
#include "hialcs/sparse_table.hpp"

namespace hialcs {

// Maximal induced pairs of one heavy-path pair: depth_a strictly decreasing,
// depth_b strictly increasing, no pair dominating another.
struct skyline_list {
    std::vector<node_id_t> a, b;
    std::vector<uint32_t> depth_a, depth_b;
    std::vector<weight_t> wsum; // true weights
    sparse_table<weight_t> rmq;

    size_t size() const { return a.size(); }
};

using path_pair_key = uint64_t;

inline path_pair_key make_path_pair_key(path_id_t p1, path_id_t p2) {
    return (uint64_t{p1} << 32) | p2;
}

using path_pair_table = std::unordered_map<path_pair_key, skyline_list>;

// Per-leaf ancestor-table cross products bucketed by path pair, reduced to
// skylines. Only non-empty lists are stored.
path_pair_table build_skyline_table(const heavy_path_decomposition& hpd1,
                                    const heavy_path_decomposition& hpd2);

size_t total_list_length(const path_pair_table& table);

// Best induced pair (u1, u2) with u1 at-or-above d1 on d1's heavy path and
// u2 at-or-above d2 on d2's heavy path; eff1/eff2 replace the weights of
// d1/d2 themselves. Requires list to be the skyline of that path pair.
std::optional<hia_answer> query_path_pair(const skyline_list& list,
                                          const weighted_tree& t1,
                                          const weighted_tree& t2, node_id_t d1,
                                          node_id_t d2, weight_t eff1,
                                          weight_t eff2);

// Root-first sequence of (path, deepest ancestor-or-self of v in that path)
// along v's root walk.
std::vector<std::pair<path_id_t, node_id_t>>
path_sequence(const heavy_path_decomposition& hpd, node_id_t v);

// The O(n log^2 n)-space engine: a staircase walk over the two path trees,
// one skyline-list query per visited pair.
class hia_skyline {
public:
    hia_skyline(const heavy_path_decomposition& hpd1,
                const heavy_path_decomposition& hpd2, const grid_index& g);

    std::optional<hia_answer> query(const hia_query& q,
                                    probe_counters* counters = nullptr) const;

    const path_pair_table& table() const { return table_; }

private:
    const heavy_path_decomposition* hpd1_;
    const heavy_path_decomposition* hpd2_;
    const grid_index* g_;
    path_pair_table table_;
};

} // namespace hialcs
