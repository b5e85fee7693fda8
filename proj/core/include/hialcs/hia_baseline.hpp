#pragma once

#include <vector>

#include "hialcs/hia.hpp"

namespace hialcs {

// True iff u1 and u2 share a leaf descendant, decided by one rectangle
// emptiness probe.
bool induced(const heavy_path_decomposition& hpd1,
             const heavy_path_decomposition& hpd2, const grid_index& g,
             node_id_t u1, node_id_t u2, probe_counters* counters = nullptr);

// Staircase walk over raw trees: p starts at v1, q at the root of the second
// tree; induced pairs record a candidate and push q down toward v2, bare
// pairs pull p up. O(depth) emptiness probes per query.
class hia_baseline {
public:
    hia_baseline(const heavy_path_decomposition& hpd1,
                 const heavy_path_decomposition& hpd2, const grid_index& g)
        : hpd1_(&hpd1), hpd2_(&hpd2), g_(&g) {}

    // trace, when given, receives every recorded induced candidate in walk
    // order
    std::optional<hia_answer> query(const hia_query& q,
                                    probe_counters* counters = nullptr,
                                    std::vector<hia_answer>* trace = nullptr) const;

private:
    const heavy_path_decomposition* hpd1_;
    const heavy_path_decomposition* hpd2_;
    const grid_index* g_;
};

// Exhaustive oracle: every ancestor pair, inducedness by explicit
// leaf-label-set intersection over per-node bitsets.
class naive_hia_oracle {
public:
    naive_hia_oracle(const weighted_tree& t1, const weighted_tree& t2);

    std::optional<hia_answer> query(const hia_query& q) const;

private:
    const weighted_tree* t1_;
    const weighted_tree* t2_;
    size_t words_ = 0;
    std::vector<uint64_t> bits1_, bits2_;
};

} // namespace hialcs
