#pragma once

#include <unordered_map>
#include <vector>

#include "hialcs/hia.hpp"
#include "hialcs/skyline.hpp"

namespace hialcs {

// One entry of a path pair's extended list: some leaf's lowest ancestors on
// the two paths, depths denormalized.
struct ext_pair {
    node_id_t a = k_no_node;
    node_id_t b = k_no_node;
    uint32_t depth_a = 0;
    uint32_t depth_b = 0;
};

// extended-list order: depth_a descending, ties by depth_b ascending
inline bool ext_before(const ext_pair& l, const ext_pair& r) {
    if (l.depth_a != r.depth_a) {
        return l.depth_a > r.depth_a;
    }
    return l.depth_b < r.depth_b;
}

// Sampled summary of one path pair's extended list. Keeps every B-th entry
// with prefix/block depth_b maxima, the skyline pairs adjacent to some
// sample, and the heaviest skyline pair of each gap between stored
// neighbors; everything else is recoverable from the grid.
struct sampled_list {
    uint32_t ext_len = 0;

    // sample t sits at extended-list position t * B
    std::vector<node_id_t> sample_a, sample_b;
    std::vector<node_id_t> prefix_max_b; // deepest b over ext[0..tB]
    std::vector<uint32_t> block_max_db;  // max depth_b over [tB, (t+1)B)

    // skyline pairs preceding or succeeding some sample, in skyline order;
    // the range-max over their weight sums exists only from three entries
    // up (shorter ranges never reach an interior query)
    std::vector<node_id_t> sk_a, sk_b;
    std::vector<uint32_t> sk_ext_idx;
    sparse_table<weight_t> sk_rmq;

    // per gap between consecutive stored neighbors: the heaviest skyline
    // pair strictly inside, k_no_node when the gap holds none; the
    // range-max stores wsum + 1 (0 = none) and exists from three gaps up
    std::vector<node_id_t> gap_a, gap_b;
    sparse_table<weight_t> gap_rmq;

    // full extended list, retained only by keep_full_lists builds
    std::vector<ext_pair> full;

    size_t sample_count() const { return sample_a.size(); }
    size_t footprint_bytes() const; // excludes full
};

using sampled_table = std::unordered_map<path_pair_key, sampled_list>;

size_t footprint_bytes(const path_pair_table& table);
size_t footprint_bytes(const sampled_table& table);

// Space-reduced engine: the same staircase walk as hia_skyline, but each
// visited pair is answered from its sampled list plus a handful of
// grid-recovered blocks.
class hia_sampled {
public:
    // Requires hpd1 heavy_leftmost and hpd2 heavy_rightmost: block recovery
    // needs "under u but not under its same-path child" to be one rank
    // interval on the first tree's side.
    hia_sampled(const heavy_path_decomposition& hpd1,
                const heavy_path_decomposition& hpd2, const grid_index& g,
                uint32_t sample_rate, bool keep_full_lists = false);

    std::optional<hia_answer> query(const hia_query& q,
                                    probe_counters* counters = nullptr) const;

    // one emptiness probe on the two path heads' leaf intervals
    bool is_pair_active(path_id_t p1, path_id_t p2,
                        probe_counters* counters = nullptr) const;

    // Extended-list entries strictly between samples t_lo and t_hi, where
    // t_hi == sample_count() names the virtual end-of-list sample. The two
    // samples must be consecutive; misordered or unknown samples throw.
    // One grid report per call.
    std::vector<ext_pair> recover_block(path_id_t p1, path_id_t p2,
                                        size_t t_lo, size_t t_hi,
                                        probe_counters* counters = nullptr) const;

    uint32_t sample_rate() const { return sample_rate_; }
    const sampled_table& table() const { return table_; }
    size_t stored_bytes() const;

private:
    std::vector<ext_pair> recover_interior(path_id_t p1, path_id_t p2,
                                           const sampled_list& list, size_t t,
                                           probe_counters* counters) const;

    void query_pair(path_id_t p1, path_id_t p2, const sampled_list& list,
                    node_id_t d1, node_id_t d2, weight_t eff1, weight_t eff2,
                    std::optional<hia_answer>& best,
                    probe_counters* counters) const;

    const heavy_path_decomposition* hpd1_;
    const heavy_path_decomposition* hpd2_;
    const grid_index* g_;
    uint32_t sample_rate_;
    sampled_table table_;
    // (leaf label, path) -> the leaf's lowest ancestor on that path
    std::unordered_map<uint64_t, node_id_t> locus1_, locus2_;
};

} // namespace hialcs
