#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hialcs/tree.hpp"

namespace hialcs {

// pi[x] = rank in the second tree of the leaf whose rank in the first is x
using leaf_permutation = std::vector<uint32_t>;

bool is_permutation(const leaf_permutation& pi);

// pi derived from two decompositions over the same label set
leaf_permutation build_leaf_permutation(const heavy_path_decomposition& hpd1,
                                        const heavy_path_decomposition& hpd2);

// Static rank structure over the points {(x, pi[x])}: a levelwise wavelet
// tree over pi. Emptiness and counting visit O(log n) nodes, reporting adds
// O(log n) per point. probe_count() tallies node visits across all queries.
class grid_index {
public:
    grid_index() = default;
    explicit grid_index(leaf_permutation pi);

    grid_index(const grid_index& other);
    grid_index& operator=(const grid_index& other);
    grid_index(grid_index&& other) noexcept;
    grid_index& operator=(grid_index&& other) noexcept;

    uint32_t size() const { return n_; }
    const leaf_permutation& permutation() const { return pi_; }
    uint32_t x_of_y(uint32_t y) const { return pi_inv_[y]; }

    // inclusive rectangles; inverted or out-of-range rectangles are empty
    bool is_nonempty(uint32_t x1, uint32_t x2, uint32_t y1, uint32_t y2) const;
    uint64_t count(uint32_t x1, uint32_t x2, uint32_t y1, uint32_t y2) const;
    std::vector<std::pair<uint32_t, uint32_t>>
    report(uint32_t x1, uint32_t x2, uint32_t y1, uint32_t y2) const;
    std::optional<std::pair<uint32_t, uint32_t>>
    any_point(uint32_t x1, uint32_t x2, uint32_t y1, uint32_t y2) const;

    uint64_t probe_count() const { return probes_.load(std::memory_order_relaxed); }
    void reset_probe_count() const { probes_.store(0, std::memory_order_relaxed); }

private:
    struct level_bits {
        std::vector<uint64_t> words;
        std::vector<uint32_t> cum; // popcount of words before each word

        void finish();
        uint32_t rank1(uint32_t i) const {
            return cum[i >> 6] +
                   static_cast<uint32_t>(__builtin_popcountll(
                       words[i >> 6] & ((uint64_t{1} << (i & 63)) - 1)));
        }
        uint32_t rank0(uint32_t i) const { return i - rank1(i); }
    };

    // node span and in-node query span at one wavelet level, all absolute
    struct span {
        uint32_t d;
        uint32_t node_lo, node_hi;
        uint32_t lo, hi; // half-open query positions inside the node
        uint32_t val_lo; // value range is [val_lo, val_lo + width(d))
    };

    bool clip(uint32_t& x1, uint32_t& x2, uint32_t& y1, uint32_t& y2) const;
    void push_children(const span& s, std::vector<span>& stack) const;
    void touch() const { probes_.fetch_add(1, std::memory_order_relaxed); }

    uint32_t n_ = 0;
    uint32_t bits_ = 0; // levels; values padded to [0, 2^bits)
    leaf_permutation pi_;
    std::vector<uint32_t> pi_inv_;
    std::vector<level_bits> levels_;
    mutable std::atomic<uint64_t> probes_{0};
};

} // namespace hialcs
