#include "hialcs/grid.hpp"

#include <stdexcept>

namespace hialcs {

bool is_permutation(const leaf_permutation& pi) {
    std::vector<char> seen(pi.size(), 0);
    for (uint32_t v : pi) {
        if (v >= pi.size() || seen[v]) {
            return false;
        }
        seen[v] = 1;
    }
    return true;
}

leaf_permutation build_leaf_permutation(const heavy_path_decomposition& hpd1,
                                        const heavy_path_decomposition& hpd2) {
    size_t n = hpd1.node_at_rank.size();
    if (hpd2.node_at_rank.size() != n) {
        throw std::invalid_argument("build_leaf_permutation: leaf counts differ");
    }
    leaf_permutation pi(n);
    for (uint32_t x = 0; x < n; ++x) {
        leaf_label_t lab = hpd1.tree.leaf_label[hpd1.node_at_rank[x]];
        pi[x] = hpd2.leaf_rank[hpd2.node_of_label[lab]];
    }
    return pi;
}

void grid_index::level_bits::finish() {
    cum.resize(words.size() + 1, 0);
    for (size_t w = 0; w < words.size(); ++w) {
        cum[w + 1] = cum[w] + static_cast<uint32_t>(__builtin_popcountll(words[w]));
    }
}

grid_index::grid_index(leaf_permutation pi) : pi_(std::move(pi)) {
    if (!is_permutation(pi_)) {
        throw std::invalid_argument("grid_index: input is not a permutation");
    }
    n_ = static_cast<uint32_t>(pi_.size());
    pi_inv_.resize(n_);
    for (uint32_t x = 0; x < n_; ++x) {
        pi_inv_[pi_[x]] = x;
    }
    bits_ = 0;
    while ((uint32_t{1} << bits_) < n_) {
        ++bits_;
    }
    levels_.resize(bits_);
    std::vector<uint32_t> cur = pi_;
    std::vector<uint32_t> next(n_);
    for (uint32_t d = 0; d < bits_; ++d) {
        level_bits& lb = levels_[d];
        lb.words.assign((n_ + 63) / 64, 0);
        uint32_t shift = bits_ - 1 - d;
        for (uint32_t i = 0; i < n_; ++i) {
            if ((cur[i] >> shift) & 1) {
                lb.words[i >> 6] |= uint64_t{1} << (i & 63);
            }
        }
        lb.finish();
        // stable partition within each run of equal top-d bits
        uint32_t i = 0;
        while (i < n_) {
            uint32_t j = i;
            uint32_t key = cur[i] >> (shift + 1);
            while (j < n_ && (cur[j] >> (shift + 1)) == key) {
                ++j;
            }
            uint32_t out = i;
            for (uint32_t k = i; k < j; ++k) {
                if (((cur[k] >> shift) & 1) == 0) {
                    next[out++] = cur[k];
                }
            }
            for (uint32_t k = i; k < j; ++k) {
                if ((cur[k] >> shift) & 1) {
                    next[out++] = cur[k];
                }
            }
            i = j;
        }
        cur.swap(next);
    }
}

grid_index::grid_index(const grid_index& other)
    : n_(other.n_), bits_(other.bits_), pi_(other.pi_), pi_inv_(other.pi_inv_),
      levels_(other.levels_), probes_(other.probe_count()) {}

grid_index& grid_index::operator=(const grid_index& other) {
    if (this != &other) {
        n_ = other.n_;
        bits_ = other.bits_;
        pi_ = other.pi_;
        pi_inv_ = other.pi_inv_;
        levels_ = other.levels_;
        probes_.store(other.probe_count(), std::memory_order_relaxed);
    }
    return *this;
}

grid_index::grid_index(grid_index&& other) noexcept
    : n_(other.n_), bits_(other.bits_), pi_(std::move(other.pi_)),
      pi_inv_(std::move(other.pi_inv_)), levels_(std::move(other.levels_)),
      probes_(other.probe_count()) {}

grid_index& grid_index::operator=(grid_index&& other) noexcept {
    if (this != &other) {
        n_ = other.n_;
        bits_ = other.bits_;
        pi_ = std::move(other.pi_);
        pi_inv_ = std::move(other.pi_inv_);
        levels_ = std::move(other.levels_);
        probes_.store(other.probe_count(), std::memory_order_relaxed);
    }
    return *this;
}

bool grid_index::clip(uint32_t& x1, uint32_t& x2, uint32_t& y1, uint32_t& y2) const {
    if (n_ == 0 || x1 > x2 || y1 > y2 || x1 >= n_ || y1 >= n_) {
        return false;
    }
    x2 = std::min(x2, n_ - 1);
    y2 = std::min(y2, n_ - 1);
    return true;
}

// pushes the two children of s, splitting both spans by the level-d bits;
// the left child lands on top of the stack
void grid_index::push_children(const span& s, std::vector<span>& stack) const {
    const level_bits& b = levels_[s.d];
    uint32_t z_nl = b.rank0(s.node_lo), z_nr = b.rank0(s.node_hi);
    uint32_t z_l = b.rank0(s.lo), z_r = b.rank0(s.hi);
    uint32_t zn = z_nr - z_nl;
    uint32_t half = (uint32_t{1} << (bits_ - s.d)) / 2;
    stack.push_back({s.d + 1, s.node_lo + zn, s.node_hi,
                     s.node_lo + zn + (s.lo - s.node_lo) - (z_l - z_nl),
                     s.node_lo + zn + (s.hi - s.node_lo) - (z_r - z_nl),
                     s.val_lo + half});
    stack.push_back({s.d + 1, s.node_lo, s.node_lo + zn,
                     s.node_lo + (z_l - z_nl), s.node_lo + (z_r - z_nl),
                     s.val_lo});
}

bool grid_index::is_nonempty(uint32_t x1, uint32_t x2, uint32_t y1, uint32_t y2) const {
    if (!clip(x1, x2, y1, y2)) {
        return false;
    }
    std::vector<span> stack{{0, 0, n_, x1, x2 + 1, 0}};
    while (!stack.empty()) {
        span s = stack.back();
        stack.pop_back();
        touch();
        uint32_t width = uint32_t{1} << (bits_ - s.d);
        if (s.lo >= s.hi || s.val_lo + width <= y1 || s.val_lo > y2) {
            continue;
        }
        if (y1 <= s.val_lo && s.val_lo + width <= y2 + 1) {
            return true;
        }
        push_children(s, stack);
    }
    return false;
}

uint64_t grid_index::count(uint32_t x1, uint32_t x2, uint32_t y1, uint32_t y2) const {
    if (!clip(x1, x2, y1, y2)) {
        return 0;
    }
    uint64_t total = 0;
    std::vector<span> stack{{0, 0, n_, x1, x2 + 1, 0}};
    while (!stack.empty()) {
        span s = stack.back();
        stack.pop_back();
        touch();
        uint32_t width = uint32_t{1} << (bits_ - s.d);
        if (s.lo >= s.hi || s.val_lo + width <= y1 || s.val_lo > y2) {
            continue;
        }
        if (y1 <= s.val_lo && s.val_lo + width <= y2 + 1) {
            total += s.hi - s.lo;
            continue;
        }
        push_children(s, stack);
    }
    return total;
}

std::vector<std::pair<uint32_t, uint32_t>>
grid_index::report(uint32_t x1, uint32_t x2, uint32_t y1, uint32_t y2) const {
    std::vector<std::pair<uint32_t, uint32_t>> out;
    if (!clip(x1, x2, y1, y2)) {
        return out;
    }
    std::vector<span> stack{{0, 0, n_, x1, x2 + 1, 0}};
    while (!stack.empty()) {
        span s = stack.back();
        stack.pop_back();
        touch();
        uint32_t width = uint32_t{1} << (bits_ - s.d);
        if (s.lo >= s.hi || s.val_lo + width <= y1 || s.val_lo > y2) {
            continue;
        }
        if (width == 1) {
            // one point per value under a permutation
            out.push_back({pi_inv_[s.val_lo], s.val_lo});
            continue;
        }
        push_children(s, stack);
    }
    return out;
}

std::optional<std::pair<uint32_t, uint32_t>>
grid_index::any_point(uint32_t x1, uint32_t x2, uint32_t y1, uint32_t y2) const {
    if (!clip(x1, x2, y1, y2)) {
        return std::nullopt;
    }
    std::vector<span> stack{{0, 0, n_, x1, x2 + 1, 0}};
    while (!stack.empty()) {
        span s = stack.back();
        stack.pop_back();
        touch();
        uint32_t width = uint32_t{1} << (bits_ - s.d);
        if (s.lo >= s.hi || s.val_lo + width <= y1 || s.val_lo > y2) {
            continue;
        }
        if (width == 1) {
            return std::pair<uint32_t, uint32_t>{pi_inv_[s.val_lo], s.val_lo};
        }
        push_children(s, stack);
    }
    return std::nullopt;
}


} // namespace hialcs
