#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace hialcs {

// Static range-argmax over a fixed array. better(a, b) == true means a beats
// b; ties resolve to the smaller index.
template <typename Value, typename Better = std::greater<Value>>
class sparse_table {
public:
    sparse_table() = default;

    explicit sparse_table(std::vector<Value> vals, Better better = Better())
        : vals_(std::move(vals)), better_(better) {
        size_t n = vals_.size();
        if (n == 0) {
            return;
        }
        size_t levels = 1;
        while ((size_t{1} << levels) <= n) {
            ++levels;
        }
        idx_.assign(levels, std::vector<uint32_t>(n));
        for (size_t i = 0; i < n; ++i) {
            idx_[0][i] = static_cast<uint32_t>(i);
        }
        for (size_t k = 1; k < levels; ++k) {
            size_t half = size_t{1} << (k - 1);
            for (size_t i = 0; i + (size_t{1} << k) <= n; ++i) {
                idx_[k][i] = pick(idx_[k - 1][i], idx_[k - 1][i + half]);
            }
        }
    }

    size_t size() const { return vals_.size(); }
    const Value& value_at(size_t i) const { return vals_[i]; }

    // inclusive [l, r], requires l <= r < size
    size_t argbest(size_t l, size_t r) const {
        size_t k = 0;
        while ((size_t{1} << (k + 1)) <= r - l + 1) {
            ++k;
        }
        return pick(idx_[k][l], idx_[k][r + 1 - (size_t{1} << k)]);
    }

    const Value& best(size_t l, size_t r) const { return vals_[argbest(l, r)]; }

    size_t footprint_bytes() const {
        size_t bytes = vals_.size() * sizeof(Value);
        for (const auto& level : idx_) {
            bytes += level.size() * sizeof(uint32_t);
        }
        return bytes;
    }

private:
    uint32_t pick(uint32_t a, uint32_t b) const {
        if (better_(vals_[b], vals_[a])) {
            return b;
        }
        if (better_(vals_[a], vals_[b])) {
            return a;
        }
        return a < b ? a : b;
    }

    std::vector<Value> vals_;
    Better better_;
    std::vector<std::vector<uint32_t>> idx_;
};

} // namespace hialcs
