#include "hialcs/lz.hpp"

#include <algorithm>
#include <stdexcept>

namespace hialcs {

std::vector<std::string> validate_parse(const lz77_parse& p) {
    std::vector<std::string> report;
    if (p.phrases.empty()) {
        report.push_back("parse has no phrases");
        return report;
    }
    uint64_t expect = 1;
    for (size_t k = 0; k < p.phrases.size(); ++k) {
        const lz_phrase& ph = p.phrases[k];
        if (ph.start != expect) {
            report.push_back("phrase " + std::to_string(k) +
                             " does not start where the previous one ended");
        }
        if (ph.length() == 0) {
            report.push_back("phrase " + std::to_string(k) + " is empty");
        }
        if (ph.copy_len > 0) {
            if (!ph.copy_src) {
                report.push_back("phrase " + std::to_string(k) +
                                 " copies without a source");
            } else if (*ph.copy_src == 0 || *ph.copy_src >= ph.start) {
                report.push_back("phrase " + std::to_string(k) +
                                 " copy source not strictly left of its start");
            }
        } else if (ph.copy_src) {
            report.push_back("phrase " + std::to_string(k) +
                             " has a source but no copy");
        }
        if (!ph.literal && k + 1 != p.phrases.size()) {
            report.push_back("phrase " + std::to_string(k) +
                             " lacks a literal but is not last");
        }
        expect = ph.start + ph.length();
    }
    if (expect != p.text_length + 1) {
        report.push_back("phrases do not tile the text length");
    }
    return report;
}

std::vector<uint32_t> suffix_array(std::string_view s) {
    size_t n = s.size();
    std::vector<uint32_t> sa(n);
    if (n == 0) {
        return sa;
    }
    std::vector<uint32_t> rank(n), next_rank(n);
    for (size_t i = 0; i < n; ++i) {
        sa[i] = static_cast<uint32_t>(i);
        rank[i] = static_cast<uint8_t>(s[i]);
    }
    for (size_t k = 1;; k <<= 1) {
        auto key = [&](uint32_t i) {
            uint64_t hi = uint64_t{rank[i]} + 1;
            uint64_t lo = i + k < n ? uint64_t{rank[i + k]} + 1 : 0;
            return (hi << 32) | lo;
        };
        std::sort(sa.begin(), sa.end(),
                  [&](uint32_t a, uint32_t b) { return key(a) < key(b); });
        next_rank[sa[0]] = 0;
        for (size_t r = 1; r < n; ++r) {
            next_rank[sa[r]] =
                next_rank[sa[r - 1]] + (key(sa[r - 1]) != key(sa[r]) ? 1 : 0);
        }
        rank.swap(next_rank);
        if (rank[sa.back()] == n - 1) {
            break;
        }
    }
    return sa;
}

std::vector<uint32_t> lcp_array(std::string_view s,
                                const std::vector<uint32_t>& sa) {
    size_t n = s.size();
    std::vector<uint32_t> rank(n), lcp(n, 0);
    for (size_t r = 0; r < n; ++r) {
        rank[sa[r]] = static_cast<uint32_t>(r);
    }
    uint32_t h = 0;
    for (size_t i = 0; i < n; ++i) {
        if (rank[i] == 0) {
            h = 0;
            continue;
        }
        size_t j = sa[rank[i] - 1];
        while (i + h < n && j + h < n && s[i + h] == s[j + h]) {
            ++h;
        }
        lcp[rank[i]] = h;
        if (h > 0) {
            --h;
        }
    }
    return lcp;
}

// Stack sweep over the suffix array: when a position is popped by a smaller
// one arriving on its right, its best earlier-start matches are the nearest
// smaller positions on both sides in rank order, whose lcps are the stored
// left value and the running minimum.
std::vector<lpf_entry> longest_previous_factors(std::string_view s) {
    size_t n = s.size();
    std::vector<lpf_entry> lpf(n);
    if (n == 0) {
        return lpf;
    }
    auto sa = suffix_array(s);
    auto lcp = lcp_array(s, sa);

    constexpr uint32_t k_none = UINT32_MAX;
    struct frame {
        uint32_t pos;
        uint32_t left_lcp;
        uint32_t left_src; // k_none when no smaller position to the left
    };
    std::vector<frame> stack;
    stack.push_back({sa[0], 0, k_none});
    for (size_t r = 1; r <= n; ++r) {
        // sentinel rank with position -1 and lcp 0 flushes the stack
        int64_t pos = r < n ? static_cast<int64_t>(sa[r]) : -1;
        uint32_t curr = r < n ? lcp[r] : 0;
        while (!stack.empty() && pos < stack.back().pos) {
            frame f = stack.back();
            stack.pop_back();
            uint32_t len, src;
            if (f.left_lcp > curr ||
                (f.left_lcp == curr && f.left_src != k_none &&
                 f.left_src < static_cast<uint32_t>(pos))) {
                len = f.left_lcp;
                src = f.left_src;
            } else {
                len = curr;
                src = static_cast<uint32_t>(pos);
            }
            lpf[f.pos] = len > 0 ? lpf_entry{len, src} : lpf_entry{};
            curr = std::min(curr, f.left_lcp);
        }
        if (r < n) {
            if (stack.empty()) {
                stack.push_back({sa[r], 0, k_none});
            } else {
                stack.push_back({sa[r], curr, stack.back().pos});
            }
        }
    }
    return lpf;
}

lz77_parse parse(std::string_view s) {
    if (s.empty()) {
        throw std::invalid_argument("cannot parse an empty text");
    }
    auto lpf = longest_previous_factors(s);
    lz77_parse out;
    out.text_length = s.size();
    uint64_t pos = 0;
    while (pos < s.size()) {
        lz_phrase ph;
        ph.start = pos + 1;
        ph.copy_len = lpf[pos].len;
        if (ph.copy_len > 0) {
            ph.copy_src = uint64_t{lpf[pos].src} + 1;
        }
        if (pos + ph.copy_len < s.size()) {
            ph.literal = static_cast<uint8_t>(s[pos + ph.copy_len]);
        }
        pos += ph.length();
        out.phrases.push_back(ph);
    }
    return out;
}

std::string decompress(const lz77_parse& p) {
    auto report = validate_parse(p);
    if (!report.empty()) {
        throw std::invalid_argument(report.front());
    }
    std::string out;
    out.reserve(p.text_length);
    for (const lz_phrase& ph : p.phrases) {
        for (uint64_t t = 0; t < ph.copy_len; ++t) {
            out.push_back(out[*ph.copy_src - 1 + t]);
        }
        if (ph.literal) {
            out.push_back(static_cast<char>(*ph.literal));
        }
    }
    return out;
}

std::pair<uint64_t, std::optional<uint64_t>> naive_lpf(std::string_view s,
                                                       uint64_t i) {
    if (i == 0 || i > s.size()) {
        throw std::out_of_range("position outside the text");
    }
    uint64_t best = 0;
    std::optional<uint64_t> src;
    for (uint64_t j = 1; j < i; ++j) {
        uint64_t l = 0;
        while (i - 1 + l < s.size() && s[j - 1 + l] == s[i - 1 + l]) {
            ++l;
        }
        if (l > best) {
            best = l;
            src = j;
        }
    }
    return {best, src};
}

} // namespace hialcs
