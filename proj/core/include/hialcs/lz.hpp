#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hialcs {

// One phrase of a greedy LZ77 factorization: a (possibly empty) copy of an
// earlier occurrence plus one trailing literal; the final phrase may omit
// the literal. Positions are 1-based.
struct lz_phrase {
    uint64_t start = 0;
    uint64_t copy_len = 0;
    std::optional<uint64_t> copy_src;
    std::optional<uint8_t> literal;

    uint64_t length() const { return copy_len + (literal ? 1 : 0); }
    uint64_t end() const { return start + length() - 1; }
};

struct lz77_parse {
    std::vector<lz_phrase> phrases;
    uint64_t text_length = 0;

    size_t phrase_count() const { return phrases.size(); }
};

// Empty report means the parse satisfies all structural invariants: phrases
// tile [1..N], copies point strictly left, every phrase is nonempty, only
// the last phrase may lack a literal.
std::vector<std::string> validate_parse(const lz77_parse& p);

// Greedy left-to-right factorization; each phrase takes the longest factor
// with an earlier start (self-overlap allowed). Throws std::invalid_argument
// on empty input.
lz77_parse parse(std::string_view s);

// Throws std::invalid_argument when the parse is structurally invalid.
std::string decompress(const lz77_parse& p);

// Longest l with S[i..i+l-1] = S[j..j+l-1] for some j < i (1-based), by
// exhaustive scan; the source is the leftmost j reaching l, absent at l = 0.
std::pair<uint64_t, std::optional<uint64_t>> naive_lpf(std::string_view s,
                                                       uint64_t i);

// Suffix array by prefix doubling and its LCP array (lcp[0] = 0,
// lcp[r] = lcp of the suffixes at ranks r-1 and r).
std::vector<uint32_t> suffix_array(std::string_view s);
std::vector<uint32_t> lcp_array(std::string_view s,
                                const std::vector<uint32_t>& sa);

// Per 0-based position: length of the longest factor with an earlier start
// and one maximizing source (0-based, meaningful only when len > 0).
struct lpf_entry {
    uint32_t len = 0;
    uint32_t src = 0;
};
std::vector<lpf_entry> longest_previous_factors(std::string_view s);

} // namespace hialcs
