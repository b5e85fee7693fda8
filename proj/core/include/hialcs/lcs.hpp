#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "hialcs/index.hpp"

namespace hialcs {

struct lcs_result {
    uint64_t length = 0;
    // 1-based start positions, absent when length is 0
    std::optional<uint64_t> p_start;
    std::optional<uint64_t> s_start;
    // winning split, leftmost among maxima
    uint32_t split_i = 0;
    // phrase whose boundary the witness crosses
    std::optional<uint32_t> boundary_k;
};

// One HIA query per split with the locus match lengths as overrides; the
// winner's witness comes from a single grid report and is checked against
// the text before returning. Throws std::invalid_argument for an empty
// pattern or an engine the index did not materialize.
lcs_result lcs(const lz_text_index& idx, std::string_view pat,
               engine_choice engine, probe_counters* counters = nullptr);

// Best combined weight per split, indexed by i; the maximum is lcs().length.
std::vector<uint64_t> lcs_all_splits(const lz_text_index& idx,
                                     std::string_view pat,
                                     engine_choice engine,
                                     probe_counters* counters = nullptr);

// Quadratic common-substring table; the witness is the first maximum in
// row-major order. Start positions are 1-based, meaningful when length > 0.
struct naive_lcs_result {
    uint64_t length = 0;
    uint64_t s_start = 0;
    uint64_t p_start = 0;
};
naive_lcs_result naive_lcs(std::string_view s, std::string_view p);

} // namespace hialcs
