#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hialcs/grid.hpp"
#include "hialcs/hia_baseline.hpp"
#include "hialcs/lz.hpp"
#include "hialcs/sampled.hpp"
#include "hialcs/skyline.hpp"
#include "hialcs/trie.hpp"

namespace hialcs {

enum class engine_choice : uint8_t { baseline, skyline, sampled };

struct engine_set {
    bool baseline = true;
    bool skyline = true;
    bool sampled = true;
};

// Per split i: locus and matched length of reverse(P[1..i]) in the
// reversed-phrase trie and of P[i+1..m] in the boundary-suffix trie.
struct split_locus {
    node_id_t v1 = k_no_node;
    uint64_t lcp_left = 0;
    node_id_t v2 = k_no_node;
    uint64_t lcp_right = 0;
};

// Immutable LCS index over one text: the parse, both boundary tries with
// their decompositions, the leaf grid, and the materialized HIA engines.
// Engines point into the decompositions, so instances stay put.
class lz_text_index {
public:
    // sample_rate 0 picks ceil(log2 of the phrase count), at least 1
    explicit lz_text_index(std::string text, engine_set engines = {},
                           uint32_t sample_rate = 0);
    // reassembly from stored parts; the parse must describe the text
    lz_text_index(std::string text, lz77_parse parsed, engine_set engines,
                  uint32_t sample_rate);

    lz_text_index(const lz_text_index&) = delete;
    lz_text_index& operator=(const lz_text_index&) = delete;

    const std::string& text() const { return text_; }
    const lz77_parse& parse() const { return parse_; }
    const trie_pair& tries() const { return tries_; }
    const heavy_path_decomposition& hpd_rev() const { return hpd_rev_; }
    const heavy_path_decomposition& hpd_suf() const { return hpd_suf_; }
    const grid_index& grid() const { return grid_; }
    engine_set engines() const { return engines_; }
    uint32_t sample_rate() const { return sample_rate_; }

    // null when the engine was not materialized
    const hia_baseline* baseline() const { return baseline_.get(); }
    const hia_skyline* skyline() const { return skyline_.get(); }
    const hia_sampled* sampled() const { return sampled_.get(); }

    // 1-based end position of phrase k
    uint64_t boundary_end(uint32_t k) const;

    // loci for every split i in [0, |pat|]; throws on an empty pattern
    std::vector<split_locus> split_loci(std::string_view pat) const;

private:
    void assemble();

    std::string text_;
    lz77_parse parse_;
    engine_set engines_;
    uint32_t sample_rate_ = 0;
    trie_pair tries_;
    heavy_path_decomposition hpd_rev_, hpd_suf_;
    grid_index grid_;
    std::unique_ptr<hia_baseline> baseline_;
    std::unique_ptr<hia_skyline> skyline_;
    std::unique_ptr<hia_sampled> sampled_;
};

} // namespace hialcs
