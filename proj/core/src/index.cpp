#include "hialcs/index.hpp"

#include <bit>
#include <stdexcept>

namespace hialcs {

lz_text_index::lz_text_index(std::string text, engine_set engines,
                             uint32_t sample_rate)
    : text_(std::move(text)), engines_(engines), sample_rate_(sample_rate) {
    if (text_.empty()) {
        throw std::invalid_argument("cannot index an empty text");
    }
    parse_ = hialcs::parse(text_);
    assemble();
}

lz_text_index::lz_text_index(std::string text, lz77_parse parsed,
                             engine_set engines, uint32_t sample_rate)
    : text_(std::move(text)),
      parse_(std::move(parsed)),
      engines_(engines),
      sample_rate_(sample_rate) {
    if (text_.empty()) {
        throw std::invalid_argument("cannot index an empty text");
    }
    assemble();
}

void lz_text_index::assemble() {
    tries_ = build_tries(text_, parse_);
    hpd_rev_ = decompose(tries_.rev.tree, orientation::heavy_leftmost);
    hpd_suf_ = decompose(tries_.suf.tree, orientation::heavy_rightmost);
    grid_ = grid_index(tries_.pi);
    if (sample_rate_ == 0) {
        uint32_t n = parse_.phrase_count();
        sample_rate_ = n <= 2 ? 1 : std::bit_width(n - 1);
    }
    if (engines_.baseline) {
        baseline_ = std::make_unique<hia_baseline>(hpd_rev_, hpd_suf_, grid_);
    }
    if (engines_.skyline) {
        skyline_ = std::make_unique<hia_skyline>(hpd_rev_, hpd_suf_, grid_);
    }
    if (engines_.sampled) {
        sampled_ = std::make_unique<hia_sampled>(hpd_rev_, hpd_suf_, grid_,
                                                 sample_rate_);
    }
}

uint64_t lz_text_index::boundary_end(uint32_t k) const {
    if (k >= parse_.phrase_count()) {
        throw std::out_of_range("phrase index out of range");
    }
    return parse_.phrases[k].end();
}

std::vector<split_locus> lz_text_index::split_loci(std::string_view pat) const {
    if (pat.empty()) {
        throw std::invalid_argument("pattern must be nonempty");
    }
    size_t m = pat.size();
    std::string rp(pat.rbegin(), pat.rend());
    std::vector<split_locus> out(m + 1);
    for (size_t i = 0; i <= m; ++i) {
        auto left = descend(tries_.rev, tries_.reversed,
                            std::string_view(rp).substr(m - i));
        auto right = descend(tries_.suf, text_, pat.substr(i));
        out[i] = {left.node, left.matched, right.node, right.matched};
    }
    return out;
}

} // namespace hialcs
