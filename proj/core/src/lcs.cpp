#include "hialcs/lcs.hpp"

#include <stdexcept>

namespace hialcs {

namespace {

std::optional<hia_answer> run_query(const lz_text_index& idx,
                                    engine_choice engine, const hia_query& q,
                                    probe_counters* counters) {
    switch (engine) {
    case engine_choice::baseline:
        if (!idx.baseline()) {
            throw std::invalid_argument("baseline engine not materialized");
        }
        return idx.baseline()->query(q, counters);
    case engine_choice::skyline:
        if (!idx.skyline()) {
            throw std::invalid_argument("skyline engine not materialized");
        }
        return idx.skyline()->query(q, counters);
    case engine_choice::sampled:
        if (!idx.sampled()) {
            throw std::invalid_argument("sampled engine not materialized");
        }
        return idx.sampled()->query(q, counters);
    }
    throw std::invalid_argument("unknown engine");
}

hia_query query_for(const split_locus& l) {
    return {l.v1, l.v2, l.lcp_left, l.lcp_right};
}

} // namespace

lcs_result lcs(const lz_text_index& idx, std::string_view pat,
               engine_choice engine, probe_counters* counters) {
    auto loci = idx.split_loci(pat);
    std::optional<hia_answer> best;
    uint32_t best_i = 0;
    for (uint32_t i = 0; i < loci.size(); ++i) {
        auto ans = run_query(idx, engine, query_for(loci[i]), counters);
        if (ans && (!best || ans->combined > best->combined)) {
            best = *ans;
            best_i = i;
        }
    }

    lcs_result res;
    res.split_i = best_i;
    if (!best || best->combined == 0) {
        return res;
    }
    res.length = best->combined;

    auto [x1, x2] = leaf_interval(idx.hpd_rev(), best->u1);
    auto [y1, y2] = leaf_interval(idx.hpd_suf(), best->u2);
    auto pt = idx.grid().any_point(x1, x2, y1, y2);
    if (!pt) {
        throw std::logic_error("winning ancestor pair has no witness leaf");
    }
    if (counters) {
        counters->reported_points += 1;
    }
    uint32_t k =
        idx.hpd_rev().tree.leaf_label[idx.hpd_rev().node_at_rank[pt->first]];
    uint64_t eff1 = eff_weight(idx.hpd_rev().tree, best->u1, loci[best_i].v1,
                               loci[best_i].lcp_left);
    res.boundary_k = k;
    res.s_start = idx.boundary_end(k) - eff1 + 1;
    res.p_start = best_i - eff1 + 1;

    uint64_t len = res.length;
    if (*res.s_start + len - 1 > idx.text().size() ||
        *res.p_start + len - 1 > pat.size()) {
        throw std::logic_error("witness out of range");
    }
    std::string_view in_text =
        std::string_view(idx.text()).substr(*res.s_start - 1, len);
    std::string_view in_pat = pat.substr(*res.p_start - 1, len);
    if (in_text != in_pat) {
        throw std::logic_error("witness does not match the text");
    }
    return res;
}

std::vector<uint64_t> lcs_all_splits(const lz_text_index& idx,
                                     std::string_view pat,
                                     engine_choice engine,
                                     probe_counters* counters) {
    auto loci = idx.split_loci(pat);
    std::vector<uint64_t> out(loci.size(), 0);
    for (uint32_t i = 0; i < loci.size(); ++i) {
        auto ans = run_query(idx, engine, query_for(loci[i]), counters);
        out[i] = ans ? ans->combined : 0;
    }
    return out;
}

naive_lcs_result naive_lcs(std::string_view s, std::string_view p) {
    naive_lcs_result res;
    std::vector<uint64_t> prev(p.size() + 1, 0), cur(p.size() + 1, 0);
    for (size_t i = 1; i <= s.size(); ++i) {
        for (size_t j = 1; j <= p.size(); ++j) {
            cur[j] = s[i - 1] == p[j - 1] ? prev[j - 1] + 1 : 0;
            if (cur[j] > res.length) {
                res.length = cur[j];
                res.s_start = i - cur[j] + 1;
                res.p_start = j - cur[j] + 1;
            }
        }
        std::swap(prev, cur);
    }
    return res;
}

} // namespace hialcs
