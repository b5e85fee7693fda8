#include "hialcs/sampled.hpp"

#include <algorithm>
#include <stdexcept>

#include "hialcs/hia_baseline.hpp"

namespace hialcs {

namespace {

inline bool ext_equal(const ext_pair& l, const ext_pair& r) {
    return l.depth_a == r.depth_a && l.depth_b == r.depth_b;
}

inline uint64_t locus_key(leaf_label_t lab, path_id_t p) {
    return (uint64_t{lab} << 32) | p;
}

} // namespace

size_t sampled_list::footprint_bytes() const {
    size_t bytes = sizeof(uint32_t);
    bytes += (sample_a.size() + sample_b.size() + prefix_max_b.size()) *
             sizeof(node_id_t);
    bytes += block_max_db.size() * sizeof(uint32_t);
    bytes += (sk_a.size() + sk_b.size()) * sizeof(node_id_t);
    bytes += sk_ext_idx.size() * sizeof(uint32_t);
    bytes += sk_rmq.footprint_bytes();
    bytes += (gap_a.size() + gap_b.size()) * sizeof(node_id_t);
    bytes += gap_rmq.footprint_bytes();
    return bytes;
}

size_t footprint_bytes(const path_pair_table& table) {
    size_t bytes = 0;
    for (const auto& [key, list] : table) {
        bytes += 16; // key and slot
        bytes += (list.a.size() + list.b.size()) * sizeof(node_id_t);
        bytes += (list.depth_a.size() + list.depth_b.size()) * sizeof(uint32_t);
        bytes += list.wsum.size() * sizeof(weight_t);
        bytes += list.rmq.footprint_bytes();
    }
    return bytes;
}

size_t footprint_bytes(const sampled_table& table) {
    size_t bytes = 0;
    for (const auto& [key, list] : table) {
        bytes += 16 + list.footprint_bytes();
    }
    return bytes;
}

hia_sampled::hia_sampled(const heavy_path_decomposition& hpd1,
                         const heavy_path_decomposition& hpd2,
                         const grid_index& g, uint32_t sample_rate,
                         bool keep_full_lists)
    : hpd1_(&hpd1), hpd2_(&hpd2), g_(&g), sample_rate_(sample_rate) {
    if (sample_rate_ == 0) {
        throw std::invalid_argument("sample rate must be positive");
    }
    if (hpd1.orient != orientation::heavy_leftmost ||
        hpd2.orient != orientation::heavy_rightmost) {
        throw std::invalid_argument(
            "sampled engine requires a heavy_leftmost first tree and a "
            "heavy_rightmost second tree");
    }
    const weighted_tree& t1 = hpd1.tree;
    const weighted_tree& t2 = hpd2.tree;
    size_t n = hpd1.node_at_rank.size();

    std::unordered_map<path_pair_key, std::vector<ext_pair>> buckets;
    for (leaf_label_t lab = 0; lab < n; ++lab) {
        for (auto [p1, a] : hpd1.ancestor_table[lab]) {
            locus1_.emplace(locus_key(lab, p1), a);
        }
        for (auto [p2, b] : hpd2.ancestor_table[lab]) {
            locus2_.emplace(locus_key(lab, p2), b);
        }
        for (auto [p1, a] : hpd1.ancestor_table[lab]) {
            for (auto [p2, b] : hpd2.ancestor_table[lab]) {
                buckets[make_path_pair_key(p1, p2)].push_back(
                    {a, b, t1.depth[a], t2.depth[b]});
            }
        }
    }

    uint32_t B = sample_rate_;
    table_.reserve(buckets.size());
    for (auto& [key, ext] : buckets) {
        std::sort(ext.begin(), ext.end(), ext_before);
        ext.erase(std::unique(ext.begin(), ext.end(), ext_equal), ext.end());

        sampled_list list;
        list.ext_len = static_cast<uint32_t>(ext.size());

        // skyline positions: each depth_a run ends at that a's deepest b,
        // and a staircase keeps strictly increasing depth_b
        std::vector<uint32_t> sky;
        uint32_t last_db = 0;
        for (size_t i = 0; i < ext.size();) {
            size_t run = i;
            while (run + 1 < ext.size() &&
                   ext[run + 1].depth_a == ext[i].depth_a) {
                ++run;
            }
            if (sky.empty() || ext[run].depth_b > last_db) {
                last_db = ext[run].depth_b;
                sky.push_back(static_cast<uint32_t>(run));
            }
            i = run + 1;
        }

        // samples and prefix maxima in one sweep
        uint32_t best_db = 0;
        node_id_t best_b = k_no_node;
        for (uint32_t p = 0; p < list.ext_len; ++p) {
            if (best_b == k_no_node || ext[p].depth_b > best_db) {
                best_db = ext[p].depth_b;
                best_b = ext[p].b;
            }
            if (p % B == 0) {
                list.sample_a.push_back(ext[p].a);
                list.sample_b.push_back(ext[p].b);
                list.prefix_max_b.push_back(best_b);
            }
        }
        list.block_max_db.assign(list.sample_count(), 0);
        for (uint32_t p = 0; p < list.ext_len; ++p) {
            uint32_t t = p / B;
            list.block_max_db[t] = std::max(list.block_max_db[t], ext[p].depth_b);
        }

        // skyline pairs adjacent to some sample
        std::vector<uint32_t> picked;
        for (size_t t = 0; t < list.sample_count(); ++t) {
            uint32_t s = static_cast<uint32_t>(t) * B;
            auto gt = std::upper_bound(sky.begin(), sky.end(), s);
            if (gt != sky.begin()) {
                picked.push_back(static_cast<uint32_t>(gt - sky.begin()) - 1);
            }
            auto ge = std::lower_bound(sky.begin(), sky.end(), s);
            if (ge != sky.end()) {
                picked.push_back(static_cast<uint32_t>(ge - sky.begin()));
            }
        }
        std::sort(picked.begin(), picked.end());
        picked.erase(std::unique(picked.begin(), picked.end()), picked.end());

        for (uint32_t si : picked) {
            const ext_pair& e = ext[sky[si]];
            list.sk_a.push_back(e.a);
            list.sk_b.push_back(e.b);
            list.sk_ext_idx.push_back(sky[si]);
        }
        if (picked.size() >= 3) {
            std::vector<weight_t> wsum;
            wsum.reserve(picked.size());
            for (uint32_t si : picked) {
                const ext_pair& e = ext[sky[si]];
                wsum.push_back(t1.weight[e.a] + t2.weight[e.b]);
            }
            list.sk_rmq = sparse_table<weight_t>(std::move(wsum));
        }

        if (picked.size() > 1) {
            size_t gaps = picked.size() - 1;
            list.gap_a.assign(gaps, k_no_node);
            list.gap_b.assign(gaps, k_no_node);
            std::vector<weight_t> gap_vals(gaps, 0);
            for (size_t gi = 0; gi < gaps; ++gi) {
                for (uint32_t si = picked[gi] + 1; si < picked[gi + 1]; ++si) {
                    const ext_pair& e = ext[sky[si]];
                    weight_t w = t1.weight[e.a] + t2.weight[e.b] + 1;
                    if (w > gap_vals[gi]) {
                        gap_vals[gi] = w;
                        list.gap_a[gi] = e.a;
                        list.gap_b[gi] = e.b;
                    }
                }
            }
            if (gaps >= 3) {
                list.gap_rmq = sparse_table<weight_t>(std::move(gap_vals));
            }
        }

        if (keep_full_lists) {
            list.full = std::move(ext);
        }
        table_.emplace(key, std::move(list));
    }
}

bool hia_sampled::is_pair_active(path_id_t p1, path_id_t p2,
                                 probe_counters* counters) const {
    if (p1 >= hpd1_->path_count() || p2 >= hpd2_->path_count()) {
        throw std::out_of_range("path id out of range");
    }
    return induced(*hpd1_, *hpd2_, *g_, hpd1_->path_head[p1],
                   hpd2_->path_head[p2], counters);
}

std::vector<ext_pair> hia_sampled::recover_block(path_id_t p1, path_id_t p2,
                                                 size_t t_lo, size_t t_hi,
                                                 probe_counters* counters) const {
    auto it = table_.find(make_path_pair_key(p1, p2));
    if (it == table_.end()) {
        throw std::out_of_range("no stored list for that path pair");
    }
    const sampled_list& list = it->second;
    if (t_lo >= list.sample_count()) {
        throw std::out_of_range("sample index out of range");
    }
    if (t_hi != t_lo + 1) {
        throw std::invalid_argument("samples must be consecutive and in order");
    }
    return recover_interior(p1, p2, list, t_lo, counters);
}

// The extended entries strictly between sample t and the next sample (or
// the list end): witness leaves sit below the shallow bound but not below
// the deep sample's in-path child, one contiguous rank strip under
// heavy_leftmost, and below the second path's head. One report, then map
// leaves back to lowest-ancestor pairs and cut to the exclusive window.
std::vector<ext_pair>
hia_sampled::recover_interior(path_id_t p1, path_id_t p2,
                              const sampled_list& list, size_t t,
                              probe_counters* counters) const {
    size_t nsamp = list.sample_count();
    uint32_t lo = static_cast<uint32_t>(t) * sample_rate_;
    uint32_t hi = t + 1 < nsamp ? lo + sample_rate_ : list.ext_len;
    std::vector<ext_pair> out;
    if (hi <= lo + 1) {
        return out;
    }
    const weighted_tree& t1 = hpd1_->tree;
    const weighted_tree& t2 = hpd2_->tree;

    node_id_t shallow =
        t + 1 < nsamp ? list.sample_a[t + 1] : hpd1_->path_head[p1];
    auto [xl, xr] = leaf_interval(*hpd1_, shallow);
    node_id_t w = hpd1_->heavy_child[list.sample_a[t]];
    if (w != k_no_node) {
        xl = leaf_interval(*hpd1_, w).second + 1;
    }
    auto [yl, yr] = leaf_interval(*hpd2_, hpd2_->path_head[p2]);

    if (xl <= xr) {
        auto pts = g_->report(xl, xr, yl, yr);
        if (counters) {
            counters->reported_points += pts.size();
        }
        ext_pair prev{list.sample_a[t], list.sample_b[t],
                      t1.depth[list.sample_a[t]], t2.depth[list.sample_b[t]]};
        ext_pair next;
        if (t + 1 < nsamp) {
            next = {list.sample_a[t + 1], list.sample_b[t + 1],
                    t1.depth[list.sample_a[t + 1]],
                    t2.depth[list.sample_b[t + 1]]};
        }
        for (auto [x, y] : pts) {
            leaf_label_t lab = t1.leaf_label[hpd1_->node_at_rank[x]];
            node_id_t a = locus1_.at(locus_key(lab, p1));
            node_id_t b = locus2_.at(locus_key(lab, p2));
            ext_pair e{a, b, t1.depth[a], t2.depth[b]};
            if (!ext_before(prev, e)) {
                continue;
            }
            if (t + 1 < nsamp && !ext_before(e, next)) {
                continue;
            }
            out.push_back(e);
        }
        std::sort(out.begin(), out.end(), ext_before);
        out.erase(std::unique(out.begin(), out.end(), ext_equal), out.end());
    }
    if (out.size() != hi - lo - 1) {
        throw std::logic_error("block recovery out of step with stored samples");
    }
    return out;
}

void hia_sampled::query_pair(path_id_t p1, path_id_t p2,
                             const sampled_list& list, node_id_t d1,
                             node_id_t d2, weight_t eff1, weight_t eff2,
                             std::optional<hia_answer>& best,
                             probe_counters* counters) const {
    const weighted_tree& t1 = hpd1_->tree;
    const weighted_tree& t2 = hpd2_->tree;
    uint32_t dd1 = t1.depth[d1];
    uint32_t dd2 = t2.depth[d2];

    auto offer = [&](node_id_t u1, node_id_t u2, weight_t combined) {
        if (!best || combined > best->combined) {
            best = hia_answer{u1, u2, combined};
        }
    };
    auto eff_at = [&](node_id_t a, node_id_t b) {
        return (a == d1 ? eff1 : t1.weight[a]) + (b == d2 ? eff2 : t2.weight[b]);
    };

    // the pair (d1, d2) itself; also stands in for any candidate whose
    // partner hangs strictly below d1 or d2
    if (induced(*hpd1_, *hpd2_, *g_, d1, d2, counters)) {
        offer(d1, d2, eff1 + eff2);
    }

    size_t nsamp = list.sample_count();
    uint32_t B = sample_rate_;
    std::unordered_map<size_t, std::vector<ext_pair>> cache;
    auto block = [&](size_t t) -> const std::vector<ext_pair>& {
        auto it = cache.find(t);
        if (it == cache.end()) {
            it = cache.emplace(t, recover_interior(p1, p2, list, t, counters))
                     .first;
        }
        return it->second;
    };
    auto sample_da = [&](size_t t) { return t1.depth[list.sample_a[t]]; };
    auto sample_db = [&](size_t t) { return t2.depth[list.sample_b[t]]; };

    // stored skyline neighbors inside the corner
    int64_t nn = static_cast<int64_t>(list.sk_a.size());
    auto sk_da = [&](int64_t i) { return t1.depth[list.sk_a[i]]; };
    auto sk_db = [&](int64_t i) { return t2.depth[list.sk_b[i]]; };
    int64_t ip = 0, jp = 0;
    {
        int64_t lo2 = 0, hi2 = nn;
        while (lo2 < hi2) {
            int64_t mid = (lo2 + hi2) / 2;
            if (sk_da(mid) > dd1) {
                lo2 = mid + 1;
            } else {
                hi2 = mid;
            }
        }
        ip = lo2;
        lo2 = 0;
        hi2 = nn;
        while (lo2 < hi2) {
            int64_t mid = (lo2 + hi2) / 2;
            if (sk_db(mid) <= dd2) {
                lo2 = mid + 1;
            } else {
                hi2 = mid;
            }
        }
        jp = lo2 - 1;
    }
    if (ip <= jp) {
        // coincidences with d1/d2 are possible only at the endpoints
        offer(list.sk_a[ip], list.sk_b[ip], eff_at(list.sk_a[ip], list.sk_b[ip]));
        offer(list.sk_a[jp], list.sk_b[jp], eff_at(list.sk_a[jp], list.sk_b[jp]));
        if (ip + 1 < jp) {
            size_t x = list.sk_rmq.argbest(ip + 1, jp - 1);
            offer(list.sk_a[x], list.sk_b[x], list.sk_rmq.value_at(x));
        }
        // heaviest unstored skyline pair of each fully covered gap
        if (ip < jp) {
            if (list.gap_rmq.size() > 0) {
                size_t x = list.gap_rmq.argbest(ip, jp - 1);
                if (list.gap_rmq.value_at(x) > 0) {
                    offer(list.gap_a[x], list.gap_b[x],
                          list.gap_rmq.value_at(x) - 1);
                }
            } else {
                for (int64_t gi = ip; gi < jp; ++gi) {
                    if (list.gap_a[gi] != k_no_node) {
                        offer(list.gap_a[gi], list.gap_b[gi],
                              t1.weight[list.gap_a[gi]] +
                                  t2.weight[list.gap_b[gi]]);
                    }
                }
            }
        }
    }

    // corner skyline pairs can hide just outside the stored in-range
    // neighbors; they always fit inside one block, which gets scanned
    auto scan_gap = [&](int64_t glo, int64_t ghi) {
        if (ghi - glo <= 1) {
            return;
        }
        size_t t = static_cast<size_t>(glo + 1) / B;
        const auto& slice = block(t);
        int64_t base = static_cast<int64_t>(t) * B;
        for (size_t r = 0; r < slice.size(); ++r) {
            int64_t pos = base + 1 + static_cast<int64_t>(r);
            if (pos <= glo) {
                continue;
            }
            if (pos >= ghi) {
                break;
            }
            const ext_pair& e = slice[r];
            if (e.depth_a <= dd1 && e.depth_b <= dd2) {
                offer(e.a, e.b, eff_at(e.a, e.b));
            }
        }
    };
    if (ip < nn) {
        if (ip > 0) {
            scan_gap(list.sk_ext_idx[ip - 1], list.sk_ext_idx[ip]);
        }
    } else if (nn > 0) {
        scan_gap(list.sk_ext_idx[nn - 1], list.ext_len);
    }
    if (jp >= 0) {
        scan_gap(list.sk_ext_idx[jp],
                 jp + 1 < nn ? static_cast<int64_t>(list.sk_ext_idx[jp + 1])
                             : static_cast<int64_t>(list.ext_len));
    }

    // u1 = d1 exactly: the deepest partner of d1 is the deepest b among
    // entries whose a sits at-or-below d1, a prefix of the extended list
    int64_t tstar = -1;
    {
        size_t lo2 = 0, hi2 = nsamp;
        while (lo2 < hi2) {
            size_t mid = (lo2 + hi2) / 2;
            if (sample_da(mid) >= dd1) {
                lo2 = mid + 1;
            } else {
                hi2 = mid;
            }
        }
        tstar = static_cast<int64_t>(lo2) - 1;
    }
    if (tstar >= 0) {
        size_t ts = static_cast<size_t>(tstar);
        node_id_t deep_b = list.prefix_max_b[ts];
        uint32_t deep_db = t2.depth[deep_b];
        for (const ext_pair& e : block(ts)) {
            if (e.depth_a < dd1) {
                break;
            }
            if (e.depth_b > deep_db) {
                deep_db = e.depth_b;
                deep_b = e.b;
            }
        }
        if (deep_db <= dd2) {
            offer(d1, deep_b, eff1 + (deep_b == d2 ? eff2 : t2.weight[deep_b]));
        }
        // otherwise the partner hangs below d2 and (d1, d2) is induced,
        // already offered above
    }

    // u2 = d2 exactly, symmetric: the deepest usable partner of d2 is the
    // first entry at-or-past d1's position whose b sits at-or-below d2
    size_t tstart = 0;
    {
        size_t lo2 = 0, hi2 = nsamp;
        while (lo2 < hi2) {
            size_t mid = (lo2 + hi2) / 2;
            if (sample_da(mid) > dd1) {
                lo2 = mid + 1;
            } else {
                hi2 = mid;
            }
        }
        tstart = lo2 > 0 ? lo2 - 1 : 0;
    }
    auto p3_hit = [&](node_id_t a) {
        offer(a, d2, (a == d1 ? eff1 : t1.weight[a]) + eff2);
    };
    bool found = false;
    if (sample_da(tstart) <= dd1 && sample_db(tstart) >= dd2) {
        p3_hit(list.sample_a[tstart]);
        found = true;
    }
    if (!found) {
        for (const ext_pair& e : block(tstart)) {
            if (e.depth_a <= dd1 && e.depth_b >= dd2) {
                p3_hit(e.a);
                found = true;
                break;
            }
        }
    }
    for (size_t t = tstart + 1; !found && t < nsamp; ++t) {
        if (list.block_max_db[t] < dd2) {
            continue;
        }
        // every entry from here on has a at-or-above d1
        if (sample_db(t) >= dd2) {
            p3_hit(list.sample_a[t]);
        } else {
            bool inner = false;
            for (const ext_pair& e : block(t)) {
                if (e.depth_b >= dd2) {
                    p3_hit(e.a);
                    inner = true;
                    break;
                }
            }
            if (!inner) {
                throw std::logic_error("block maximum out of step with recovery");
            }
        }
        found = true;
    }
}

std::optional<hia_answer> hia_sampled::query(const hia_query& q,
                                             probe_counters* counters) const {
    const weighted_tree& t1 = hpd1_->tree;
    const weighted_tree& t2 = hpd2_->tree;
    validate_query(t1, t2, q);

    auto pseq = path_sequence(*hpd1_, q.v1);
    auto qseq = path_sequence(*hpd2_, q.v2);
    size_t k = pseq.size() - 1;
    size_t s = 0;
    std::optional<hia_answer> best;
    while (true) {
        auto [pa, d1] = pseq[k];
        auto [pb, d2] = qseq[s];
        if (is_pair_active(pa, pb, counters)) {
            auto it = table_.find(make_path_pair_key(pa, pb));
            if (it == table_.end()) {
                throw std::logic_error("active path pair has no stored list");
            }
            if (counters) {
                ++counters->path_pair_visits;
            }
            weight_t eff1 = eff_weight(t1, d1, q.v1, q.w1_override);
            weight_t eff2 = eff_weight(t2, d2, q.v2, q.w2_override);
            query_pair(pa, pb, it->second, d1, d2, eff1, eff2, best, counters);
        }
        if (k > 0 &&
            !induced(*hpd1_, *hpd2_, *g_, hpd1_->path_head[pa], d2, counters)) {
            --k;
        } else if (s + 1 < qseq.size()) {
            ++s;
        } else {
            break;
        }
    }
    return best;
}

size_t hia_sampled::stored_bytes() const { return footprint_bytes(table_); }

} // namespace hialcs
