#include "hialcs/skyline.hpp"

#include <algorithm>

#include "hialcs/hia_baseline.hpp"

namespace hialcs {

path_pair_table build_skyline_table(const heavy_path_decomposition& hpd1,
                                    const heavy_path_decomposition& hpd2) {
    const weighted_tree& t1 = hpd1.tree;
    const weighted_tree& t2 = hpd2.tree;
    size_t n = hpd1.node_at_rank.size();

    std::unordered_map<path_pair_key, std::vector<std::pair<node_id_t, node_id_t>>>
        buckets;
    for (leaf_label_t lab = 0; lab < n; ++lab) {
        for (auto [p1, a] : hpd1.ancestor_table[lab]) {
            for (auto [p2, b] : hpd2.ancestor_table[lab]) {
                buckets[make_path_pair_key(p1, p2)].push_back({a, b});
            }
        }
    }

    path_pair_table table;
    table.reserve(buckets.size());
    for (auto& [key, pairs] : buckets) {
        // depth identifies the node within a fixed path, so sorting by
        // (depth_a desc, depth_b desc) groups duplicates of a adjacently
        // with its deepest b first
        std::sort(pairs.begin(), pairs.end(),
                  [&](const auto& l, const auto& r) {
                      if (t1.depth[l.first] != t1.depth[r.first]) {
                          return t1.depth[l.first] > t1.depth[r.first];
                      }
                      return t2.depth[l.second] > t2.depth[r.second];
                  });
        skyline_list list;
        uint32_t last_db = 0;
        node_id_t last_a = k_no_node;
        for (auto [a, b] : pairs) {
            if (a == last_a) {
                continue; // keeps only the deepest b per a
            }
            last_a = a;
            if (!list.a.empty() && t2.depth[b] <= last_db) {
                continue; // dominated by the previous kept pair
            }
            last_db = t2.depth[b];
            list.a.push_back(a);
            list.b.push_back(b);
            list.depth_a.push_back(t1.depth[a]);
            list.depth_b.push_back(t2.depth[b]);
            list.wsum.push_back(t1.weight[a] + t2.weight[b]);
        }
        list.rmq = sparse_table<weight_t>(list.wsum);
        table.emplace(key, std::move(list));
    }
    return table;
}

size_t total_list_length(const path_pair_table& table) {
    size_t total = 0;
    for (const auto& [key, list] : table) {
        total += list.size();
    }
    return total;
}

std::optional<hia_answer> query_path_pair(const skyline_list& list,
                                          const weighted_tree& t1,
                                          const weighted_tree& t2, node_id_t d1,
                                          node_id_t d2, weight_t eff1,
                                          weight_t eff2) {
    int64_t m = static_cast<int64_t>(list.size());
    if (m == 0) {
        return std::nullopt;
    }
    uint32_t dd1 = t1.depth[d1];
    uint32_t dd2 = t2.depth[d2];
    // depth_a descending: i = first index with depth_a <= dd1
    int64_t i = std::lower_bound(list.depth_a.begin(), list.depth_a.end(), dd1,
                                 [](uint32_t x, uint32_t key) { return x > key; }) -
                list.depth_a.begin();
    // depth_b ascending: j = last index with depth_b <= dd2, -1 if none
    int64_t j = std::upper_bound(list.depth_b.begin(), list.depth_b.end(), dd2) -
                list.depth_b.begin() - 1;

    std::optional<hia_answer> best;
    auto offer = [&](node_id_t u1, node_id_t u2, weight_t combined) {
        if (!best || combined > best->combined) {
            best = hia_answer{u1, u2, combined};
        }
    };
    auto val_at = [&](int64_t x) {
        weight_t w = (list.a[x] == d1 ? eff1 : t1.weight[list.a[x]]) +
                     (list.b[x] == d2 ? eff2 : t2.weight[list.b[x]]);
        offer(list.a[x], list.b[x], w);
    };

    // pairs fully inside the corner [i..j]; coincidences with d1/d2 are
    // possible only at the endpoints
    if (i <= j) {
        val_at(i);
        val_at(j);
        if (i + 1 < j) {
            size_t x = list.rmq.argbest(i + 1, j - 1);
            offer(list.a[x], list.b[x], list.wsum[x]);
        }
    }

    // u1 = d1 exactly: the deepest partner of d1 is b[k], for k the pair
    // whose a sits at-or-just-below d1
    int64_t k = (i < m && list.depth_a[i] == dd1) ? i : i - 1;
    if (k >= 0) {
        if (list.depth_b[k] <= dd2) {
            offer(d1, list.b[k],
                  eff1 + (list.b[k] == d2 ? eff2 : t2.weight[list.b[k]]));
        } else {
            // b[k] hangs below d2, so (d1, d2) is itself induced
            offer(d1, d2, eff1 + eff2);
        }
    }

    // u2 = d2 exactly, symmetric: deepest partner of d2 is a[k2]
    int64_t k2 = (j >= 0 && list.depth_b[j] == dd2) ? j : j + 1;
    if (k2 < m) {
        if (list.depth_a[k2] <= dd1) {
            offer(list.a[k2], d2,
                  (list.a[k2] == d1 ? eff1 : t1.weight[list.a[k2]]) + eff2);
        } else {
            offer(d1, d2, eff1 + eff2);
        }
    }
    return best;
}

std::vector<std::pair<path_id_t, node_id_t>>
path_sequence(const heavy_path_decomposition& hpd, node_id_t v) {
    std::vector<std::pair<path_id_t, node_id_t>> seq;
    node_id_t u = v;
    while (u != k_no_node) {
        seq.push_back({hpd.path_of[u], u});
        u = hpd.tree.parent[hpd.path_head[hpd.path_of[u]]];
    }
    std::reverse(seq.begin(), seq.end());
    return seq;
}

hia_skyline::hia_skyline(const heavy_path_decomposition& hpd1,
                         const heavy_path_decomposition& hpd2,
                         const grid_index& g)
    : hpd1_(&hpd1), hpd2_(&hpd2), g_(&g),
      table_(build_skyline_table(hpd1, hpd2)) {}

std::optional<hia_answer> hia_skyline::query(const hia_query& q,
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
        auto it = table_.find(make_path_pair_key(pa, pb));
        if (it != table_.end()) {
            if (counters) {
                ++counters->path_pair_visits;
            }
            weight_t eff1 = eff_weight(t1, d1, q.v1, q.w1_override);
            weight_t eff2 = eff_weight(t2, d2, q.v2, q.w2_override);
            auto cand = query_path_pair(it->second, t1, t2, d1, d2, eff1, eff2);
            if (cand && (!best || cand->combined > best->combined)) {
                best = cand;
            }
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

} // namespace hialcs
