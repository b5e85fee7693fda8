#include "hialcs/hia_baseline.hpp"

#include <algorithm>
#include <stdexcept>

namespace hialcs {

void validate_query(const weighted_tree& t1, const weighted_tree& t2,
                    const hia_query& q) {
    if (q.v1 >= t1.node_count() || q.v2 >= t2.node_count()) {
        throw std::invalid_argument("hia_query: node id out of range");
    }
    auto check = [](const weighted_tree& t, node_id_t v,
                    const std::optional<weight_t>& ov) {
        if (!ov) {
            return;
        }
        if (*ov > t.weight[v]) {
            throw std::invalid_argument("hia_query: override above node weight");
        }
        node_id_t p = t.parent[v];
        if (p != k_no_node && *ov <= t.weight[p]) {
            throw std::invalid_argument("hia_query: override not above parent weight");
        }
    };
    check(t1, q.v1, q.w1_override);
    check(t2, q.v2, q.w2_override);
}

bool induced(const heavy_path_decomposition& hpd1,
             const heavy_path_decomposition& hpd2, const grid_index& g,
             node_id_t u1, node_id_t u2, probe_counters* counters) {
    auto [x1, x2] = leaf_interval(hpd1, u1);
    auto [y1, y2] = leaf_interval(hpd2, u2);
    if (counters) {
        ++counters->emptiness_calls;
    }
    return g.is_nonempty(x1, x2, y1, y2);
}

std::optional<hia_answer> hia_baseline::query(const hia_query& q,
                                              probe_counters* counters,
                                              std::vector<hia_answer>* trace) const {
    const weighted_tree& t1 = hpd1_->tree;
    const weighted_tree& t2 = hpd2_->tree;
    validate_query(t1, t2, q);

    std::vector<node_id_t> down; // root -> v2
    for (node_id_t u = q.v2; u != k_no_node; u = t2.parent[u]) {
        down.push_back(u);
    }
    std::reverse(down.begin(), down.end());

    std::optional<hia_answer> best;
    node_id_t p = q.v1;
    size_t qi = 0;
    while (true) {
        node_id_t qq = down[qi];
        if (induced(*hpd1_, *hpd2_, *g_, p, qq, counters)) {
            weight_t combined = eff_weight(t1, p, q.v1, q.w1_override) +
                                eff_weight(t2, qq, q.v2, q.w2_override);
            if (trace) {
                trace->push_back({p, qq, combined});
            }
            if (!best || combined > best->combined) {
                best = hia_answer{p, qq, combined};
            }
            if (qi + 1 == down.size()) {
                break;
            }
            ++qi;
        } else {
            if (p == t1.root) {
                break; // unreachable: the root pairs with everything
            }
            p = t1.parent[p];
        }
    }
    return best;
}

naive_hia_oracle::naive_hia_oracle(const weighted_tree& t1, const weighted_tree& t2)
    : t1_(&t1), t2_(&t2) {
    size_t n = t1.leaf_count();
    if (t2.leaf_count() != n) {
        throw std::invalid_argument("naive_hia_oracle: leaf counts differ");
    }
    words_ = (n + 63) / 64;
    auto fill = [&](const weighted_tree& t, std::vector<uint64_t>& bits) {
        bits.assign(t.node_count() * words_, 0);
        // children precede parents in any reverse preorder
        std::vector<node_id_t> order;
        order.reserve(t.node_count());
        std::vector<node_id_t> stack{t.root};
        while (!stack.empty()) {
            node_id_t v = stack.back();
            stack.pop_back();
            order.push_back(v);
            for (node_id_t c : t.children[v]) {
                stack.push_back(c);
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            node_id_t v = *it;
            if (t.is_leaf(v)) {
                bits[v * words_ + t.leaf_label[v] / 64] |=
                    uint64_t{1} << (t.leaf_label[v] % 64);
            }
            if (v != t.root) {
                for (size_t w = 0; w < words_; ++w) {
                    bits[t.parent[v] * words_ + w] |= bits[v * words_ + w];
                }
            }
        }
    };
    fill(t1, bits1_);
    fill(t2, bits2_);
}

std::optional<hia_answer> naive_hia_oracle::query(const hia_query& q) const {
    validate_query(*t1_, *t2_, q);
    std::optional<hia_answer> best;
    for (node_id_t u1 = q.v1; u1 != k_no_node; u1 = t1_->parent[u1]) {
        for (node_id_t u2 = q.v2; u2 != k_no_node; u2 = t2_->parent[u2]) {
            bool shares = false;
            for (size_t w = 0; w < words_ && !shares; ++w) {
                shares = (bits1_[u1 * words_ + w] & bits2_[u2 * words_ + w]) != 0;
            }
            if (!shares) {
                continue;
            }
            weight_t combined = eff_weight(*t1_, u1, q.v1, q.w1_override) +
                                eff_weight(*t2_, u2, q.v2, q.w2_override);
            if (!best || combined > best->combined) {
                best = hia_answer{u1, u2, combined};
            }
        }
    }
    return best;
}

} // namespace hialcs
