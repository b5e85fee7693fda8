#include "hialcs/testing.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace hialcs::testing {

weighted_tree gen_tree(std::mt19937_64& rng, uint32_t n_leaves) {
    weighted_tree t;
    std::vector<leaf_label_t> labels(n_leaves);
    std::iota(labels.begin(), labels.end(), 0u);
    std::shuffle(labels.begin(), labels.end(), rng);

    auto new_node = [&](node_id_t parent) {
        node_id_t id = static_cast<node_id_t>(t.parent.size());
        t.parent.push_back(parent);
        t.children.emplace_back();
        t.leaf_label.push_back(k_no_label);
        if (parent == k_no_node) {
            t.depth.push_back(0);
            t.weight.push_back(rng() % 3);
        } else {
            t.children[parent].push_back(id);
            t.depth.push_back(t.depth[parent] + 1);
            t.weight.push_back(t.weight[parent] + 1 + rng() % 4);
        }
        return id;
    };

    struct job {
        node_id_t node;
        std::vector<leaf_label_t> labels;
    };
    std::vector<job> stack;
    t.root = new_node(k_no_node);
    stack.push_back({t.root, std::move(labels)});
    while (!stack.empty()) {
        job j = std::move(stack.back());
        stack.pop_back();
        if (j.labels.size() == 1) {
            t.leaf_label[j.node] = j.labels[0];
            continue;
        }
        size_t sz = j.labels.size();
        size_t k = std::min<size_t>(sz, 2 + rng() % 3);
        std::shuffle(j.labels.begin(), j.labels.end(), rng);
        std::vector<size_t> cuts(sz - 1);
        std::iota(cuts.begin(), cuts.end(), size_t{1});
        std::shuffle(cuts.begin(), cuts.end(), rng);
        cuts.resize(k - 1);
        cuts.push_back(0);
        cuts.push_back(sz);
        std::sort(cuts.begin(), cuts.end());
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            node_id_t c = new_node(j.node);
            stack.push_back({c, {j.labels.begin() + cuts[i],
                                 j.labels.begin() + cuts[i + 1]}});
        }
    }

    // scramble node ids
    size_t m = t.node_count();
    std::vector<node_id_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    weighted_tree s;
    s.parent.resize(m);
    s.children.resize(m);
    s.weight.resize(m);
    s.leaf_label.resize(m);
    s.depth.resize(m);
    s.root = perm[t.root];
    for (node_id_t v = 0; v < m; ++v) {
        node_id_t w = perm[v];
        s.parent[w] = t.parent[v] == k_no_node ? k_no_node : perm[t.parent[v]];
        s.weight[w] = t.weight[v];
        s.leaf_label[w] = t.leaf_label[v];
        s.depth[w] = t.depth[v];
        for (node_id_t c : t.children[v]) {
            s.children[w].push_back(perm[c]);
        }
    }
    return s;
}

tree_pair gen_tree_pair(std::mt19937_64& rng, uint32_t n_leaves) {
    tree_pair tp;
    tp.t1 = gen_tree(rng, n_leaves);
    tp.t2 = gen_tree(rng, n_leaves);
    tp.hpd1 = decompose(tp.t1, orientation::heavy_leftmost);
    tp.hpd2 = decompose(tp.t2, orientation::heavy_rightmost);
    tp.grid = grid_index(build_leaf_permutation(tp.hpd1, tp.hpd2));
    return tp;
}

hia_query gen_query(std::mt19937_64& rng, const tree_pair& tp) {
    hia_query q;
    q.v1 = static_cast<node_id_t>(rng() % tp.t1.node_count());
    q.v2 = static_cast<node_id_t>(rng() % tp.t2.node_count());
    auto draw = [&](const weighted_tree& t, node_id_t v) -> std::optional<weight_t> {
        if (rng() % 2) {
            return std::nullopt;
        }
        weight_t hi = t.weight[v];
        weight_t lo = t.parent[v] == k_no_node ? 0 : t.weight[t.parent[v]] + 1;
        return lo + rng() % (hi - lo + 1);
    };
    q.w1_override = draw(tp.t1, q.v1);
    q.w2_override = draw(tp.t2, q.v2);
    return q;
}

std::string gen_text(std::mt19937_64& rng, size_t len, uint32_t sigma) {
    std::string out;
    out.reserve(len);
    while (out.size() < len) {
        if (out.empty() || rng() % 2 == 0) {
            out.push_back(static_cast<char>('a' + rng() % sigma));
        } else {
            size_t src = rng() % out.size();
            size_t l = 1 + rng() % std::min<size_t>(32, len - out.size());
            for (size_t t = 0; t < l; ++t) {
                out.push_back(out[src + t]); // may read freshly appended bytes
            }
        }
    }
    return out;
}

} // namespace hialcs::testing
