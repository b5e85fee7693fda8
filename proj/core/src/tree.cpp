#include "hialcs/tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace hialcs {

size_t weighted_tree::leaf_count() const {
    size_t n = 0;
    for (node_id_t v = 0; v < node_count(); ++v) {
        if (is_leaf(v)) {
            ++n;
        }
    }
    return n;
}

std::vector<std::string> validate_tree(const weighted_tree& t) {
    std::vector<std::string> report;
    size_t m = t.node_count();
    if (m == 0) {
        report.push_back("tree has no nodes");
        return report;
    }
    if (t.children.size() != m || t.weight.size() != m ||
        t.leaf_label.size() != m || t.depth.size() != m) {
        report.push_back("per-node array sizes disagree with node count");
        return report;
    }
    if (t.root >= m) {
        report.push_back("root id out of range");
        return report;
    }
    if (t.parent[t.root] != k_no_node) {
        report.push_back("root has a parent");
    }
    for (node_id_t v = 0; v < m; ++v) {
        if (v != t.root && t.parent[v] == k_no_node) {
            report.push_back("non-root node " + std::to_string(v) + " has no parent");
        }
        for (node_id_t c : t.children[v]) {
            if (c >= m || t.parent[c] != v) {
                report.push_back("children/parent mismatch at node " + std::to_string(v));
            }
        }
        if (v != t.root && t.parent[v] < m) {
            const auto& sibs = t.children[t.parent[v]];
            if (std::find(sibs.begin(), sibs.end(), v) == sibs.end()) {
                report.push_back("node " + std::to_string(v) +
                                 " missing from its parent's child list");
            }
        }
    }
    if (!report.empty()) {
        return report;
    }

    // reachability and depth via BFS from the root
    std::vector<char> seen(m, 0);
    std::vector<node_id_t> queue{t.root};
    seen[t.root] = 1;
    for (size_t i = 0; i < queue.size(); ++i) {
        node_id_t v = queue[i];
        for (node_id_t c : t.children[v]) {
            if (seen[c]) {
                report.push_back("node " + std::to_string(c) + " reached twice");
                return report;
            }
            seen[c] = 1;
            queue.push_back(c);
        }
    }
    if (queue.size() != m) {
        report.push_back("tree is not connected");
        return report;
    }

    if (t.depth[t.root] != 0) {
        report.push_back("root depth is not 0");
    }
    size_t n_leaves = 0;
    for (node_id_t v = 0; v < m; ++v) {
        if (t.is_leaf(v)) {
            ++n_leaves;
        } else if (t.children[v].size() < 2) {
            report.push_back("internal node " + std::to_string(v) + " has 1 child");
        }
        if (v != t.root) {
            node_id_t p = t.parent[v];
            if (t.weight[v] <= t.weight[p]) {
                report.push_back("weight monotonicity violated on edge " +
                                 std::to_string(p) + " -> " + std::to_string(v));
            }
            if (t.depth[v] != t.depth[p] + 1) {
                report.push_back("depth mismatch at node " + std::to_string(v));
            }
        }
    }
    std::vector<char> label_seen(n_leaves, 0);
    for (node_id_t v = 0; v < m; ++v) {
        if (t.is_leaf(v)) {
            leaf_label_t lab = t.leaf_label[v];
            if (lab >= n_leaves || label_seen[lab]) {
                report.push_back("leaf labels are not a bijection onto [0, n)");
                break;
            }
            label_seen[lab] = 1;
        } else if (t.leaf_label[v] != k_no_label) {
            report.push_back("internal node " + std::to_string(v) + " carries a leaf label");
        }
    }
    return report;
}

heavy_path_decomposition decompose(const weighted_tree& t, orientation o) {
    auto violations = validate_tree(t);
    if (!violations.empty()) {
        throw std::invalid_argument("decompose: invalid tree: " + violations.front());
    }

    heavy_path_decomposition hpd;
    hpd.tree = t;
    hpd.orient = o;
    weighted_tree& tr = hpd.tree;
    size_t m = tr.node_count();

    // leaf counts in post order (children before parents via reverse preorder)
    std::vector<uint32_t> n_descendant_leaves(m, 0);
    std::vector<node_id_t> preorder;
    preorder.reserve(m);
    {
        std::vector<node_id_t> stack{tr.root};
        while (!stack.empty()) {
            node_id_t v = stack.back();
            stack.pop_back();
            preorder.push_back(v);
            for (node_id_t c : tr.children[v]) {
                stack.push_back(c);
            }
        }
    }
    for (auto it = preorder.rbegin(); it != preorder.rend(); ++it) {
        node_id_t v = *it;
        if (tr.is_leaf(v)) {
            n_descendant_leaves[v] = 1;
        }
        if (v != tr.root) {
            n_descendant_leaves[tr.parent[v]] += n_descendant_leaves[v];
        }
    }

    hpd.heavy_child.assign(m, k_no_node);
    for (node_id_t v = 0; v < m; ++v) {
        if (tr.is_leaf(v)) {
            continue;
        }
        node_id_t heavy = tr.children[v][0];
        for (node_id_t c : tr.children[v]) {
            if (n_descendant_leaves[c] > n_descendant_leaves[heavy] ||
                (n_descendant_leaves[c] == n_descendant_leaves[heavy] && c < heavy)) {
                heavy = c;
            }
        }
        hpd.heavy_child[v] = heavy;
        auto& kids = tr.children[v];
        kids.erase(std::find(kids.begin(), kids.end(), heavy));
        if (o == orientation::heavy_leftmost) {
            kids.insert(kids.begin(), heavy);
        } else {
            kids.push_back(heavy);
        }
    }

    hpd.path_of.assign(m, k_no_path);
    hpd.path_pos.assign(m, 0);
    hpd.leaf_rank.assign(m, UINT32_MAX);
    hpd.leaf_range.assign(m, {UINT32_MAX, 0});
    size_t n = tr.leaf_count();
    hpd.node_at_rank.assign(n, k_no_node);
    hpd.node_of_label.assign(n, k_no_node);
    hpd.ancestor_table.assign(n, {});

    // single preorder DFS over the reordered tree: assigns paths, leaf ranks,
    // and snapshots the active path stack at each leaf
    struct frame {
        node_id_t node;
        size_t next_child;
        bool pushed_path;
        node_id_t prev_path_node; // valid when !pushed_path
    };
    std::vector<frame> dfs;
    std::vector<std::pair<path_id_t, node_id_t>> active; // (path, deepest node so far)
    uint32_t next_rank = 0;

    auto enter = [&](node_id_t v) {
        node_id_t par = tr.parent[v];
        bool extends = par != k_no_node && hpd.heavy_child[par] == v;
        frame f{v, 0, false, k_no_node};
        if (extends) {
            path_id_t p = hpd.path_of[par];
            hpd.path_of[v] = p;
            hpd.path_pos[v] = static_cast<uint32_t>(hpd.path_nodes[p].size());
            hpd.path_nodes[p].push_back(v);
            f.prev_path_node = active.back().second;
            active.back().second = v;
        } else {
            path_id_t p = static_cast<path_id_t>(hpd.path_nodes.size());
            hpd.path_of[v] = p;
            hpd.path_pos[v] = 0;
            hpd.path_nodes.push_back({v});
            hpd.path_head.push_back(v);
            hpd.path_tail.push_back(v);
            if (par == k_no_node) {
                hpd.path_parent.push_back(k_no_path);
                hpd.path_depth.push_back(0);
            } else {
                path_id_t pp = hpd.path_of[par];
                hpd.path_parent.push_back(pp);
                hpd.path_depth.push_back(hpd.path_depth[pp] + 1);
            }
            active.push_back({p, v});
            f.pushed_path = true;
        }
        if (tr.is_leaf(v)) {
            hpd.leaf_rank[v] = next_rank;
            hpd.node_at_rank[next_rank] = v;
            hpd.node_of_label[tr.leaf_label[v]] = v;
            hpd.ancestor_table[tr.leaf_label[v]] = active;
            ++next_rank;
        }
        dfs.push_back(f);
    };

    enter(tr.root);
    while (!dfs.empty()) {
        frame& f = dfs.back();
        if (f.next_child < tr.children[f.node].size()) {
            node_id_t c = tr.children[f.node][f.next_child++];
            enter(c);
        } else {
            if (f.pushed_path) {
                active.pop_back();
            } else {
                active.back().second = f.prev_path_node;
            }
            dfs.pop_back();
        }
    }

    for (path_id_t p = 0; p < hpd.path_count(); ++p) {
        hpd.path_tail[p] = hpd.path_nodes[p].back();
    }

    // leaf ranges bottom up
    for (auto it = preorder.rbegin(); it != preorder.rend(); ++it) {
        node_id_t v = *it;
        if (tr.is_leaf(v)) {
            hpd.leaf_range[v] = {hpd.leaf_rank[v], hpd.leaf_rank[v]};
        }
        if (v != tr.root) {
            auto& pr = hpd.leaf_range[tr.parent[v]];
            pr.first = std::min(pr.first, hpd.leaf_range[v].first);
            pr.second = std::max(pr.second, hpd.leaf_range[v].second);
        }
    }
    return hpd;
}

std::pair<uint32_t, uint32_t> leaf_interval(const heavy_path_decomposition& hpd,
                                            node_id_t v) {
    if (v >= hpd.tree.node_count()) {
        throw std::out_of_range("leaf_interval: unknown node id");
    }
    return hpd.leaf_range[v];
}

std::optional<node_id_t> deepest_ancestor_in_path(const heavy_path_decomposition& hpd,
                                                  node_id_t v, path_id_t p) {
    if (v >= hpd.tree.node_count() || p >= hpd.path_count()) {
        throw std::out_of_range("deepest_ancestor_in_path: bad node or path id");
    }
    while (true) {
        path_id_t pv = hpd.path_of[v];
        if (pv == p) {
            return v;
        }
        node_id_t above = hpd.tree.parent[hpd.path_head[pv]];
        if (above == k_no_node) {
            return std::nullopt;
        }
        v = above;
    }
}

} // namespace hialcs
