#include "hialcs/trie.hpp"

#include <algorithm>
#include <stdexcept>

namespace hialcs {

namespace {

struct key_ref {
    uint32_t pos;
    uint32_t len;
    uint32_t label;
};

struct builder_node {
    int64_t parent;
    uint32_t edge_pos;
    uint32_t edge_len;
    uint64_t weight; // symbol depth, terminator included at leaves
    uint32_t label;
    std::vector<uint32_t> children;
};

// Left-to-right merge of sorted keys; lcps[i] = byte lcp of keys i-1 and i.
// The rightmost root-to-leaf path lives on a stack; a new key pops to its
// lcp depth, splitting the last popped edge when no node sits there.
boundary_trie build_patricia(const std::vector<key_ref>& keys,
                             const std::vector<uint32_t>& lcps) {
    std::vector<builder_node> nodes;
    nodes.push_back({-1, 0, 0, 0, k_no_label, {}});
    std::vector<uint32_t> stack = {0};
    for (size_t i = 0; i < keys.size(); ++i) {
        uint64_t l = i == 0 ? 0 : lcps[i];
        uint32_t popped = UINT32_MAX;
        while (nodes[stack.back()].weight > l) {
            popped = stack.back();
            stack.pop_back();
        }
        uint32_t u = stack.back();
        uint32_t attach;
        if (nodes[u].weight == l) {
            attach = u;
        } else {
            uint32_t c = popped;
            uint32_t cut = static_cast<uint32_t>(l - nodes[u].weight);
            uint32_t m = static_cast<uint32_t>(nodes.size());
            nodes.push_back(
                {u, nodes[c].edge_pos, cut, l, k_no_label, {c}});
            for (auto& ch : nodes[u].children) {
                if (ch == c) {
                    ch = m;
                    break;
                }
            }
            nodes[c].parent = m;
            nodes[c].edge_pos += cut;
            nodes[c].edge_len -= cut;
            stack.push_back(m);
            attach = m;
        }
        uint32_t leaf = static_cast<uint32_t>(nodes.size());
        nodes.push_back({attach, keys[i].pos + static_cast<uint32_t>(l),
                         keys[i].len - static_cast<uint32_t>(l),
                         uint64_t{keys[i].len} + 1, keys[i].label, {}});
        nodes[attach].children.push_back(leaf);
        stack.push_back(leaf);
    }

    uint32_t root = 0;
    if (nodes[0].children.size() == 1) {
        root = nodes[0].children[0];
        nodes[root].parent = -1;
    }

    boundary_trie out;
    size_t m = 0;
    std::vector<uint32_t> order, id(nodes.size(), UINT32_MAX);
    order.push_back(root);
    for (size_t q = 0; q < order.size(); ++q) {
        id[order[q]] = static_cast<uint32_t>(m++);
        for (uint32_t c : nodes[order[q]].children) {
            order.push_back(c);
        }
    }
    out.tree.root = 0;
    out.tree.parent.resize(m);
    out.tree.children.resize(m);
    out.tree.weight.resize(m);
    out.tree.leaf_label.resize(m);
    out.tree.depth.resize(m);
    out.edge_pos.resize(m);
    out.edge_len.resize(m);
    for (uint32_t b : order) {
        const builder_node& bn = nodes[b];
        uint32_t v = id[b];
        out.tree.parent[v] = b == root ? k_no_node : id[bn.parent];
        out.tree.weight[v] = bn.weight;
        out.tree.leaf_label[v] = bn.label;
        out.tree.depth[v] =
            b == root ? 0 : out.tree.depth[out.tree.parent[v]] + 1;
        out.edge_pos[v] = bn.edge_pos;
        out.edge_len[v] = bn.edge_len;
        out.tree.children[v].reserve(bn.children.size());
        for (uint32_t c : bn.children) {
            out.tree.children[v].push_back(id[c]);
        }
    }
    return out;
}

} // namespace

trie_pair build_tries(std::string_view s, const lz77_parse& p) {
    auto report = validate_parse(p);
    if (!report.empty()) {
        throw std::invalid_argument(report.front());
    }
    if (p.text_length != s.size() || decompress(p) != s) {
        throw std::invalid_argument("parse does not describe this text");
    }
    uint32_t n_text = static_cast<uint32_t>(s.size());
    uint32_t n = static_cast<uint32_t>(p.phrase_count());

    trie_pair out;
    out.reversed.assign(s.rbegin(), s.rend());

    // reversed phrases, ordered by a direct slice comparator
    std::vector<key_ref> rk(n);
    for (uint32_t k = 0; k < n; ++k) {
        const lz_phrase& ph = p.phrases[k];
        uint32_t len = static_cast<uint32_t>(ph.length());
        rk[k] = {n_text - static_cast<uint32_t>(ph.end()), len, k};
    }
    std::string_view rview = out.reversed;
    std::sort(rk.begin(), rk.end(), [&](const key_ref& a, const key_ref& b) {
        auto sa = rview.substr(a.pos, a.len);
        auto sb = rview.substr(b.pos, b.len);
        int c = sa.compare(sb);
        if (c != 0) {
            // a proper prefix sorts first: its terminator beats any byte
            return c < 0;
        }
        return a.label < b.label;
    });
    std::vector<uint32_t> rl(n, 0);
    for (uint32_t i = 1; i < n; ++i) {
        uint32_t lim = std::min(rk[i - 1].len, rk[i].len);
        uint32_t l = 0;
        while (l < lim &&
               rview[rk[i - 1].pos + l] == rview[rk[i].pos + l]) {
            ++l;
        }
        rl[i] = l;
    }
    out.rev = build_patricia(rk, rl);

    // boundary suffixes, ordered by suffix-array rank (empty suffix first),
    // with lcps folded from the lcp array in one sweep
    auto sa = suffix_array(s);
    auto lcp = lcp_array(s, sa);
    std::vector<uint32_t> rank(n_text);
    for (uint32_t r = 0; r < n_text; ++r) {
        rank[sa[r]] = r;
    }
    std::vector<key_ref> sk(n);
    for (uint32_t k = 0; k < n; ++k) {
        uint32_t start = static_cast<uint32_t>(p.phrases[k].end());
        sk[k] = {start, n_text - start, k};
    }
    std::sort(sk.begin(), sk.end(), [&](const key_ref& a, const key_ref& b) {
        if (a.len == 0 || b.len == 0) {
            return a.len == 0 && b.len != 0;
        }
        return rank[a.pos] < rank[b.pos];
    });
    std::vector<uint32_t> sl(n, 0);
    {
        size_t next = sk[0].len == 0 ? 1 : 0; // empty suffix has lcp 0 anyway
        if (next < n) {
            uint32_t prev_rank = rank[sk[next].pos];
            for (size_t i = next + 1; i < n; ++i) {
                uint32_t cur_rank = rank[sk[i].pos];
                uint32_t run = UINT32_MAX;
                for (uint32_t r = prev_rank + 1; r <= cur_rank; ++r) {
                    run = std::min(run, lcp[r]);
                }
                sl[i] = run;
                prev_rank = cur_rank;
            }
        }
    }
    out.suf = build_patricia(sk, sl);

    auto h_rev = decompose(out.rev.tree, orientation::heavy_leftmost);
    auto h_suf = decompose(out.suf.tree, orientation::heavy_rightmost);
    out.pi = build_leaf_permutation(h_rev, h_suf);
    return out;
}

descent_result descend(const boundary_trie& bt, std::string_view backing,
                       std::string_view pat) {
    const weighted_tree& t = bt.tree;
    node_id_t v = t.root;
    uint64_t matched = 0;
    // the root edge is nonempty only after unary-root compaction
    node_id_t entering = v;
    uint64_t run = 0;
    while (true) {
        uint32_t elen = bt.edge_len[entering];
        run = 0;
        while (run < elen && matched + run < pat.size() &&
               backing[bt.edge_pos[entering] + run] == pat[matched + run]) {
            ++run;
        }
        matched += run;
        if (run < elen) {
            return {entering, matched};
        }
        v = entering;
        if (t.is_leaf(v) || matched == pat.size()) {
            return {v, matched};
        }
        node_id_t next = k_no_node;
        for (node_id_t c : t.children[v]) {
            if (bt.edge_len[c] > 0 &&
                backing[bt.edge_pos[c]] == pat[matched]) {
                next = c;
                break;
            }
        }
        if (next == k_no_node) {
            return {v, matched};
        }
        entering = next;
    }
}

std::vector<std::string> extracted_keys(const boundary_trie& bt,
                                        std::string_view backing) {
    const weighted_tree& t = bt.tree;
    std::vector<std::string> out(t.leaf_count());
    std::vector<std::pair<node_id_t, std::string>> stack;
    stack.emplace_back(
        t.root, std::string(backing.substr(bt.edge_pos[t.root],
                                           bt.edge_len[t.root])));
    while (!stack.empty()) {
        auto [v, label] = std::move(stack.back());
        stack.pop_back();
        if (t.is_leaf(v)) {
            out[t.leaf_label[v]] = std::move(label);
            continue;
        }
        for (node_id_t c : t.children[v]) {
            stack.emplace_back(
                c, label + std::string(backing.substr(bt.edge_pos[c],
                                                      bt.edge_len[c])));
        }
    }
    return out;
}

} // namespace hialcs
