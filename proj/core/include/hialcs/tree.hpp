#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hialcs {

using node_id_t = uint32_t;
using path_id_t = uint32_t;
using leaf_label_t = uint32_t;
using weight_t = uint64_t;

inline constexpr node_id_t k_no_node = UINT32_MAX;
inline constexpr path_id_t k_no_path = UINT32_MAX;
inline constexpr leaf_label_t k_no_label = UINT32_MAX;

// Rooted ordered tree with strictly increasing weights along root-to-leaf
// paths and bijectively labeled leaves.
struct weighted_tree {
    node_id_t root = k_no_node;
    std::vector<node_id_t> parent;                // k_no_node at the root
    std::vector<std::vector<node_id_t>> children; // ordered
    std::vector<weight_t> weight;
    std::vector<leaf_label_t> leaf_label;         // k_no_label at internal nodes
    std::vector<uint32_t> depth;

    size_t node_count() const { return parent.size(); }
    bool is_leaf(node_id_t v) const { return children[v].empty(); }
    size_t leaf_count() const;
};

// Empty report means the tree satisfies all structural invariants: single
// root, parent/children consistency, internal degree >= 2, per-edge weight
// monotonicity, consistent depths, leaf labels a bijection onto [0, n).
std::vector<std::string> validate_tree(const weighted_tree& t);

enum class orientation : uint8_t {
    heavy_leftmost,
    heavy_rightmost
};

// Heavy-path decomposition of a weighted tree. Children of the source tree
// are reordered so each internal node's heavy child (maximum leaf count,
// ties to the smaller node id) sits leftmost or rightmost; all leaf ranks
// refer to the reordered tree.
struct heavy_path_decomposition {
    weighted_tree tree; // reordered copy
    orientation orient = orientation::heavy_leftmost;

    std::vector<node_id_t> heavy_child;  // k_no_node at leaves
    std::vector<path_id_t> path_of;
    std::vector<uint32_t> path_pos;      // index of a node within its path
    std::vector<std::vector<node_id_t>> path_nodes; // increasing depth
    std::vector<node_id_t> path_head;
    std::vector<node_id_t> path_tail;    // always a leaf
    std::vector<path_id_t> path_parent;  // k_no_path at the root path
    std::vector<uint32_t> path_depth;    // root path = 0

    std::vector<uint32_t> leaf_rank;     // per node; UINT32_MAX at internals
    std::vector<node_id_t> node_at_rank;
    std::vector<node_id_t> node_of_label;
    std::vector<std::pair<uint32_t, uint32_t>> leaf_range; // per node, inclusive

    // ancestor_table[label] lists, root-first, one entry per heavy path met
    // on the root-to-leaf walk: (path, deepest node of that path on the walk).
    std::vector<std::vector<std::pair<path_id_t, node_id_t>>> ancestor_table;

    size_t path_count() const { return path_nodes.size(); }
};

// Throws std::invalid_argument if validate_tree reports violations.
heavy_path_decomposition decompose(const weighted_tree& t, orientation o);

// Inclusive rank interval of v's leaf descendants.
std::pair<uint32_t, uint32_t> leaf_interval(const heavy_path_decomposition& hpd,
                                            node_id_t v);

// Deepest node of path p that is an ancestor-or-self of v, or nullopt if
// path p does not occur on the root-to-v walk.
std::optional<node_id_t> deepest_ancestor_in_path(const heavy_path_decomposition& hpd,
                                                  node_id_t v, path_id_t p);

} // namespace hialcs
