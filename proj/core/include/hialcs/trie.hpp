#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hialcs/grid.hpp"
#include "hialcs/lz.hpp"
#include "hialcs/tree.hpp"

namespace hialcs {

// Compacted trie over one family of phrase-boundary keys. Each key ends in
// a per-leaf terminator that sorts before every byte (ordered by boundary
// index among themselves) and counts one symbol toward the leaf's weight;
// internal weights are plain path-label byte counts. edge_pos/edge_len
// slice the backing text; the root's slice is nonempty only when all keys
// share their first byte (the unary root is compacted away).
struct boundary_trie {
    weighted_tree tree;
    std::vector<uint32_t> edge_pos;
    std::vector<uint32_t> edge_len;
};

struct trie_pair {
    boundary_trie rev;    // reversed phrases, slices into `reversed`
    boundary_trie suf;    // suffixes at phrase ends, slices into the text
    std::string reversed; // the text backwards, backing storage for rev
    leaf_permutation pi;  // rev leaf ranks -> suf leaf ranks, matched by
                          // boundary index under the HIA orientations
};

// Throws std::invalid_argument when the parse is invalid or does not
// describe s.
trie_pair build_tries(std::string_view s, const lz77_parse& p);

// Longest prefix of pat present as a key prefix, and the node at or
// immediately below the point where matching stops.
struct descent_result {
    node_id_t node = k_no_node;
    uint64_t matched = 0;
};
descent_result descend(const boundary_trie& bt, std::string_view backing,
                       std::string_view pat);

// Byte content of every key, indexed by leaf label (terminators dropped).
std::vector<std::string> extracted_keys(const boundary_trie& bt,
                                        std::string_view backing);

} // namespace hialcs
