#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "hialcs/grid.hpp"
#include "hialcs/hia.hpp"
#include "hialcs/tree.hpp"

namespace hialcs::testing {

// Random weighted tree with n_leaves leaves: every internal node has >= 2
// children, weights strictly increase along edges by 1..4, leaf labels are a
// random permutation of [0, n), node ids are randomly permuted so id order
// carries no structural information.
weighted_tree gen_tree(std::mt19937_64& rng, uint32_t n_leaves);

// Two random trees on a shared label set, decomposed with the orientations
// the sampled engine expects, plus the grid over their leaf correspondence.
struct tree_pair {
    weighted_tree t1, t2;
    heavy_path_decomposition hpd1, hpd2;
    grid_index grid;
};

tree_pair gen_tree_pair(std::mt19937_64& rng, uint32_t n_leaves);

// Random query over the pair; overrides drawn from the legal sandwich range
// with probability 1/2 each.
hia_query gen_query(std::mt19937_64& rng, const tree_pair& tp);

// Random text of the given length over sigma byte values starting at 'a',
// mixing fresh symbols with copies of earlier slices so parses get real
// repeat structure.
std::string gen_text(std::mt19937_64& rng, size_t len, uint32_t sigma);

} // namespace hialcs::testing
