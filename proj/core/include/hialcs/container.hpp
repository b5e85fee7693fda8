#pragma once

#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>

#include "hialcs/index.hpp"

namespace hialcs {

// Malformed or inconsistent container data: bad magic, unsupported version,
// truncation, or stored tables that contradict the text and parse.
class container_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Binary container: 8-byte magic "HIALCS1\0", u32 format version, then a
// sequence of sections (u32 tag, u64 length, payload). All integers are
// little-endian and fixed-width. Sections hold the metadata, the text, the
// parse, both boundary tries, and the leaf permutation.
void save_index(const lz_text_index& idx, std::ostream& out);
void save_index(const lz_text_index& idx, const std::string& path);

// Rebuilds the index from the stored text and parse, then checks the stored
// trie tables and permutation against the rebuilt ones; any disagreement is
// reported as container corruption.
std::unique_ptr<lz_text_index> load_index(std::istream& in);
std::unique_ptr<lz_text_index> load_index(const std::string& path);

} // namespace hialcs
