#include "hialcs/container.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

namespace hialcs {

namespace {

constexpr char k_magic[8] = {'H', 'I', 'A', 'L', 'C', 'S', '1', '\0'};
constexpr uint32_t k_version = 1;

constexpr uint32_t k_tag_meta = 1;
constexpr uint32_t k_tag_text = 2;
constexpr uint32_t k_tag_parse = 3;
constexpr uint32_t k_tag_tree_rev = 4;
constexpr uint32_t k_tag_tree_suf = 5;
constexpr uint32_t k_tag_pi = 6;

constexpr uint64_t k_no_src = UINT64_MAX;
constexpr uint16_t k_no_literal = UINT16_MAX;

void put_u8(std::string& out, uint8_t v) {
    out.push_back(static_cast<char>(v));
}

void put_u16(std::string& out, uint16_t v) {
    for (int i = 0; i < 2; ++i) {
        put_u8(out, static_cast<uint8_t>(v >> (8 * i)));
    }
}

void put_u32(std::string& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        put_u8(out, static_cast<uint8_t>(v >> (8 * i)));
    }
}

void put_u64(std::string& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        put_u8(out, static_cast<uint8_t>(v >> (8 * i)));
    }
}

struct reader {
    std::string_view buf;
    size_t pos = 0;

    void need(size_t k) const {
        if (pos + k > buf.size()) {
            throw container_error("truncated container");
        }
    }
    uint8_t u8() {
        need(1);
        return static_cast<uint8_t>(buf[pos++]);
    }
    uint16_t u16() {
        uint16_t v = 0;
        for (int i = 0; i < 2; ++i) {
            v |= static_cast<uint16_t>(u8()) << (8 * i);
        }
        return v;
    }
    uint32_t u32() {
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            v |= static_cast<uint32_t>(u8()) << (8 * i);
        }
        return v;
    }
    uint64_t u64() {
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) {
            v |= static_cast<uint64_t>(u8()) << (8 * i);
        }
        return v;
    }
    std::string_view bytes(size_t k) {
        need(k);
        std::string_view v = buf.substr(pos, k);
        pos += k;
        return v;
    }
    bool done() const { return pos == buf.size(); }
};

std::string encode_meta(const lz_text_index& idx) {
    std::string out;
    put_u64(out, idx.text().size());
    put_u32(out, static_cast<uint32_t>(idx.parse().phrase_count()));
    put_u32(out, 256);
    uint32_t bits = 0;
    if (idx.engines().baseline) {
        bits |= 1;
    }
    if (idx.engines().skyline) {
        bits |= 2;
    }
    if (idx.engines().sampled) {
        bits |= 4;
    }
    put_u32(out, bits);
    put_u32(out, idx.sample_rate());
    return out;
}

std::string encode_parse(const lz77_parse& p) {
    std::string out;
    for (const auto& ph : p.phrases) {
        put_u64(out, ph.copy_len);
        put_u64(out, ph.copy_src ? *ph.copy_src : k_no_src);
        put_u16(out, ph.literal ? *ph.literal : k_no_literal);
    }
    return out;
}

std::string encode_trie(const boundary_trie& bt) {
    const weighted_tree& t = bt.tree;
    std::string out;
    put_u32(out, static_cast<uint32_t>(t.node_count()));
    put_u32(out, t.root);
    for (size_t v = 0; v < t.node_count(); ++v) {
        put_u32(out, t.parent[v]);
        put_u64(out, t.weight[v]);
        put_u32(out, t.leaf_label[v]);
        put_u32(out, bt.edge_pos[v]);
        put_u32(out, bt.edge_len[v]);
        put_u32(out, static_cast<uint32_t>(t.children[v].size()));
        for (node_id_t c : t.children[v]) {
            put_u32(out, c);
        }
    }
    return out;
}

std::string encode_pi(const leaf_permutation& pi) {
    std::string out;
    put_u32(out, static_cast<uint32_t>(pi.size()));
    for (uint32_t v : pi) {
        put_u32(out, v);
    }
    return out;
}

struct stored_trie {
    uint32_t root = k_no_node;
    std::vector<uint32_t> parent, leaf_label, edge_pos, edge_len;
    std::vector<uint64_t> weight;
    std::vector<std::vector<uint32_t>> children;
};

stored_trie decode_trie(std::string_view payload) {
    reader r{payload};
    stored_trie t;
    uint32_t count = r.u32();
    t.root = r.u32();
    if (count == 0 || t.root >= count) {
        throw container_error("corrupt trie section");
    }
    t.parent.resize(count);
    t.weight.resize(count);
    t.leaf_label.resize(count);
    t.edge_pos.resize(count);
    t.edge_len.resize(count);
    t.children.resize(count);
    for (uint32_t v = 0; v < count; ++v) {
        t.parent[v] = r.u32();
        t.weight[v] = r.u64();
        t.leaf_label[v] = r.u32();
        t.edge_pos[v] = r.u32();
        t.edge_len[v] = r.u32();
        uint32_t deg = r.u32();
        if (deg > count) {
            throw container_error("corrupt trie section");
        }
        t.children[v].resize(deg);
        for (uint32_t i = 0; i < deg; ++i) {
            t.children[v][i] = r.u32();
            if (t.children[v][i] >= count) {
                throw container_error("corrupt trie section");
            }
        }
    }
    if (!r.done()) {
        throw container_error("corrupt trie section");
    }
    return t;
}

bool trie_matches(const stored_trie& a, const boundary_trie& b) {
    const weighted_tree& t = b.tree;
    return a.root == t.root && a.parent.size() == t.node_count() &&
           std::equal(a.parent.begin(), a.parent.end(), t.parent.begin()) &&
           std::equal(a.weight.begin(), a.weight.end(), t.weight.begin()) &&
           std::equal(a.leaf_label.begin(), a.leaf_label.end(),
                      t.leaf_label.begin()) &&
           std::equal(a.edge_pos.begin(), a.edge_pos.end(),
                      b.edge_pos.begin()) &&
           std::equal(a.edge_len.begin(), a.edge_len.end(),
                      b.edge_len.begin()) &&
           std::equal(a.children.begin(), a.children.end(),
                      t.children.begin());
}

} // namespace

void save_index(const lz_text_index& idx, std::ostream& out) {
    std::string blob;
    blob.append(k_magic, sizeof(k_magic));
    put_u32(blob, k_version);
    auto section = [&](uint32_t tag, const std::string& payload) {
        put_u32(blob, tag);
        put_u64(blob, payload.size());
        blob.append(payload);
    };
    section(k_tag_meta, encode_meta(idx));
    section(k_tag_text, idx.text());
    section(k_tag_parse, encode_parse(idx.parse()));
    section(k_tag_tree_rev, encode_trie(idx.tries().rev));
    section(k_tag_tree_suf, encode_trie(idx.tries().suf));
    section(k_tag_pi, encode_pi(idx.tries().pi));
    out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
    if (!out) {
        throw container_error("could not write container");
    }
}

void save_index(const lz_text_index& idx, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw container_error("cannot open " + path + " for writing");
    }
    save_index(idx, out);
}

std::unique_ptr<lz_text_index> load_index(std::istream& in) {
    std::string buf(std::istreambuf_iterator<char>(in), {});
    if (buf.size() < sizeof(k_magic) ||
        std::memcmp(buf.data(), k_magic, sizeof(k_magic)) != 0) {
        throw container_error("not an index container (bad magic)");
    }
    reader r{buf, sizeof(k_magic)};
    uint32_t version = r.u32();
    if (version != k_version) {
        throw container_error("unsupported container version " +
                              std::to_string(version));
    }

    std::map<uint32_t, std::string_view> sections;
    while (!r.done()) {
        uint32_t tag = r.u32();
        uint64_t len = r.u64();
        std::string_view payload = r.bytes(len);
        if (!sections.emplace(tag, payload).second) {
            throw container_error("duplicate container section");
        }
    }
    for (uint32_t tag : {k_tag_meta, k_tag_text, k_tag_parse, k_tag_tree_rev,
                         k_tag_tree_suf, k_tag_pi}) {
        if (!sections.count(tag)) {
            throw container_error("missing container section");
        }
    }
    if (sections.size() != 6) {
        throw container_error("unknown container section");
    }

    reader meta{sections[k_tag_meta]};
    uint64_t text_len = meta.u64();
    uint32_t n_phrases = meta.u32();
    uint32_t alphabet = meta.u32();
    uint32_t engine_bits = meta.u32();
    uint32_t sample_rate = meta.u32();
    if (!meta.done() || alphabet != 256 || engine_bits > 7 ||
        sample_rate == 0 || n_phrases == 0) {
        throw container_error("corrupt meta section");
    }

    std::string_view text_sv = sections[k_tag_text];
    if (text_sv.size() != text_len) {
        throw container_error("text length mismatch");
    }

    reader pr{sections[k_tag_parse]};
    lz77_parse parsed;
    parsed.text_length = text_len;
    uint64_t next_start = 1;
    for (uint32_t k = 0; k < n_phrases; ++k) {
        lz_phrase ph;
        ph.start = next_start;
        ph.copy_len = pr.u64();
        uint64_t src = pr.u64();
        if (src != k_no_src) {
            ph.copy_src = src;
        }
        uint16_t lit = pr.u16();
        if (lit != k_no_literal) {
            if (lit > 255) {
                throw container_error("corrupt parse section");
            }
            ph.literal = static_cast<uint8_t>(lit);
        }
        if (ph.length() == 0) {
            throw container_error("corrupt parse section");
        }
        next_start = ph.end() + 1;
        parsed.phrases.push_back(ph);
    }
    if (!pr.done() || next_start != text_len + 1) {
        throw container_error("corrupt parse section");
    }

    stored_trie rev = decode_trie(sections[k_tag_tree_rev]);
    stored_trie suf = decode_trie(sections[k_tag_tree_suf]);

    reader pir{sections[k_tag_pi]};
    uint32_t pi_count = pir.u32();
    if (pi_count != n_phrases) {
        throw container_error("corrupt permutation section");
    }
    leaf_permutation pi(pi_count);
    for (uint32_t i = 0; i < pi_count; ++i) {
        pi[i] = pir.u32();
    }
    if (!pir.done()) {
        throw container_error("corrupt permutation section");
    }

    engine_set engines{(engine_bits & 1) != 0, (engine_bits & 2) != 0,
                       (engine_bits & 4) != 0};
    std::unique_ptr<lz_text_index> idx;
    try {
        idx = std::make_unique<lz_text_index>(std::string(text_sv),
                                              std::move(parsed), engines,
                                              sample_rate);
    } catch (const std::invalid_argument& e) {
        throw container_error(std::string("inconsistent container: ") +
                              e.what());
    }
    if (!trie_matches(rev, idx->tries().rev) ||
        !trie_matches(suf, idx->tries().suf) || pi != idx->tries().pi) {
        throw container_error("stored tables do not match the rebuilt index");
    }
    return idx;
}

std::unique_ptr<lz_text_index> load_index(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw container_error("cannot open " + path);
    }
    return load_index(in);
}

} // namespace hialcs
