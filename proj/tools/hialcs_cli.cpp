#include <bit>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hialcs/container.hpp"
#include "hialcs/lcs.hpp"
#include "hialcs/testing.hpp"

using namespace hialcs;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int k_exit_ok = 0;
constexpr int k_exit_usage = 1;
constexpr int k_exit_data = 2;
constexpr int k_exit_verify = 3;

uint32_t ceil_log2(uint32_t n) {
    return n <= 1 ? 0 : static_cast<uint32_t>(std::bit_width(n - 1));
}

const char* engine_name(engine_choice e) {
    switch (e) {
    case engine_choice::baseline:
        return "baseline";
    case engine_choice::skyline:
        return "skyline";
    case engine_choice::sampled:
        return "sampled";
    }
    return "unknown";
}

engine_choice engine_from_name(const std::string& name) {
    if (name == "baseline") {
        return engine_choice::baseline;
    }
    if (name == "skyline") {
        return engine_choice::skyline;
    }
    return engine_choice::sampled;
}

bool engine_materialized(const lz_text_index& idx, engine_choice e) {
    switch (e) {
    case engine_choice::baseline:
        return idx.baseline() != nullptr;
    case engine_choice::skyline:
        return idx.skyline() != nullptr;
    case engine_choice::sampled:
        return idx.sampled() != nullptr;
    }
    return false;
}

struct build_opts {
    std::string text_path;
    std::string out_path;
    std::vector<std::string> engines;
    uint32_t sample_rate = 0;
};

int run_build(const build_opts& o) {
    std::ifstream in(o.text_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open " << o.text_path << "\n";
        return k_exit_data;
    }
    std::string text((std::istreambuf_iterator<char>(in)), {});
    if (text.empty()) {
        std::cerr << "error: input text is empty\n";
        return k_exit_data;
    }

    engine_set es;
    if (!o.engines.empty()) {
        es = {false, false, false};
        for (const auto& name : o.engines) {
            switch (engine_from_name(name)) {
            case engine_choice::baseline:
                es.baseline = true;
                break;
            case engine_choice::skyline:
                es.skyline = true;
                break;
            case engine_choice::sampled:
                es.sampled = true;
                break;
            }
        }
    }

    try {
        uint64_t n_bytes = text.size();
        lz_text_index idx(std::move(text), es, o.sample_rate);
        save_index(idx, o.out_path);

        uint64_t n = idx.parse().phrase_count();
        std::printf("text_bytes=%llu\n", (unsigned long long)n_bytes);
        std::printf("phrases=%llu\n", (unsigned long long)n);
        std::printf("phrase_ratio=%.6f\n", double(n) / double(n_bytes));
        std::printf("rev_trie_nodes=%zu\n", idx.tries().rev.tree.node_count());
        std::printf("suf_trie_nodes=%zu\n", idx.tries().suf.tree.node_count());
        if (idx.skyline()) {
            std::printf("skyline_total_length=%llu\n",
                        (unsigned long long)total_list_length(
                            idx.skyline()->table()));
        }
        if (idx.sampled()) {
            std::printf("sample_rate=%u\n", idx.sample_rate());
            std::printf("sampled_bytes=%zu\n", idx.sampled()->stored_bytes());
        }
        std::printf("container_bytes=%llu\n",
                    (unsigned long long)std::filesystem::file_size(o.out_path));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return k_exit_data;
    }
    return k_exit_ok;
}

struct query_opts {
    std::string index_path;
    std::string pattern;
    std::string pattern_file;
    std::string engine;
    bool json = false;
    bool verbose_splits = false;
};

int run_query(const query_opts& o) {
    if (o.pattern.empty() == o.pattern_file.empty()) {
        std::cerr << "error: give exactly one of -p or --pattern-file\n";
        return k_exit_usage;
    }

    std::unique_ptr<lz_text_index> idx;
    try {
        idx = load_index(o.index_path);
    } catch (const container_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return k_exit_data;
    }

    std::vector<std::string> patterns;
    if (!o.pattern.empty()) {
        patterns.push_back(o.pattern);
    } else {
        std::ifstream pf(o.pattern_file);
        if (!pf) {
            std::cerr << "error: cannot open " << o.pattern_file << "\n";
            return k_exit_data;
        }
        std::string line;
        while (std::getline(pf, line)) {
            if (!line.empty()) {
                patterns.push_back(line);
            }
        }
        if (patterns.empty()) {
            std::cerr << "error: pattern file holds no patterns\n";
            return k_exit_usage;
        }
    }

    engine_choice eng;
    if (!o.engine.empty()) {
        eng = engine_from_name(o.engine);
        if (!engine_materialized(*idx, eng)) {
            std::cerr << "error: engine " << o.engine
                      << " is not materialized in this container\n";
            return k_exit_data;
        }
    } else if (idx->baseline()) {
        eng = engine_choice::baseline;
    } else if (idx->skyline()) {
        eng = engine_choice::skyline;
    } else if (idx->sampled()) {
        eng = engine_choice::sampled;
    } else {
        std::cerr << "error: container holds no query engine\n";
        return k_exit_data;
    }

    for (const auto& pat : patterns) {
        probe_counters c;
        auto t0 = std::chrono::steady_clock::now();
        lcs_result res;
        std::vector<uint64_t> splits;
        try {
            res = lcs(*idx, pat, eng, &c);
            if (o.verbose_splits) {
                splits = lcs_all_splits(*idx, pat, eng);
            }
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return k_exit_data;
        }
        auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();

        auto opt_int = [](const auto& v) -> int64_t {
            return v ? static_cast<int64_t>(*v) : -1;
        };
        if (o.json) {
            ordered_json j;
            j["length"] = res.length;
            j["p_start"] = opt_int(res.p_start);
            j["s_start"] = opt_int(res.s_start);
            j["split_i"] = res.split_i;
            j["boundary_k"] = opt_int(res.boundary_k);
            j["engine"] = engine_name(eng);
            j["emptiness_calls"] = c.emptiness_calls;
            j["path_pair_visits"] = c.path_pair_visits;
            j["reported_points"] = c.reported_points;
            j["micros"] = micros;
            if (o.verbose_splits) {
                j["splits"] = splits;
            }
            std::cout << j.dump() << "\n";
        } else {
            std::printf("length=%llu p_start=%lld s_start=%lld split_i=%u "
                        "boundary_k=%lld engine=%s emptiness_calls=%llu "
                        "path_pair_visits=%llu reported_points=%llu "
                        "micros=%lld\n",
                        (unsigned long long)res.length,
                        (long long)opt_int(res.p_start),
                        (long long)opt_int(res.s_start), res.split_i,
                        (long long)opt_int(res.boundary_k), engine_name(eng),
                        (unsigned long long)c.emptiness_calls,
                        (unsigned long long)c.path_pair_visits,
                        (unsigned long long)c.reported_points,
                        (long long)micros);
            if (o.verbose_splits) {
                std::printf("splits=");
                for (uint64_t v : splits) {
                    std::printf(" %llu", (unsigned long long)v);
                }
                std::printf("\n");
            }
        }
    }
    return k_exit_ok;
}

struct verify_opts {
    uint64_t seed = 20260822;
    std::vector<uint32_t> sizes = {2, 4, 8, 16, 32, 64};
    uint32_t trials = 200;
};

int run_verify(const verify_opts& o) {
    uint64_t seed = o.seed;
    if (const char* env = std::getenv("HIALCS_SEED")) {
        try {
            seed = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "error: HIALCS_SEED is not an integer\n";
            return k_exit_usage;
        }
    }
    std::printf("seed=%llu\n", (unsigned long long)seed);
    std::mt19937_64 rng(seed);

    const uint32_t pairs_per_size = 10;
    for (uint32_t n : o.sizes) {
        if (n == 0) {
            std::cerr << "error: tree size must be positive\n";
            return k_exit_usage;
        }
        uint32_t lg1 = ceil_log2(n) + 1;
        std::vector<uint32_t> rates = {1, std::max(1u, ceil_log2(n))};
        for (uint32_t p = 0; p < pairs_per_size; ++p) {
            auto tp = testing::gen_tree_pair(rng, n);
            naive_hia_oracle naive(tp.t1, tp.t2);
            hia_baseline base(tp.hpd1, tp.hpd2, tp.grid);
            hia_skyline sky(tp.hpd1, tp.hpd2, tp.grid);
            std::vector<std::unique_ptr<hia_sampled>> samp;
            for (uint32_t rate : rates) {
                samp.push_back(std::make_unique<hia_sampled>(
                    tp.hpd1, tp.hpd2, tp.grid, rate));
            }

            uint64_t sky_len = total_list_length(sky.table());
            uint64_t sky_bound = uint64_t{n} * lg1 * lg1;
            if (sky_len > sky_bound) {
                std::printf("FAIL skyline size bound: n=%u pair=%u "
                            "total=%llu bound=%llu\n",
                            n, p, (unsigned long long)sky_len,
                            (unsigned long long)sky_bound);
                return k_exit_verify;
            }

            for (uint32_t q = 0; q < o.trials; ++q) {
                auto query = testing::gen_query(rng, tp);
                auto want = naive.query(query);
                probe_counters cb;
                auto got_b = base.query(query, &cb);
                probe_counters cs;
                auto got_s = sky.query(query, &cs);
                uint64_t w = want ? want->combined : UINT64_MAX;
                uint64_t gb = got_b ? got_b->combined : UINT64_MAX;
                uint64_t gs = got_s ? got_s->combined : UINT64_MAX;
                uint64_t depth_budget = uint64_t{tp.hpd1.tree.depth[query.v1]} +
                                        tp.hpd2.tree.depth[query.v2] + 1;
                bool ok = gb == w && gs == w &&
                          cb.emptiness_calls <= depth_budget &&
                          cs.path_pair_visits <= 2 * uint64_t{lg1};
                std::vector<uint64_t> gsamp;
                for (size_t i = 0; i < samp.size() && ok; ++i) {
                    probe_counters cp;
                    auto got_p = samp[i]->query(query, &cp);
                    gsamp.push_back(got_p ? got_p->combined : UINT64_MAX);
                    ok = gsamp.back() == w &&
                         cp.path_pair_visits <= 2 * uint64_t{lg1};
                }
                if (!ok) {
                    std::printf("FAIL hia equivalence: seed=%llu n=%u pair=%u "
                                "query=%u v1=%u v2=%u o1=%lld o2=%lld "
                                "naive=%llu baseline=%llu skyline=%llu\n",
                                (unsigned long long)seed, n, p, q, query.v1,
                                query.v2,
                                query.w1_override
                                    ? (long long)*query.w1_override
                                    : -1,
                                query.w2_override
                                    ? (long long)*query.w2_override
                                    : -1,
                                (unsigned long long)w, (unsigned long long)gb,
                                (unsigned long long)gs);
                    for (size_t i = 0; i < gsamp.size(); ++i) {
                        std::printf("  sampled[B=%u]=%llu\n", rates[i],
                                    (unsigned long long)gsamp[i]);
                    }
                    return k_exit_verify;
                }
            }
        }
        std::printf("hia n=%u ok (%u pairs, %u queries each)\n", n,
                    pairs_per_size, o.trials);
    }

    uint32_t lcs_instances = std::max(3u, o.trials / 20);
    for (uint32_t sigma : {2u, 4u, 26u}) {
        for (uint32_t inst = 0; inst < lcs_instances; ++inst) {
            std::string s = testing::gen_text(rng, 20 + rng() % 1980, sigma);
            lz_text_index idx(s);
            for (int q = 0; q < 5; ++q) {
                size_t m = 1 + rng() % 100;
                std::string pat;
                if (rng() % 2 == 0) {
                    size_t start = rng() % s.size();
                    pat = s.substr(start, std::min(m, s.size() - start));
                }
                while (pat.size() < m) {
                    pat.push_back(
                        static_cast<char>('a' + rng() % (sigma + 1)));
                }
                uint64_t want = naive_lcs(s, pat).length;
                for (engine_choice eng :
                     {engine_choice::baseline, engine_choice::skyline,
                      engine_choice::sampled}) {
                    uint64_t got = 0;
                    try {
                        got = lcs(idx, pat, eng).length;
                    } catch (const std::logic_error& e) {
                        std::printf("FAIL lcs witness: seed=%llu sigma=%u "
                                    "inst=%u engine=%s pattern=%s: %s\n",
                                    (unsigned long long)seed, sigma, inst,
                                    engine_name(eng), pat.c_str(), e.what());
                        return k_exit_verify;
                    }
                    if (got != want) {
                        std::printf("FAIL lcs equivalence: seed=%llu sigma=%u "
                                    "inst=%u engine=%s N=%zu pattern=%s "
                                    "dp=%llu got=%llu\n",
                                    (unsigned long long)seed, sigma, inst,
                                    engine_name(eng), s.size(), pat.c_str(),
                                    (unsigned long long)want,
                                    (unsigned long long)got);
                        return k_exit_verify;
                    }
                }
            }
        }
        std::printf("lcs sigma=%u ok (%u instances)\n", sigma, lcs_instances);
    }

    std::printf("verify passed\n");
    return k_exit_ok;
}

int run_stats(const std::string& index_path) {
    std::unique_ptr<lz_text_index> idx;
    try {
        idx = load_index(index_path);
    } catch (const container_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return k_exit_data;
    }

    uint64_t big_n = idx->text().size();
    uint32_t n = static_cast<uint32_t>(idx->parse().phrase_count());
    uint32_t lg1 = ceil_log2(n) + 1;
    std::printf("text_bytes=%llu\n", (unsigned long long)big_n);
    std::printf("phrases=%u\n", n);
    std::printf("phrase_ratio=%.6f\n", double(n) / double(big_n));
    std::printf("rev_trie_nodes=%zu\n", idx->tries().rev.tree.node_count());
    std::printf("suf_trie_nodes=%zu\n", idx->tries().suf.tree.node_count());
    std::printf("rev_paths=%zu\n", idx->hpd_rev().path_count());
    std::printf("suf_paths=%zu\n", idx->hpd_suf().path_count());
    std::printf("grid_points=%u\n", idx->grid().size());
    std::printf("engines=%s%s%s\n", idx->baseline() ? " baseline" : "",
                idx->skyline() ? " skyline" : "",
                idx->sampled() ? " sampled" : "");
    if (idx->skyline()) {
        uint64_t len = total_list_length(idx->skyline()->table());
        uint64_t bound = uint64_t{n} * lg1 * lg1;
        std::printf("skyline_total_length=%llu\n", (unsigned long long)len);
        std::printf("skyline_length_bound=%llu\n", (unsigned long long)bound);
        std::printf("skyline_bound_ratio=%.6f\n",
                    double(len) / double(bound));
    }
    if (idx->sampled()) {
        size_t bytes = idx->sampled()->stored_bytes();
        std::printf("sample_rate=%u\n", idx->sample_rate());
        std::printf("sampled_bytes=%zu\n", bytes);
        uint64_t words = uint64_t{n} * std::max(1u, ceil_log2(static_cast<uint32_t>(
                                                    std::min<uint64_t>(
                                                        big_n, UINT32_MAX))));
        std::printf("n_log_n_words=%llu\n", (unsigned long long)words);
        std::printf("sampled_words_per_n_log_n=%.6f\n",
                    double(bytes / 8) / double(words));
    }
    std::printf("container_bytes=%llu\n",
                (unsigned long long)std::filesystem::file_size(index_path));
    return k_exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"LZ77-compressed text index answering "
                 "longest-common-substring queries"};
    app.require_subcommand(1);

    build_opts bo;
    auto* build = app.add_subcommand("build", "Build an index container");
    build->add_option("text", bo.text_path, "Input text file")->required();
    build->add_option("-o,--output", bo.out_path, "Output container path")
        ->required();
    build
        ->add_option("--engine", bo.engines,
                     "Engine to materialize (repeatable; default all)")
        ->check(CLI::IsMember({"baseline", "skyline", "sampled"}));
    build->add_option("--sample-rate", bo.sample_rate,
                      "Sampled-engine block size (default: log of the "
                      "phrase count)");

    query_opts qo;
    auto* query = app.add_subcommand("query", "Query a container");
    query->add_option("index", qo.index_path, "Index container")->required();
    query->add_option("-p,--pattern", qo.pattern, "Pattern string");
    query->add_option("--pattern-file", qo.pattern_file,
                      "File with one pattern per line");
    query->add_option("--engine", qo.engine, "Engine to query")
        ->check(CLI::IsMember({"baseline", "skyline", "sampled"}));
    query->add_flag("--json", qo.json, "Emit one JSON object per pattern");
    query->add_flag("--verbose-splits", qo.verbose_splits,
                    "Also emit the per-split table");

    verify_opts vo;
    auto* verify =
        app.add_subcommand("verify", "Run the randomized oracle suites");
    verify->add_option("--seed", vo.seed,
                       "RNG seed (HIALCS_SEED overrides)");
    verify->add_option("--sizes", vo.sizes, "Tree sizes for the HIA suite")
        ->delimiter(',');
    verify->add_option("--trials", vo.trials, "Queries per tree pair");

    std::string stats_path;
    auto* stats = app.add_subcommand("stats", "Dump container statistics");
    stats->add_option("index", stats_path, "Index container")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? k_exit_ok : k_exit_usage;
    }

    if (build->parsed()) {
        return run_build(bo);
    }
    if (query->parsed()) {
        return run_query(qo);
    }
    if (verify->parsed()) {
        return run_verify(vo);
    }
    if (stats->parsed()) {
        return run_stats(stats_path);
    }
    return k_exit_usage;
}
