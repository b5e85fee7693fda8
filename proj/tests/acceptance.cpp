#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "hialcs/container.hpp"
#include "hialcs/lcs.hpp"
#include "hialcs/testing.hpp"

using namespace hialcs;
using namespace hialcs::testing;

namespace {

constexpr double k_time_budget_s = 300.0;

uint32_t ceil_log2(uint32_t n) {
    return n <= 1 ? 0 : static_cast<uint32_t>(std::bit_width(n - 1));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

bool g_all_pass = true;

void report(int num, const char* name, bool pass, const std::string& detail) {
    std::printf("[%s] %d %s: %s\n", pass ? "PASS" : "FAIL", num, name,
                detail.c_str());
    g_all_pass = g_all_pass && pass;
}

std::string format_ratio(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

// criteria 1-3 share one instance stream: per size, 200 random tree pairs
// with 1000 random queries each, compared across the naive oracle and every
// engine, while the size bound and the probe bounds are checked on the side
void run_hia_criteria() {
    std::mt19937_64 rng(101);
    const std::vector<uint32_t> sizes = {2, 4, 8, 16, 32, 64, 128, 256};
    const uint32_t pairs_per_size = 200;
    const uint32_t queries_per_pair = 1000;

    bool equiv_ok = true, size_ok = true, probes_ok = true;
    std::string equiv_detail, size_detail, probes_detail;
    double worst_size_ratio = 0.0;
    uint64_t total_pairs = 0, total_queries = 0;
    auto t0 = std::chrono::steady_clock::now();

    for (uint32_t n : sizes) {
        uint32_t lg = ceil_log2(n);
        uint64_t walk_budget = 2 * (uint64_t{lg} + 1);
        std::set<uint32_t> rate_set = {1, 2, std::max(1u, lg),
                                       std::max(1u, lg * lg)};
        std::vector<uint32_t> rates(rate_set.begin(), rate_set.end());

        for (uint32_t p = 0; p < pairs_per_size && equiv_ok; ++p) {
            auto tp = gen_tree_pair(rng, n);
            naive_hia_oracle naive(tp.t1, tp.t2);
            hia_baseline base(tp.hpd1, tp.hpd2, tp.grid);
            hia_skyline sky(tp.hpd1, tp.hpd2, tp.grid);
            std::vector<std::unique_ptr<hia_sampled>> samp;
            for (uint32_t rate : rates) {
                samp.push_back(std::make_unique<hia_sampled>(
                    tp.hpd1, tp.hpd2, tp.grid, rate));
            }
            ++total_pairs;

            uint64_t sky_len = total_list_length(sky.table());
            uint64_t bound = uint64_t{n} * (lg + 1) * (lg + 1);
            worst_size_ratio =
                std::max(worst_size_ratio, double(sky_len) / double(bound));
            if (sky_len > bound && size_ok) {
                size_ok = false;
                size_detail = "n=" + std::to_string(n) + " total " +
                              std::to_string(sky_len) + " exceeds " +
                              std::to_string(bound);
            }

            for (uint32_t q = 0; q < queries_per_pair; ++q) {
                auto query = gen_query(rng, tp);
                ++total_queries;
                auto want = naive.query(query);
                uint64_t w = want ? want->combined : UINT64_MAX;

                probe_counters cb;
                auto gb = base.query(query, &cb);
                probe_counters cs;
                auto gs = sky.query(query, &cs);
                std::vector<uint64_t> gp(rates.size());
                std::vector<probe_counters> cp(rates.size());
                for (size_t i = 0; i < rates.size(); ++i) {
                    auto a = samp[i]->query(query, &cp[i]);
                    gp[i] = a ? a->combined : UINT64_MAX;
                }

                bool same = (gb ? gb->combined : UINT64_MAX) == w &&
                            (gs ? gs->combined : UINT64_MAX) == w;
                for (uint64_t v : gp) {
                    same = same && v == w;
                }
                if (!same) {
                    equiv_ok = false;
                    std::ostringstream os;
                    os << "n=" << n << " pair=" << p << " v1=" << query.v1
                       << " v2=" << query.v2 << " naive=" << w
                       << " baseline=" << (gb ? gb->combined : UINT64_MAX)
                       << " skyline=" << (gs ? gs->combined : UINT64_MAX);
                    for (size_t i = 0; i < rates.size(); ++i) {
                        os << " sampled[B=" << rates[i] << "]=" << gp[i];
                    }
                    equiv_detail = os.str();
                    break;
                }

                uint64_t depth_budget =
                    uint64_t{tp.hpd1.tree.depth[query.v1]} +
                    tp.hpd2.tree.depth[query.v2] + 1;
                bool pb = cb.emptiness_calls <= depth_budget &&
                          cs.path_pair_visits <= walk_budget;
                for (const auto& c : cp) {
                    pb = pb && c.path_pair_visits <= walk_budget;
                }
                if (!pb && probes_ok) {
                    probes_ok = false;
                    std::ostringstream os;
                    os << "n=" << n << " pair=" << p << " v1=" << query.v1
                       << " v2=" << query.v2 << " emptiness "
                       << cb.emptiness_calls << "/" << depth_budget
                       << " walk " << cs.path_pair_visits << "/"
                       << walk_budget;
                    probes_detail = os.str();
                }
            }
        }
    }

    double elapsed = seconds_since(t0);
    bool in_budget = elapsed < k_time_budget_s;
    if (equiv_ok) {
        equiv_detail = std::to_string(total_pairs) + " tree pairs, " +
                       std::to_string(total_queries) +
                       " queries, 4 sampled block sizes all match the naive "
                       "oracle; " +
                       format_ratio(elapsed) + "s (budget 300s)";
    }
    report(1, "hia-engine-equivalence", equiv_ok && in_budget, equiv_detail);
    if (size_ok) {
        size_detail = "worst total/bound ratio " +
                      format_ratio(worst_size_ratio) + " over " +
                      std::to_string(total_pairs) + " instances";
    }
    report(2, "skyline-size-bound", size_ok, size_detail);
    if (probes_ok) {
        probes_detail = "emptiness <= d1+d2+1 and walk visits <= "
                        "2(ceil(log2 n)+1) on all " +
                        std::to_string(total_queries) + " queries";
    }
    report(3, "probe-bounds", probes_ok, probes_detail);
}

void run_lz_criterion() {
    std::mt19937_64 rng(104);
    bool ok = true;
    std::string detail;

    uint32_t sigmas[3] = {2, 4, 26};
    uint32_t round_trips = 0;
    for (uint32_t i = 0; i < 1000 && ok; ++i) {
        uint32_t sigma = sigmas[i % 3];
        size_t len = i < 3 ? i + 1 : 1 + rng() % 5000;
        std::string s = gen_text(rng, len, sigma);
        auto p = parse(s);
        if (!validate_parse(p).empty() || decompress(p) != s) {
            ok = false;
            detail = "round-trip failed at string " + std::to_string(i) +
                     " (N=" + std::to_string(s.size()) + ")";
        }
        ++round_trips;
    }

    uint32_t lpf_checked = 0;
    for (uint32_t i = 0; i < 150 && ok; ++i) {
        uint32_t sigma = sigmas[i % 3];
        std::string s = gen_text(rng, 1 + rng() % 500, sigma);
        auto p = parse(s);
        for (const auto& ph : p.phrases) {
            uint64_t len = naive_lpf(s, ph.start).first;
            if (ph.copy_len != len) {
                ok = false;
                detail = "phrase at " + std::to_string(ph.start) +
                         " takes " + std::to_string(ph.copy_len) +
                         " but the longest previous factor is " +
                         std::to_string(len);
                break;
            }
        }
        ++lpf_checked;
    }

    uint32_t occ_checked = 0;
    for (uint32_t i = 0; i < 24 && ok; ++i) {
        uint32_t sigma = sigmas[i % 3];
        std::string s = gen_text(rng, 50 + rng() % 451, sigma);
        auto p = parse(s);
        std::vector<uint64_t> ends;
        for (const auto& ph : p.phrases) {
            ends.push_back(ph.end());
        }
        std::unordered_set<std::string> seen;
        for (size_t start = 0; start < s.size() && ok; ++start) {
            for (size_t len = 1; len <= 20 && start + len <= s.size();
                 ++len) {
                std::string sub = s.substr(start, len);
                if (!seen.insert(sub).second) {
                    continue;
                }
                size_t first = s.find(sub);
                uint64_t lo = first + 1, hi = first + len;
                auto it = std::lower_bound(ends.begin(), ends.end(), lo);
                if (it == ends.end() || *it > hi) {
                    ok = false;
                    detail = "leftmost occurrence of a length-" +
                             std::to_string(len) + " substring at " +
                             std::to_string(first + 1) +
                             " misses every phrase boundary";
                    break;
                }
            }
        }
        ++occ_checked;
    }

    if (ok) {
        detail = std::to_string(round_trips) + " round-trips, " +
                 std::to_string(lpf_checked) +
                 " factor-oracle strings, first-occurrence property on " +
                 std::to_string(occ_checked) + " strings, zero mismatches";
    }
    report(4, "lz-parser", ok, detail);
}

void run_lcs_criterion() {
    std::mt19937_64 rng(105);
    bool ok = true;
    std::string detail;
    uint64_t instances = 0, queries = 0;
    auto t0 = std::chrono::steady_clock::now();

    for (uint32_t sigma : {2u, 4u, 26u}) {
        for (uint32_t i = 0; i < 100 && ok; ++i) {
            std::string s = gen_text(rng, 1 + rng() % 5000, sigma);
            lz_text_index idx(s);
            ++instances;

            size_t m = 1 + rng() % 200;
            std::string pat;
            if (rng() % 2 == 0) {
                size_t start = rng() % s.size();
                pat = s.substr(start, std::min(m, s.size() - start));
                for (size_t e = rng() % 3; e > 0; --e) {
                    pat[rng() % pat.size()] =
                        static_cast<char>('a' + rng() % (sigma + 1));
                }
            }
            while (pat.size() < m) {
                pat.push_back(static_cast<char>('a' + rng() % (sigma + 1)));
            }

            uint64_t want = naive_lcs(s, pat).length;
            for (engine_choice eng :
                 {engine_choice::baseline, engine_choice::skyline,
                  engine_choice::sampled}) {
                ++queries;
                lcs_result res;
                try {
                    res = lcs(idx, pat, eng);
                } catch (const std::logic_error& e) {
                    ok = false;
                    detail = std::string("witness verification threw: ") +
                             e.what();
                    break;
                }
                bool same = res.length == want;
                if (same && res.length > 0) {
                    same = res.p_start && res.s_start &&
                           s.substr(*res.s_start - 1, res.length) ==
                               pat.substr(*res.p_start - 1, res.length);
                }
                if (!same) {
                    ok = false;
                    std::ostringstream os;
                    os << "sigma=" << sigma << " instance=" << i
                       << " N=" << s.size() << " m=" << pat.size()
                       << " dp=" << want << " got=" << res.length;
                    detail = os.str();
                    break;
                }
            }
        }
    }

    double elapsed = seconds_since(t0);
    bool in_budget = elapsed < k_time_budget_s;
    if (ok) {
        detail = std::to_string(instances) +
                 " instances x 3 engines match the quadratic oracle with "
                 "verified witnesses; " +
                 format_ratio(elapsed) + "s (budget 300s)";
    }
    report(5, "lcs-oracle", ok && in_budget, detail);
}

void run_corpus_criterion() {
    std::mt19937_64 rng(106);
    const size_t records = 10000, record_len = 100;
    std::string base(record_len, 'a');
    for (auto& c : base) {
        c = static_cast<char>('a' + rng() % 26);
    }
    std::string corpus;
    corpus.reserve(records * record_len);
    for (size_t r = 0; r < records; ++r) {
        std::string rec = base;
        for (size_t e = rng() % 3; e > 0; --e) {
            rec[rng() % record_len] = static_cast<char>('a' + rng() % 26);
        }
        corpus += rec;
    }

    uint64_t big_n = corpus.size();
    lz_text_index idx(std::move(corpus));
    uint64_t n = idx.parse().phrase_count();
    double ratio = double(n) / double(big_n);
    bool ok = ratio < 0.05;

    std::filesystem::path path =
        std::filesystem::temp_directory_path() / "hialcs_acceptance.idx";
    save_index(idx, path.string());
    uint64_t bytes = std::filesystem::file_size(path);
    uint64_t words = bytes / 8;
    uint64_t n_log_n_words =
        n * std::max(1u, ceil_log2(static_cast<uint32_t>(big_n)));
    double size_ratio = double(words) / double(n_log_n_words);

    size_t start = 400 * record_len + 7;
    std::string pat = idx.text().substr(start, 150);
    pat[40] = 'z';
    pat[90] = 'z';
    uint64_t want = naive_lcs(idx.text(), pat).length;
    uint64_t got = lcs(idx, pat, engine_choice::skyline).length;
    ok = ok && got == want;

    std::ostringstream os;
    os << "n/N = " << n << "/" << big_n << " = " << format_ratio(ratio)
       << (ratio < 0.05 ? " < 0.05" : " >= 0.05") << "; container " << words
       << " words vs n*log2(N) = " << n_log_n_words << " words, ratio "
       << format_ratio(size_ratio) << " (reported, not asserted)"
       << "; sample query dp=" << want << " got=" << got;
    report(6, "repetitive-corpus", ok, os.str());
    std::filesystem::remove(path);
}

void run_persistence_criterion() {
    std::mt19937_64 rng(107);
    std::string s = gen_text(rng, 2500, 4);
    lz_text_index idx(s);

    std::filesystem::path path =
        std::filesystem::temp_directory_path() / "hialcs_persist.idx";
    save_index(idx, path.string());
    auto back = load_index(path.string());
    std::filesystem::remove(path);

    bool ok = true;
    std::string detail;
    const engine_choice engines[] = {engine_choice::baseline,
                                     engine_choice::skyline,
                                     engine_choice::sampled};
    for (uint32_t q = 0; q < 100 && ok; ++q) {
        size_t m = 1 + rng() % 80;
        std::string pat;
        if (rng() % 2 == 0) {
            size_t start = rng() % s.size();
            pat = s.substr(start, std::min(m, s.size() - start));
        }
        while (pat.size() < m) {
            pat.push_back(static_cast<char>('a' + rng() % 5));
        }
        engine_choice eng = engines[q % 3];
        probe_counters ca, cb;
        auto ra = lcs(idx, pat, eng, &ca);
        auto rb = lcs(*back, pat, eng, &cb);
        bool same = ra.length == rb.length && ra.p_start == rb.p_start &&
                    ra.s_start == rb.s_start && ra.split_i == rb.split_i &&
                    ra.boundary_k == rb.boundary_k &&
                    ca.emptiness_calls == cb.emptiness_calls &&
                    ca.path_pair_visits == cb.path_pair_visits &&
                    ca.reported_points == cb.reported_points;
        if (!same) {
            ok = false;
            detail = "report diverged on query " + std::to_string(q);
        }
    }
    if (ok) {
        detail = "100 queries produce identical reports before save and "
                 "after load";
    }
    report(7, "persistence", ok, detail);
}

} // namespace

int main() {
    run_hia_criteria();
    run_lz_criterion();
    run_lcs_criterion();
    run_corpus_criterion();
    run_persistence_criterion();
    return g_all_pass ? 0 : 1;
}
