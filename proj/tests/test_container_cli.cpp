#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "hialcs/container.hpp"
#include "hialcs/lcs.hpp"
#include "hialcs/testing.hpp"

using namespace hialcs;
using namespace hialcs::testing;
namespace fs = std::filesystem;

namespace {

constexpr engine_choice k_engines[] = {engine_choice::baseline,
                                       engine_choice::skyline,
                                       engine_choice::sampled};

std::string save_to_string(const lz_text_index& idx) {
    std::ostringstream out(std::ios::binary);
    save_index(idx, out);
    return out.str();
}

std::unique_ptr<lz_text_index> load_from_string(const std::string& blob) {
    std::istringstream in(blob, std::ios::binary);
    return load_index(in);
}

std::string random_pattern(std::mt19937_64& rng, const std::string& s,
                           uint32_t sigma, size_t max_len) {
    size_t m = 1 + rng() % max_len;
    std::string p;
    if (rng() % 2 == 0 && !s.empty()) {
        size_t start = rng() % s.size();
        p = s.substr(start, std::min(m, s.size() - start));
    }
    while (p.size() < m) {
        p.push_back(static_cast<char>('a' + rng() % (sigma + 1)));
    }
    return p;
}

struct report {
    lcs_result res;
    probe_counters counters;
};

report run_report(const lz_text_index& idx, const std::string& pat,
                  engine_choice eng) {
    report r;
    r.res = lcs(idx, pat, eng, &r.counters);
    return r;
}

void check_same_report(const report& a, const report& b) {
    CHECK(a.res.length == b.res.length);
    CHECK(a.res.p_start == b.res.p_start);
    CHECK(a.res.s_start == b.res.s_start);
    CHECK(a.res.split_i == b.res.split_i);
    CHECK(a.res.boundary_k == b.res.boundary_k);
    CHECK(a.counters.emptiness_calls == b.counters.emptiness_calls);
    CHECK(a.counters.path_pair_visits == b.counters.path_pair_visits);
    CHECK(a.counters.reported_points == b.counters.reported_points);
}

fs::path test_dir() {
    fs::path dir = fs::temp_directory_path() / "hialcs_cli_test";
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    REQUIRE(bool(out));
}

#ifdef HIALCS_CLI_PATH
struct cli_result {
    int exit_code = -1;
    std::string out;
};

cli_result run_cli(const std::string& args) {
    std::string cmd = std::string(HIALCS_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    cli_result r;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) {
        r.out.append(buf, got);
    }
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}
#endif

} // namespace

TEST_CASE("container round-trips through memory") {
    std::mt19937_64 rng(80);
    for (int inst = 0; inst < 6; ++inst) {
        std::string s = gen_text(rng, 30 + rng() % 500, 4);
        lz_text_index idx(s);
        std::string blob = save_to_string(idx);
        auto back = load_from_string(blob);

        CHECK(back->text() == idx.text());
        CHECK(back->sample_rate() == idx.sample_rate());
        REQUIRE(back->parse().phrase_count() == idx.parse().phrase_count());
        for (size_t k = 0; k < idx.parse().phrase_count(); ++k) {
            const auto& a = idx.parse().phrases[k];
            const auto& b = back->parse().phrases[k];
            CHECK(a.start == b.start);
            CHECK(a.copy_len == b.copy_len);
            CHECK(a.copy_src == b.copy_src);
            CHECK(a.literal == b.literal);
        }
        CHECK(back->baseline() != nullptr);
        CHECK(back->skyline() != nullptr);
        CHECK(back->sampled() != nullptr);

        for (int q = 0; q < 12; ++q) {
            std::string pat = random_pattern(rng, s, 4, 40);
            for (auto eng : k_engines) {
                check_same_report(run_report(idx, pat, eng),
                                  run_report(*back, pat, eng));
            }
        }
    }
}

TEST_CASE("container preserves engine subsets and sample rate") {
    lz_text_index idx("abracadabra", engine_set{false, true, false}, 3);
    auto back = load_from_string(save_to_string(idx));
    CHECK(back->baseline() == nullptr);
    CHECK(back->skyline() != nullptr);
    CHECK(back->sampled() == nullptr);
    CHECK(back->sample_rate() == 3);
    CHECK(lcs(*back, "cadab", engine_choice::skyline).length == 5);
    CHECK_THROWS_AS(lcs(*back, "cadab", engine_choice::baseline),
                    std::invalid_argument);
}

TEST_CASE("container round-trips through a file") {
    std::mt19937_64 rng(81);
    std::string s = gen_text(rng, 300, 4);
    lz_text_index idx(s);
    fs::path p = test_dir() / "roundtrip.idx";
    save_index(idx, p.string());
    auto back = load_index(p.string());
    CHECK(back->text() == s);
    CHECK_THROWS_AS(load_index((test_dir() / "missing.idx").string()),
                    container_error);
}

TEST_CASE("loader rejects corrupted containers") {
    std::mt19937_64 rng(82);
    std::string s = gen_text(rng, 200, 4);
    lz_text_index idx(s);
    std::string good = save_to_string(idx);
    REQUIRE_NOTHROW(load_from_string(good));

    SUBCASE("bad magic") {
        std::string bad = good;
        bad[0] = 'X';
        CHECK_THROWS_AS(load_from_string(bad), container_error);
        CHECK_THROWS_AS(load_from_string(""), container_error);
        CHECK_THROWS_AS(load_from_string("HIA"), container_error);
    }
    SUBCASE("bad version") {
        std::string bad = good;
        bad[8] = 9;
        CHECK_THROWS_AS(load_from_string(bad), container_error);
    }
    SUBCASE("truncation at any sampled prefix") {
        for (size_t cut = 0; cut < good.size(); cut += 7) {
            CHECK_THROWS_AS(load_from_string(good.substr(0, cut)),
                            container_error);
        }
    }
    SUBCASE("trailing garbage") {
        CHECK_THROWS_AS(load_from_string(good + "xyz"), container_error);
    }
    SUBCASE("flipped text byte breaks the stored tables") {
        // the text section payload starts after the magic, the version, the
        // first section header, and the fixed-size meta payload
        size_t meta_len = 8 + 4 + 4 + 4 + 4;
        size_t text_off = 12 + (12 + meta_len) + 12;
        REQUIRE(text_off + 1 < good.size());
        std::string bad = good;
        bad[text_off] = static_cast<char>(bad[text_off] ^ 1);
        CHECK_THROWS_AS(load_from_string(bad), container_error);
    }
    SUBCASE("flipped permutation entry is caught") {
        // pi is the last section: count then n entries of 4 bytes
        size_t last_entry = good.size() - 4;
        std::string bad = good;
        bad[last_entry] = static_cast<char>(bad[last_entry] ^ 1);
        CHECK_THROWS_AS(load_from_string(bad), container_error);
    }
}

#ifdef HIALCS_CLI_PATH

TEST_CASE("cli builds, queries, and reports stats") {
    fs::path dir = test_dir();
    fs::path text = dir / "banana.txt";
    fs::path index = dir / "banana.idx";
    write_file(text, "banana");

    auto built = run_cli("build " + text.string() + " -o " + index.string());
    CHECK(built.exit_code == 0);
    CHECK(built.out.find("phrases=") != std::string::npos);
    CHECK(built.out.find("skyline_total_length=") != std::string::npos);

    auto q = run_cli("query " + index.string() + " -p ananas");
    CHECK(q.exit_code == 0);
    CHECK(q.out.find("length=5") != std::string::npos);

    uint64_t lengths[3];
    for (int e = 0; e < 3; ++e) {
        const char* names[] = {"baseline", "skyline", "sampled"};
        auto r = run_cli("query " + index.string() + " -p ananas --json " +
                         "--verbose-splits --engine " + names[e]);
        REQUIRE(r.exit_code == 0);
        auto j = nlohmann::json::parse(r.out);
        REQUIRE(j.contains("length"));
        lengths[e] = j["length"].get<uint64_t>();
        CHECK(j["engine"] == names[e]);
        CHECK(j["p_start"].is_number_integer());
        CHECK(j["s_start"].is_number_integer());
        CHECK(j["split_i"].is_number_integer());
        CHECK(j["boundary_k"].is_number_integer());
        CHECK(j["emptiness_calls"].is_number_integer());
        CHECK(j["path_pair_visits"].is_number_integer());
        CHECK(j["reported_points"].is_number_integer());
        CHECK(j["micros"].is_number_integer());
        REQUIRE(j.contains("splits"));
        CHECK(j["splits"].size() == 7);
    }
    CHECK(lengths[0] == 5);
    CHECK(lengths[0] == lengths[1]);
    CHECK(lengths[1] == lengths[2]);

    auto miss = run_cli("query " + index.string() + " -p q --json");
    REQUIRE(miss.exit_code == 0);
    auto jm = nlohmann::json::parse(miss.out);
    CHECK(jm["length"] == 0);
    CHECK(jm["p_start"] == -1);
    CHECK(jm["s_start"] == -1);
    CHECK(jm["boundary_k"] == -1);

    auto st = run_cli("stats " + index.string());
    CHECK(st.exit_code == 0);
    CHECK(st.out.find("skyline_bound_ratio=") != std::string::npos);
    CHECK(st.out.find("engines= baseline skyline sampled") !=
          std::string::npos);
}

TEST_CASE("cli serves pattern files line by line") {
    fs::path dir = test_dir();
    fs::path text = dir / "abra.txt";
    fs::path index = dir / "abra.idx";
    fs::path pats = dir / "patterns.txt";
    write_file(text, "abracadabra");
    write_file(pats, "abra\n\ncadab\nzzz\n");
    REQUIRE(run_cli("build " + text.string() + " -o " + index.string())
                .exit_code == 0);

    auto r = run_cli("query " + index.string() + " --pattern-file " +
                     pats.string() + " --json");
    REQUIRE(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::vector<uint64_t> got;
    while (std::getline(lines, line)) {
        got.push_back(nlohmann::json::parse(line)["length"].get<uint64_t>());
    }
    CHECK(got == std::vector<uint64_t>{4, 5, 0});
}

TEST_CASE("cli exit codes separate usage, data, and verification") {
    fs::path dir = test_dir();
    fs::path text = dir / "one.txt";
    fs::path index = dir / "one.idx";
    write_file(text, "a");

    auto built = run_cli("build " + text.string() + " -o " + index.string());
    CHECK(built.exit_code == 0);
    CHECK(built.out.find("phrases=1") != std::string::npos);
    CHECK(run_cli("query " + index.string() + " -p a").exit_code == 0);

    CHECK(run_cli("").exit_code == 1);
    CHECK(run_cli("query " + index.string()).exit_code == 1);
    CHECK(run_cli("query " + index.string() + " -p x --engine turbo")
              .exit_code == 1);
    CHECK(run_cli("query /no/such/file.idx -p a").exit_code == 2);
    CHECK(run_cli("build /no/such/file.txt -o " + (dir / "x.idx").string())
              .exit_code == 2);

    fs::path empty = dir / "empty.txt";
    write_file(empty, "");
    CHECK(run_cli("build " + empty.string() + " -o " +
                  (dir / "y.idx").string())
              .exit_code == 2);

    fs::path junk = dir / "junk.idx";
    write_file(junk, "not a container at all");
    CHECK(run_cli("query " + junk.string() + " -p a").exit_code == 2);
    CHECK(run_cli("stats " + junk.string()).exit_code == 2);

    fs::path slim = dir / "slim.idx";
    REQUIRE(run_cli("build " + text.string() + " -o " + slim.string() +
                    " --engine baseline")
                .exit_code == 0);
    CHECK(run_cli("query " + slim.string() + " -p a --engine sampled")
              .exit_code == 2);
    CHECK(run_cli("query " + slim.string() + " -p a").exit_code == 0);
}

TEST_CASE("cli verify honors seeds and the environment override") {
    auto r = run_cli("verify --sizes 2,4 --trials 10");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("seed=20260822") != std::string::npos);
    CHECK(r.out.find("verify passed") != std::string::npos);

    auto seeded = run_cli("verify --seed 5 --sizes 2 --trials 5");
    CHECK(seeded.exit_code == 0);
    CHECK(seeded.out.find("seed=5") != std::string::npos);

    std::string cmd = std::string("HIALCS_SEED=99 ") + HIALCS_CLI_PATH +
                      " verify --seed 5 --sizes 2 --trials 5 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) {
        out.append(buf, got);
    }
    int status = pclose(pipe);
    CHECK(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(out.find("seed=99") != std::string::npos);
}

#endif
