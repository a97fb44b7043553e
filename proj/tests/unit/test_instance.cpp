#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "fsbb/instance.hpp"
#include "oracles.hpp"

using namespace fsbb;

namespace {

std::string parse_error_of(std::string_view text) {
    try {
        (void)parse_instance(text);
    } catch (const ParseError& e) {
        return e.detail();
    }
    return {};
}

}  // namespace

TEST_CASE("parse: canonical examples") {
    const auto a = parse_instance("2 2\n1 2\n2 1\n");
    CHECK(a.num_jobs() == 2);
    CHECK(a.num_machines() == 2);
    CHECK(a == Instance("", {{1, 2}, {2, 1}}));
    CHECK(a.proc(0, 1) == 2);
    CHECK(a.proc(1, 0) == 2);

    const auto b = parse_instance("1 1\n5\n");
    CHECK(b == Instance("", {{5}}));
    CHECK(b.total_time(0) == 5);
}

TEST_CASE("parse: comments, blank lines and extra whitespace are ignored") {
    const auto inst = parse_instance("# header comment\n\n  2\t 3 \n# mid\n1 2 3\n\n4 5 6\n# tail\n");
    CHECK(inst == Instance("", {{1, 2, 3}, {4, 5, 6}}));
}

TEST_CASE("parse: diagnostics carry line and column") {
    try {
        (void)parse_instance("2 2\n1 2\n2\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.detail() == "row 2: expected 2 values, found 1");
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    try {
        (void)parse_instance("1 3\n1 x 3\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 3);
    }
}

TEST_CASE("parse: malformed inputs are rejected") {
    CHECK(parse_error_of("") == "missing header");
    CHECK(parse_error_of("# only a comment\n") == "missing header");
    CHECK(parse_error_of("2\n").find("malformed header") == 0);
    CHECK(parse_error_of("0 3\n") == "header: num_jobs must be positive");
    CHECK(parse_error_of("3 0\n") == "header: num_machines must be positive");
    CHECK(parse_error_of("1 2\n1 -2\n") == "negative value '-2'");
    CHECK(parse_error_of("1 2\n1 2.5\n") == "non-numeric token '2.5'");
    CHECK(parse_error_of("1 1\n99999999999\n") == "value '99999999999' out of range");
    CHECK(parse_error_of("1 2\n1 2 3\n") == "row 1: expected 2 values, found 3");
    CHECK(parse_error_of("1 1\n1\n2\n") == "unexpected data after row 1");
    CHECK(parse_error_of("3 1\n1\n2\n") == "expected 3 job rows, found 2");
}

TEST_CASE("instance construction validates shape") {
    CHECK_THROWS_AS(Instance("x", std::vector<std::vector<Duration>>{}), std::invalid_argument);
    CHECK_THROWS_AS(Instance("x", {{1, 2}, {3}}), std::invalid_argument);
    CHECK_THROWS_AS(Instance("x", {{}}), std::invalid_argument);
    CHECK_THROWS_AS(Instance("x", 2, 2, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("write: canonical text") {
    CHECK(write_instance(Instance("a", {{5}})) == "1 1\n5\n");
    CHECK(write_instance(Instance("b", {{1, 2}, {2, 1}})) == "2 2\n1 2\n2 1\n");
}

TEST_CASE("property: parse(write(x)) == x and write is a fixed point") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 12;
        const std::size_t m = 1 + rng() % 8;
        const Duration max = trial % 3 == 0 ? 4'000'000'000u : 99u;
        const auto inst = generate_random_instance(n, m, max, rng());
        const auto text = write_instance(inst);
        const auto back = parse_instance(text);
        CHECK(back == inst);
        CHECK(write_instance(back) == text);
    }
}

TEST_CASE("generator: deterministic, in range, seed-sensitive") {
    const auto a = generate_random_instance(9, 6, 20, 7);
    const auto b = generate_random_instance(9, 6, 20, 7);
    const auto c = generate_random_instance(9, 6, 20, 8);
    CHECK(a == b);
    CHECK(write_instance(a) == write_instance(b));
    CHECK_FALSE(a == c);
    CHECK(a.name() == "random_n9_m6_s7");
    for (auto v : a.flat()) {
        CHECK(v >= 1);
        CHECK(v <= 20);
    }
    const auto ones = generate_random_instance(4, 4, 1, 3);
    for (auto v : ones.flat()) CHECK(v == 1);
    CHECK_THROWS_AS(generate_random_instance(0, 3, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_random_instance(3, 3, 0, 1), std::invalid_argument);
}

TEST_CASE("load: shipped data files agree with an independent reader") {
    const std::filesystem::path data = FSBB_DATA_DIR;
    for (const char* rel : {"taillard/ta001.fsp", "taillard/ta028.fsp", "examples/two_by_two.fsp",
                            "oracle/oracle_000.fsp"}) {
        CAPTURE(rel);
        const auto inst = load_instance((data / rel).string());
        const auto ref = oracle::read_matrix(data / rel);
        REQUIRE(inst.num_jobs() == ref.size());
        REQUIRE(inst.num_machines() == ref[0].size());
        for (JobId j = 0; j < inst.num_jobs(); ++j)
            for (std::size_t k = 0; k < inst.num_machines(); ++k) CHECK(inst.proc(j, k) == ref[j][k]);
    }
    const auto ta001 = load_instance((data / "taillard/ta001.fsp").string());
    CHECK(ta001.name() == "ta001");
    CHECK(ta001.num_jobs() == 20);
    CHECK(ta001.num_machines() == 5);
    CHECK_THROWS_AS(load_instance((data / "missing.fsp").string()), std::runtime_error);
}
