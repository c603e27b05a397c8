#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qmc/engine.hpp"
#include "qmc/genmat.hpp"
#include "qmc/rng.hpp"
#include "qmc/tvalue.hpp"

using namespace qmc;

namespace {

std::string temp_path(const char* name) {
    return std::string("qmc_test_") + name + ".txt";
}

} // namespace

TEST_CASE("faure construction basics") {
    const GeneratorMatrixSet one = faure_matrices(Base(2), 1, 3);
    CHECK(one.matrix(0) == DigitMatrix::identity(3));

    const GeneratorMatrixSet pair = faure_matrices(Base(3), 2, 2);
    DigitMatrix pascal(2, 2);
    pascal.at(0, 0) = 1;
    pascal.at(0, 1) = 1;
    pascal.at(1, 1) = 1;
    CHECK(pair.matrix(0) == DigitMatrix::identity(2));
    CHECK(pair.matrix(1) == pascal);

    CHECK_THROWS_AS(faure_matrices(Base(2), 3, 4), Error);
}

TEST_CASE("faure sets have t = 0 against the geometric oracle") {
    // (0,m,s)-nets for prime b >= s: checked via the elementary-interval count.
    for (std::uint32_t bb : {2u, 3u, 5u}) {
        const Base b(bb);
        for (int s = 1; s <= static_cast<int>(bb) && s <= 3; ++s) {
            const int m_hi = bb == 5 ? 3 : 4;
            for (int m = 1; m <= m_hi; ++m) {
                const GeneratorMatrixSet set = faure_matrices(b, s, m);
                std::uint64_t n = 1;
                for (int i = 0; i < m; ++i) n *= bb;
                const PointBatch pts = generate(set, identity_spec(set, m), n, PointOrder::natural);
                CHECK(geometric_oracle_t(pts, b, m) == 0);
                CHECK(exact_t(set, m) == 0);
            }
        }
    }
    // b=3, s=3, m=3 named case
    const GeneratorMatrixSet set = faure_matrices(Base(3), 3, 3);
    const PointBatch pts = generate(set, identity_spec(set, 3), 27, PointOrder::natural);
    CHECK(geometric_oracle_t(pts, Base(3), 3) == 0);
}

TEST_CASE("triangular encode/decode") {
    TriangularEncoding e2(2);
    e2.cells = {1};
    DigitMatrix m2 = decode_triangular(e2);
    CHECK(m2.at(0, 0) == 1);
    CHECK(m2.at(0, 1) == 1);
    CHECK(m2.at(1, 0) == 0);
    CHECK(m2.at(1, 1) == 1);

    TriangularEncoding zero3(3);
    CHECK(decode_triangular(zero3) == DigitMatrix::identity(3));

    // cells fill the strict upper triangle row by row
    TriangularEncoding e3(3);
    e3.cells = {1, 0, 1};
    const DigitMatrix m3 = decode_triangular(e3);
    CHECK(m3.at(0, 1) == 1);
    CHECK(m3.at(0, 2) == 0);
    CHECK(m3.at(1, 2) == 1);
    for (int r = 0; r < 3; ++r) CHECK(m3.at(r, r) == 1);

    TriangularEncoding bad(3);
    bad.cells = {1, 0};
    CHECK_THROWS_AS(decode_triangular(bad), Error);
}

TEST_CASE("encode/decode round trips on random cells") {
    RngStream rng(42);
    for (int m = 2; m <= 8; ++m) {
        for (int trial = 0; trial < 20; ++trial) {
            TriangularEncoding enc(m);
            for (auto& cell : enc.cells) cell = static_cast<std::uint8_t>(rng.next_below(2));
            CHECK(encode_triangular(decode_triangular(enc)).cells == enc.cells);
        }
    }
}

TEST_CASE("matrix file round trip") {
    const std::string path = temp_path("faure_roundtrip");
    const GeneratorMatrixSet set = faure_matrices(Base(3), 3, 4);
    save_matrices(set, path);
    const GeneratorMatrixSet loaded = load_matrices(path);
    CHECK(loaded.base.value() == 3);
    CHECK(loaded.s == 3);
    CHECK(loaded.m_max == 4);
    for (int j = 0; j < 3; ++j) CHECK(loaded.matrix(j) == set.matrix(j));

    // save-of-load is byte identical past the name comment
    std::ostringstream first, second;
    write_matrices(set, first);
    write_matrices(loaded, second);
    CHECK(first.str() == second.str());
    std::remove(path.c_str());
}

TEST_CASE("matrix file parser rejects bad digits with line numbers") {
    std::istringstream bad("2 1 2\n\n0 1\n3 0\n");
    try {
        parse_matrices(bad, "bad.txt");
        FAIL("expected invalid digit");
    } catch (const Error& e) {
        CHECK(e.code() == errc::invalid_digit);
        CHECK(std::string(e.what()).find("bad.txt:4") != std::string::npos);
    }

    std::istringstream truncated("2 2 2\n1 0\n0 1\n");
    try {
        parse_matrices(truncated, "short.txt");
        FAIL("expected parse error");
    } catch (const Error& e) {
        CHECK(e.code() == errc::parse_error);
    }
}

TEST_CASE("matrix file parser accepts comments and identity blocks") {
    std::istringstream in("# two identity matrices\n2 2 3\n1 0 0\n0 1 0\n0 0 1\n\n1 0 0\n0 1 0\n0 0 1\n");
    const GeneratorMatrixSet set = parse_matrices(in, "inline");
    CHECK(set.s == 2);
    CHECK(set.matrix(0) == DigitMatrix::identity(3));
    CHECK(set.matrix(1) == DigitMatrix::identity(3));
}
