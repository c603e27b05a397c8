#include <doctest.h>

#include <set>
#include <vector>

#include "qmc/field.hpp"

using namespace qmc;

TEST_CASE("digit extraction") {
    CHECK(digits_of_index(0, Base(2), 4) == DigitVector{0, 0, 0, 0});
    CHECK(digits_of_index(5, Base(2), 4) == DigitVector{1, 0, 1, 0});
    CHECK(digits_of_index(7, Base(3), 3) == DigitVector{1, 2, 0});
    CHECK_THROWS_AS(digits_of_index(16, Base(2), 4), Error);
    CHECK_NOTHROW(digits_of_index(15, Base(2), 4));
}

TEST_CASE("digit round trip") {
    for (std::uint32_t bb : {2u, 3u, 5u}) {
        const Base b(bb);
        const int len = 6;
        std::uint64_t cap = 1;
        for (int i = 0; i < len; ++i) cap *= bb;
        for (std::uint64_t i = 0; i < cap; ++i)
            CHECK(index_of_digits(digits_of_index(i, b, len), b) == i);
    }
}

TEST_CASE("radical inverse values") {
    CHECK(radical_inverse(1, Base(2)) == 0.5);
    CHECK(radical_inverse(3, Base(2)) == 0.75);
    // 5 = 12 base 3, digits (2,1) least significant first: 2/3 + 1/9.
    double direct = 0.0;
    {
        const DigitVector d = digits_of_index(5, Base(3), 2);
        double scale = 1.0 / 3.0;
        for (auto digit : d) {
            direct += digit * scale;
            scale /= 3.0;
        }
    }
    CHECK(radical_inverse(5, Base(3)) == doctest::Approx(direct).epsilon(1e-15));
    CHECK(radical_inverse(5, Base(3)) == doctest::Approx(7.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("radical inverse enumerates the base grid") {
    // The first b^m values are exactly {j/b^m} for every m up to 10.
    for (std::uint32_t bb : {2u, 3u, 5u}) {
        const Base b(bb);
        std::uint64_t cap = 1;
        for (int m = 1; m <= 10; ++m) {
            cap *= bb;
            std::vector<bool> seen(cap, false);
            bool all_fresh = true, all_on_grid = true;
            for (std::uint64_t i = 0; i < cap; ++i) {
                const double v = radical_inverse(i, b) * double(cap);
                const auto idx = static_cast<std::uint64_t>(v + 0.5);
                if (idx >= cap || v != double(idx)) {
                    all_on_grid = false;
                    break;
                }
                if (seen[idx]) {
                    all_fresh = false;
                    break;
                }
                seen[idx] = true;
            }
            CHECK(all_on_grid);
            CHECK(all_fresh);
        }
    }
}

TEST_CASE("gray step positions and digits") {
    CHECK(gray_step_position(1, Base(3)) == 1);
    CHECK(gray_digits(1, Base(3), 3) == DigitVector{2, 0, 0});
    CHECK(gray_step_position(3, Base(3)) == 2);
    CHECK(gray_digits(3, Base(3), 3) == DigitVector{1, 2, 0});
    CHECK(gray_step_position(1, Base(2)) == 1);
    CHECK(gray_digits(1, Base(2), 3) == DigitVector{1, 0, 0});
}

TEST_CASE("gray sequence is a permutation changing one digit per step") {
    for (std::uint32_t bb : {2u, 3u, 5u}) {
        const Base b(bb);
        const int m = bb == 2 ? 8 : 4;
        std::uint64_t cap = 1;
        for (int i = 0; i < m; ++i) cap *= bb;

        std::set<std::uint64_t> seen;
        DigitVector state(static_cast<std::size_t>(m), 0);
        seen.insert(0);
        for (std::uint64_t i = 1; i < cap; ++i) {
            const int pos = gray_step_position(i, b) - 1;
            state[static_cast<std::size_t>(pos)] =
                static_cast<std::uint8_t>(b.sub(state[static_cast<std::size_t>(pos)], 1));
            // recursion matches the closed form
            CHECK(state == gray_digits(i, b, m));
            seen.insert(index_of_digits(state, b));
        }
        CHECK(seen.size() == cap);
        CHECK(*seen.rbegin() == cap - 1);
    }
}

TEST_CASE("field axioms hold exhaustively") {
    for (std::uint32_t bb : {2u, 3u, 5u, 7u}) {
        const Base b(bb);
        for (std::uint32_t x = 0; x < bb; ++x) {
            for (std::uint32_t y = 0; y < bb; ++y) {
                CHECK(b.add(x, y) == (x + y) % bb);
                CHECK(b.sub(b.add(x, y), y) == x);
                for (std::uint32_t z = 0; z < bb; ++z) {
                    CHECK(b.mul(x, b.add(y, z)) == b.add(b.mul(x, y), b.mul(x, z)));
                    CHECK(b.mul(b.mul(x, y), z) == b.mul(x, b.mul(y, z)));
                }
            }
            if (x != 0) CHECK(b.mul(x, b.inv(x)) == 1);
        }
    }
    CHECK(Base(3).add(2, 2) == 1);
    CHECK(Base(3).inv(2) == 2);
    CHECK(Base(7).mul(0, 5) == 0);
    CHECK_THROWS_AS(Base(5).inv(0), Error);
}

TEST_CASE("base must be prime") {
    CHECK_THROWS_AS(Base(1), Error);
    CHECK_THROWS_AS(Base(4), Error);
    CHECK_THROWS_AS(Base(9), Error);
    CHECK_NOTHROW(Base(31));
    CHECK(Base(2).max_digits() == 53);
    CHECK(Base(3).max_digits() == 33);
}

TEST_CASE("digit matrix helpers") {
    const Base b(3);
    DigitMatrix m(2, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(1, 1) = 1;
    const DigitVector v{2, 1};
    const DigitVector mv = mat_vec(m, v, b);
    CHECK(mv == DigitVector{(2 * 1 + 1 * 2) % 3, 1});
    CHECK(mat_mul(m, DigitMatrix::identity(2), b) == m);
    CHECK(transpose(transpose(m)) == m);
    CHECK(digits_to_unit(DigitVector{1, 1}, Base(2)) == 0.75);
}
