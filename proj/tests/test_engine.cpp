#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "qmc/engine.hpp"
#include "qmc/tvalue.hpp"

using namespace qmc;

namespace {

// Independent evaluation of the unfolded randomization
//   x-digits = L_j C_j [L^T psi(i) + e] + e_j
// composed step by step, against which the premultiplied path is checked.
DigitVector direct_transform_digits(const GeneratorMatrixSet& set, const ScrambleSpec& spec, int j,
                                    std::uint64_t i) {
    const Base& b = set.base;
    DigitVector idx = mat_vec(transpose(spec.L), digits_of_index(i, b, set.m_max), b);
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = static_cast<std::uint8_t>(b.add(idx[k], spec.e[k]));

    DigitMatrix cj(spec.K, set.m_max);
    for (int r = 0; r < std::min(spec.K, set.m_max); ++r)
        for (int c = 0; c < set.m_max; ++c) cj.at(r, c) = set.matrix(j).at(r, c);

    DigitVector x = mat_vec(spec.Lj[static_cast<std::size_t>(j)], mat_vec(cj, idx, b), b);
    for (int k = 0; k < spec.K; ++k)
        x[static_cast<std::size_t>(k)] =
            static_cast<std::uint8_t>(b.add(x[static_cast<std::size_t>(k)], spec.ej[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]));
    return x;
}

std::vector<std::vector<double>> sorted_rows(const PointBatch& batch) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < batch.n; ++i)
        rows.emplace_back(batch.row(i), batch.row(i) + batch.s);
    std::sort(rows.begin(), rows.end());
    return rows;
}

// Integer whose base-b digits are the gray code digits of lambda.
std::uint64_t gray_image(std::uint64_t lambda, const Base& b) {
    return index_of_digits(gray_digits(lambda, b, 40 / static_cast<int>(b.value()) + 2), b);
}

} // namespace

TEST_CASE("identity spec and scramble spec structure") {
    const GeneratorMatrixSet set = faure_matrices(Base(3), 2, 3);
    const ScrambleSpec none = identity_spec(set, 5);
    CHECK(none.Lj[0] == DigitMatrix::identity(5));
    CHECK(none.ej[1] == DigitVector(5, 0));
    CHECK(none.L == DigitMatrix::identity(3));

    const ScrambleSpec owen = random_scramble_spec(set, ScrambleMode::owen, 6, RngStream(9));
    for (int j = 0; j < 2; ++j) {
        for (int r = 0; r < 6; ++r) {
            CHECK(owen.Lj[static_cast<std::size_t>(j)].at(r, r) >= 1); // nonzero diagonal
            for (int c = r + 1; c < 6; ++c) CHECK(owen.Lj[static_cast<std::size_t>(j)].at(r, c) == 0);
        }
    }
    CHECK(owen.L == DigitMatrix::identity(3)); // owen mode leaves the index transform alone

    // base 2 diagonals are forced to 1
    const GeneratorMatrixSet set2 = faure_matrices(Base(2), 2, 4);
    const ScrambleSpec owen2 = random_scramble_spec(set2, ScrambleMode::owen, 6, RngStream(11));
    for (int r = 0; r < 6; ++r) CHECK(owen2.Lj[0].at(r, r) == 1);

    // determinism
    const ScrambleSpec again = random_scramble_spec(set, ScrambleMode::owen, 6, RngStream(9));
    CHECK(again.Lj[0] == owen.Lj[0]);
    CHECK(again.ej[1] == owen.ej[1]);
}

TEST_CASE("premultiply identity and tumble-only block equality") {
    const GeneratorMatrixSet set = faure_matrices(Base(3), 3, 3);
    const ScrambleSpec none = identity_spec(set, 3);
    const PremultipliedSet pre = premultiply(set, none);
    for (int j = 0; j < 3; ++j) {
        CHECK(pre.e[static_cast<std::size_t>(j)] == DigitVector(3, 0));
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                CHECK(pre.C[static_cast<std::size_t>(j)].at(r, c) == set.matrix(j).at(r, c));
    }

    // tumbling reorders the full period but keeps the set
    const ScrambleSpec tum = random_scramble_spec(set, ScrambleMode::tumble, 3, RngStream(5));
    const PointBatch plain = generate(set, none, 27, PointOrder::natural);
    const PointBatch tumbled = generate(set, tum, 27, PointOrder::natural);
    CHECK(sorted_rows(plain) == sorted_rows(tumbled));
}

TEST_CASE("premultiplied path equals the direct transform digit for digit") {
    for (std::uint32_t bb : {2u, 3u}) {
        const Base b(bb);
        const int m = 4, K = 7;
        const GeneratorMatrixSet set = faure_matrices(b, static_cast<int>(std::min(bb, 2u)), m);
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            const ScrambleSpec spec = random_scramble_spec(set, ScrambleMode::both, K, RngStream(seed));
            const PremultipliedSet pre = premultiply(set, spec);
            std::uint64_t cap = 1;
            for (int i = 0; i < m; ++i) cap *= bb;
            for (std::uint64_t i = 0; i < cap; ++i) {
                const DigitVector psi = digits_of_index(i, b, m);
                for (int j = 0; j < set.s; ++j) {
                    DigitVector fast = mat_vec(pre.C[static_cast<std::size_t>(j)], psi, b);
                    for (int k = 0; k < K; ++k)
                        fast[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(
                            b.add(fast[static_cast<std::size_t>(k)], pre.e[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]));
                    CHECK(fast == direct_transform_digits(set, spec, j, i));
                }
            }
        }
    }
}

TEST_CASE("natural order reproduces the radical inverse") {
    const GeneratorMatrixSet set = identity_matrices(Base(2), 1, 2);
    const PointBatch pts = generate(set, identity_spec(set, 2), 4, PointOrder::natural);
    CHECK(pts.at(0, 0) == 0.0);
    CHECK(pts.at(1, 0) == 0.5);
    CHECK(pts.at(2, 0) == 0.25);
    CHECK(pts.at(3, 0) == 0.75);

    const PointBatch gray = generate(set, identity_spec(set, 2), 4, PointOrder::gray);
    CHECK(sorted_rows(gray) == sorted_rows(pts));

    CHECK_THROWS_AS(generate(set, identity_spec(set, 2), 5, PointOrder::natural), Error);
}

TEST_CASE("faure 9-point net is a (0,2,3)-net in any order") {
    const GeneratorMatrixSet set = faure_matrices(Base(3), 3, 2);
    for (PointOrder order : {PointOrder::natural, PointOrder::gray}) {
        const PointBatch pts = generate(set, identity_spec(set, 2), 9, order);
        CHECK(geometric_oracle_t(pts, Base(3), 2) == 0);
    }
}

TEST_CASE("gray blocks map onto natural blocks at the gray-coded block index") {
    const Base b2(2);
    const GeneratorMatrixSet set = faure_matrices(b2, 2, 6);
    const ScrambleSpec spec = random_scramble_spec(set, ScrambleMode::owen, 10, RngStream(3));
    const PointBatch nat = generate(set, spec, 64, PointOrder::natural);
    const PointBatch gray = generate(set, spec, 64, PointOrder::gray);

    for (int m = 0; m <= 6; ++m) {
        const std::uint64_t width = std::uint64_t(1) << m;
        for (std::uint64_t lambda = 0; lambda * width < 64; ++lambda) {
            // gather both blocks
            std::vector<std::vector<double>> gray_rows, nat_rows;
            const std::uint64_t image = gray_image(lambda, b2);
            for (std::uint64_t i = 0; i < width; ++i) {
                const std::uint64_t gi = lambda * width + i;
                const std::uint64_t ni = image * width + i;
                gray_rows.emplace_back(gray.row(gi), gray.row(gi) + gray.s);
                nat_rows.emplace_back(nat.row(ni), nat.row(ni) + nat.s);
            }
            std::sort(gray_rows.begin(), gray_rows.end());
            std::sort(nat_rows.begin(), nat_rows.end());
            CHECK(gray_rows == nat_rows);
        }
    }
}

TEST_CASE("gray generation with a start index continues the sequence") {
    const GeneratorMatrixSet set = faure_matrices(Base(3), 2, 4);
    const ScrambleSpec spec = random_scramble_spec(set, ScrambleMode::both, 8, RngStream(17));
    const PointBatch whole = generate(set, spec, 81, PointOrder::gray);
    const PointBatch tail = generate(set, spec, 27, PointOrder::gray, 54);
    for (std::size_t i = 0; i < tail.n; ++i)
        for (int j = 0; j < tail.s; ++j) CHECK(tail.at(i, j) == whole.at(54 + i, j));
}

TEST_CASE("scrambling preserves the t-value") {
    const GeneratorMatrixSet set = faure_matrices(Base(2), 2, 5);
    const int t0 = exact_t(set, 5);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const ScrambleSpec spec = random_scramble_spec(set, ScrambleMode::owen, 5, RngStream(seed));
        const PremultipliedSet pre = premultiply(set, spec);
        GeneratorMatrixSet scrambled(set.base, set.s, set.m_max, "scrambled");
        for (int j = 0; j < set.s; ++j)
            for (int r = 0; r < set.m_max; ++r)
                for (int c = 0; c < set.m_max; ++c)
                    scrambled.matrix(j).at(r, c) = pre.C[static_cast<std::size_t>(j)].at(r, c);
        CHECK(exact_t(scrambled, 5) == t0);
    }
}

TEST_CASE("scrambled digits keep shared prefixes and split at the first difference") {
    // properties iia/iib of the randomization, checked structurally
    for (std::uint32_t bb : {2u, 3u}) {
        const Base b(bb);
        const int m = 3, K = 6;
        const GeneratorMatrixSet set = identity_matrices(b, 1, m);
        std::uint64_t cap = 1;
        for (int i = 0; i < m; ++i) cap *= bb;
        for (std::uint64_t seed = 100; seed < 110; ++seed) {
            const ScrambleSpec spec = random_scramble_spec(set, ScrambleMode::owen, K, RngStream(seed));
            const PremultipliedSet pre = premultiply(set, spec);
            std::vector<DigitVector> x(cap), y(cap);
            for (std::uint64_t i = 0; i < cap; ++i) {
                const DigitVector psi = digits_of_index(i, b, m);
                y[i] = mat_vec(set.matrix(0), psi, b);
                x[i] = mat_vec(pre.C[0], psi, b);
                for (int k = 0; k < K; ++k)
                    x[i][static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(
                        b.add(x[i][static_cast<std::size_t>(k)], pre.e[0][static_cast<std::size_t>(k)]));
            }
            for (std::uint64_t i = 0; i < cap; ++i)
                for (std::uint64_t l = i + 1; l < cap; ++l) {
                    int split = -1;
                    for (int k = 0; k < m; ++k)
                        if (y[i][static_cast<std::size_t>(k)] != y[l][static_cast<std::size_t>(k)]) {
                            split = k;
                            break;
                        }
                    if (split < 0) continue;
                    for (int h = 0; h < split; ++h)
                        CHECK(x[i][static_cast<std::size_t>(h)] == x[l][static_cast<std::size_t>(h)]); // iia
                    CHECK(x[i][static_cast<std::size_t>(split)] != x[l][static_cast<std::size_t>(split)]); // iib
                }
        }
    }
}

TEST_CASE("scrambled coordinates stay uniform on average") {
    const GeneratorMatrixSet set = faure_matrices(Base(2), 2, 4);
    const int reps = 200;
    double mean = 0.0;
    for (int rep = 0; rep < reps; ++rep) {
        const ScrambleSpec spec =
            random_scramble_spec(set, ScrambleMode::owen, 10, RngStream(400 + static_cast<std::uint64_t>(rep)));
        const PointBatch pts = generate(set, spec, 16, PointOrder::gray);
        double batch_mean = 0.0;
        for (std::size_t i = 0; i < pts.n; ++i) batch_mean += pts.at(i, 0);
        mean += batch_mean / double(pts.n);
    }
    mean /= reps;
    CHECK(std::abs(mean - 0.5) < 3.0 * std::sqrt(1.0 / 12.0 / reps));
}

TEST_CASE("gray updates touch order s*K digits per point") {
    const GeneratorMatrixSet set = faure_matrices(Base(2), 2, 8);
    const int K = 18;
    const ScrambleSpec spec = random_scramble_spec(set, ScrambleMode::owen, K, RngStream(1));
    const PointBatch pts = generate(set, spec, 256, PointOrder::gray);
    const std::uint64_t per_point = 2ull * static_cast<std::uint64_t>(set.s) * K;
    CHECK(pts.digit_ops <= per_point * pts.n);
    CHECK(pts.digit_ops >= static_cast<std::uint64_t>(set.s) * K * (pts.n - 1));

    // doubling K doubles the work, independent of n
    const ScrambleSpec spec2 = random_scramble_spec(set, ScrambleMode::owen, 2 * K, RngStream(1));
    const PointBatch pts2 = generate(set, spec2, 256, PointOrder::gray);
    CHECK(pts2.digit_ops == 2 * pts.digit_ops);
}

TEST_CASE("rank-1 lattice") {
    const PointBatch four = rank1_lattice({1}, 4, {});
    CHECK(four.at(0, 0) == 0.0);
    CHECK(four.at(1, 0) == 0.25);
    CHECK(four.at(2, 0) == 0.5);
    CHECK(four.at(3, 0) == 0.75);

    // pairwise differences mod 1 are shift invariant
    const PointBatch plain = rank1_lattice({1, 17797}, 32, {});
    const PointBatch shifted = rank1_lattice({1, 17797}, 32, {0.3, 0.7});
    for (std::size_t i = 1; i < plain.n; ++i)
        for (int j = 0; j < plain.s; ++j) {
            double d0 = plain.at(i, j) - plain.at(0, j);
            double d1 = shifted.at(i, j) - shifted.at(0, j);
            d0 -= std::floor(d0);
            d1 -= std::floor(d1);
            CHECK(d0 == doctest::Approx(d1).epsilon(1e-12));
        }
}

TEST_CASE("extensible lattice embeds the rank-1 lattice at powers of b") {
    const PointBatch ext = extensible_lattice({1, 5}, Base(2), 8, {});
    const PointBatch fixed = rank1_lattice({1, 5}, 8, {});
    CHECK(sorted_rows(ext) == sorted_rows(fixed));

    const PointBatch vdc = extensible_lattice({1}, Base(2), 4, {});
    CHECK(sorted_rows(vdc) ==
          std::vector<std::vector<double>>{{0.0}, {0.25}, {0.5}, {0.75}});

    const PointBatch odd = extensible_lattice({1, 3}, Base(2), 6, {});
    for (double v : odd.pts) CHECK((v >= 0.0 && v < 1.0));
}

TEST_CASE("latin hypercube stratifies every coordinate") {
    const PointBatch one = lhs_sample(4, 1, RngStream(2));
    std::vector<int> strata;
    for (std::size_t i = 0; i < 4; ++i) strata.push_back(static_cast<int>(one.at(i, 0) * 4));
    std::sort(strata.begin(), strata.end());
    CHECK(strata == std::vector<int>{0, 1, 2, 3});

    const PointBatch two = lhs_sample(16, 2, RngStream(3));
    for (int j = 0; j < 2; ++j) {
        std::vector<int> s16;
        for (std::size_t i = 0; i < 16; ++i) s16.push_back(static_cast<int>(two.at(i, j) * 16));
        std::sort(s16.begin(), s16.end());
        for (int k = 0; k < 16; ++k) CHECK(s16[static_cast<std::size_t>(k)] == k);
    }
}

TEST_CASE("mc sampling is reproducible by seed") {
    const PointBatch a = mc_sample(32, 3, RngStream(77));
    const PointBatch b = mc_sample(32, 3, RngStream(77));
    const PointBatch c = mc_sample(32, 3, RngStream(78));
    CHECK(a.pts == b.pts);
    CHECK(a.pts != c.pts);
}
