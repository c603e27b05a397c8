#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "qmc/kernels.hpp"
#include "qmc/rng.hpp"

using namespace qmc;

namespace {

struct ColumnSet {
    std::vector<std::vector<double>> y, b1, b2;
    std::vector<const double*> yp, b1p, b2p;
    kernels::Columns cols;
};

ColumnSet random_columns(int s, std::size_t n, std::uint64_t seed) {
    ColumnSet c;
    RngStream rng(seed);
    c.y.assign(s, std::vector<double>(n));
    c.b1.assign(s, std::vector<double>(n));
    c.b2.assign(s, std::vector<double>(n));
    for (int r = 0; r < s; ++r)
        for (std::size_t i = 0; i < n; ++i) {
            const double v = rng.next_double();
            c.y[r][i] = v;
            c.b1[r][i] = v - 0.5;
            c.b2[r][i] = (v - 1.0) * v + 1.0 / 6.0;
        }
    for (int r = 0; r < s; ++r) {
        c.yp.push_back(c.y[r].data());
        c.b1p.push_back(c.b1[r].data());
        c.b2p.push_back(c.b2[r].data());
    }
    c.cols = kernels::Columns{c.yp.data(), c.b1p.data(), c.b2p.data(), s, n};
    return c;
}

} // namespace

TEST_CASE("scalar and avx2 kernels agree") {
    const kernels::Backend* simd = kernels::avx2_backend();
    if (!simd) {
        MESSAGE("avx2 not available on this machine; dispatch falls back to scalar");
        CHECK(std::string(kernels::active_backend().name) == "scalar");
        return;
    }
    // sizes off the lane width exercise the tail path
    for (std::size_t n : {1u, 3u, 4u, 7u, 64u, 101u}) {
        for (int s : {1, 2, 5}) {
            const ColumnSet c = random_columns(s, n, 1000 + n + static_cast<std::size_t>(s));
            for (const kernels::PairCoeffs coeffs :
                 {kernels::PairCoeffs{1, 1.0, 0.0, 0.5}, kernels::PairCoeffs{2, 1.0, 0.25, -1.0 / 24.0},
                  kernels::PairCoeffs{2, 4.0, 4.0, -2.0 / 3.0}}) {
                const double a = kernels::scalar_backend().pair_sum(c.cols, coeffs);
                const double b = simd->pair_sum(c.cols, coeffs);
                CHECK(b == doctest::Approx(a).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("backend forcing") {
    CHECK_NOTHROW(kernels::set_backend("scalar"));
    CHECK(std::string(kernels::active_backend().name) == "scalar");
    CHECK_NOTHROW(kernels::set_backend("auto"));
    CHECK_THROWS(kernels::set_backend("sse9"));
    if (kernels::avx2_backend()) {
        kernels::set_backend("avx2");
        CHECK(std::string(kernels::active_backend().name) == "avx2");
        kernels::set_backend("auto");
    }
}
