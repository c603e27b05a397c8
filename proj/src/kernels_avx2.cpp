// AVX2+FMA variant of the pair-sum kernel. This translation unit is compiled
// with -mavx2 -mfma; it must only be reached through the runtime dispatch.

#include "qmc/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace qmc::kernels {

namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double pair_sum_avx2(const Columns& cols, const PairCoeffs& c) {
    const std::size_t n = cols.n;
    const int s = cols.s;
    const std::size_t n4 = n - n % 4;

    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d uu = _mm256_set1_pd(c.u);
    const __m256d vv = _mm256_set1_pd(c.v);
    const __m256d tt = _mm256_set1_pd(c.t);
    const __m256d sixth = _mm256_set1_pd(1.0 / 6.0);
    const __m256d b4c = _mm256_set1_pd(-1.0 / 30.0);

    double total = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        __m256d acc = _mm256_setzero_pd();
        if (c.alpha == 1) {
            for (std::size_t j = 0; j < n4; j += 4) {
                __m256d f = one;
                for (int r = 0; r < s; ++r) {
                    const __m256d yi = _mm256_set1_pd(cols.y[r][i]);
                    const __m256d yj = _mm256_loadu_pd(cols.y[r] + j);
                    __m256d d = _mm256_sub_pd(yi, yj);
                    const __m256d wrap = _mm256_and_pd(_mm256_cmp_pd(d, _mm256_setzero_pd(), _CMP_LT_OQ), one);
                    d = _mm256_add_pd(d, wrap);
                    const __m256d e = _mm256_mul_pd(d, _mm256_sub_pd(d, one));
                    const __m256d ub1i = _mm256_mul_pd(uu, _mm256_set1_pd(cols.b1[r][i]));
                    __m256d g = _mm256_fmadd_pd(ub1i, _mm256_loadu_pd(cols.b1[r] + j), one);
                    g = _mm256_fmadd_pd(tt, _mm256_add_pd(e, sixth), g);
                    f = _mm256_mul_pd(f, g);
                }
                acc = _mm256_add_pd(acc, f);
            }
        } else {
            for (std::size_t j = 0; j < n4; j += 4) {
                __m256d f = one;
                for (int r = 0; r < s; ++r) {
                    const __m256d yi = _mm256_set1_pd(cols.y[r][i]);
                    const __m256d yj = _mm256_loadu_pd(cols.y[r] + j);
                    __m256d d = _mm256_sub_pd(yi, yj);
                    const __m256d wrap = _mm256_and_pd(_mm256_cmp_pd(d, _mm256_setzero_pd(), _CMP_LT_OQ), one);
                    d = _mm256_add_pd(d, wrap);
                    const __m256d e = _mm256_mul_pd(d, _mm256_sub_pd(d, one));
                    const __m256d ub1i = _mm256_mul_pd(uu, _mm256_set1_pd(cols.b1[r][i]));
                    const __m256d vb2i = _mm256_mul_pd(vv, _mm256_set1_pd(cols.b2[r][i]));
                    __m256d g = _mm256_fmadd_pd(ub1i, _mm256_loadu_pd(cols.b1[r] + j), one);
                    g = _mm256_fmadd_pd(vb2i, _mm256_loadu_pd(cols.b2[r] + j), g);
                    g = _mm256_fmadd_pd(tt, _mm256_fmadd_pd(e, e, b4c), g);
                    f = _mm256_mul_pd(f, g);
                }
                acc = _mm256_add_pd(acc, f);
            }
        }
        double row = hsum(acc);
        // Tail lanes, scalar.
        for (std::size_t j = n4; j < n; ++j) {
            double f = 1.0;
            for (int r = 0; r < s; ++r) {
                double d = cols.y[r][i] - cols.y[r][j];
                if (d < 0.0) d += 1.0;
                const double e = d * (d - 1.0);
                if (c.alpha == 1)
                    f *= 1.0 + c.u * cols.b1[r][i] * cols.b1[r][j] + c.t * (e + 1.0 / 6.0);
                else
                    f *= 1.0 + c.u * cols.b1[r][i] * cols.b1[r][j] +
                         c.v * cols.b2[r][i] * cols.b2[r][j] + c.t * (e * e - 1.0 / 30.0);
            }
            row += f;
        }
        const double t = total + row;
        comp += (total >= row) ? (total - t) + row : (row - t) + total;
        total = t;
    }
    return total + comp;
}

} // namespace

const Backend* avx2_backend() {
    if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) return nullptr;
    static const Backend backend{"avx2", &pair_sum_avx2};
    return &backend;
}

} // namespace qmc::kernels

#else

namespace qmc::kernels {
const Backend* avx2_backend() { return nullptr; }
} // namespace qmc::kernels

#endif
