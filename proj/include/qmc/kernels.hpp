#pragma once

#include <cstddef>
#include <string>

namespace qmc::kernels {

/// Coefficients of the per-dimension pair factor
///   alpha == 1:  F = 1 + u*B1(x)B1(y) + t*B2({x-y})
///   alpha == 2:  F = 1 + u*B1(x)B1(y) + v*B2(x)B2(y) + t*B4({x-y})
/// where {.} is the fractional part and B_i the Bernoulli polynomials.
/// The two weight conventions used by the discrepancy module (smoothness
/// weights gamma^2k versus a single projection-order weight gamma) only
/// differ in (u, v, t), so one kernel serves both.
struct PairCoeffs {
    int alpha = 2;
    double u = 1.0;
    double v = 0.25;
    double t = -1.0 / 24.0;
};

/// Dimension-major views of the point set: y[r], b1[r], b2[r] each point to
/// n values of coordinate r, its B1 image and its B2 image. b2 may be null
/// for alpha == 1.
struct Columns {
    const double* const* y = nullptr;
    const double* const* b1 = nullptr;
    const double* const* b2 = nullptr;
    int s = 0;
    std::size_t n = 0;
};

/// Full pair sum  sum_i sum_j  prod_r F(y_r[i], y_r[j]).
/// Row sums accumulate into a compensated total, so results are stable in n.
using pair_sum_fn = double (*)(const Columns&, const PairCoeffs&);

struct Backend {
    const char* name;
    pair_sum_fn pair_sum;
};

const Backend& scalar_backend();
/// AVX2+FMA variant; nullptr when the build or the CPU lacks support.
const Backend* avx2_backend();

/// Backend used by the discrepancy module. Defaults to the widest variant
/// the CPU supports.
const Backend& active_backend();

/// Force "scalar", "avx2" or "auto". Throws if the variant is unavailable.
void set_backend(const std::string& name);

} // namespace qmc::kernels
