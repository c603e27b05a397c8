#include "qmc/kernels.hpp"

namespace qmc::kernels {

namespace {

double pair_sum_scalar(const Columns& cols, const PairCoeffs& c) {
    const std::size_t n = cols.n;
    const int s = cols.s;
    double total = 0.0, comp = 0.0; // Neumaier across rows
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        if (c.alpha == 1) {
            for (std::size_t j = 0; j < n; ++j) {
                double f = 1.0;
                for (int r = 0; r < s; ++r) {
                    double d = cols.y[r][i] - cols.y[r][j];
                    if (d < 0.0) d += 1.0;
                    const double e = d * (d - 1.0);
                    f *= 1.0 + c.u * cols.b1[r][i] * cols.b1[r][j] + c.t * (e + 1.0 / 6.0);
                }
                row += f;
            }
        } else {
            for (std::size_t j = 0; j < n; ++j) {
                double f = 1.0;
                for (int r = 0; r < s; ++r) {
                    double d = cols.y[r][i] - cols.y[r][j];
                    if (d < 0.0) d += 1.0;
                    const double e = d * (d - 1.0);
                    f *= 1.0 + c.u * cols.b1[r][i] * cols.b1[r][j] +
                         c.v * cols.b2[r][i] * cols.b2[r][j] + c.t * (e * e - 1.0 / 30.0);
                }
                row += f;
            }
        }
        const double t = total + row;
        comp += (total >= row) ? (total - t) + row : (row - t) + total;
        total = t;
    }
    return total + comp;
}

} // namespace

const Backend& scalar_backend() {
    static const Backend backend{"scalar", &pair_sum_scalar};
    return backend;
}

} // namespace qmc::kernels
