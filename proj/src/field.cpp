#include "qmc/field.hpp"

#include <cmath>

namespace qmc {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint32_t d = 3; d * std::uint64_t(d) <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::uint32_t Base::inv(std::uint32_t c) const {
    c %= b_;
    if (c == 0) fail(errc::division_by_zero, "multiplicative inverse of 0 in Z_" + std::to_string(b_));
    // Fermat: c^(b-2) mod b.
    std::uint32_t result = 1, base = c, e = b_ - 2;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

int Base::max_digits() const {
    return static_cast<int>(53.0 / std::log2(double(b_)));
}

DigitVector digits_of_index(std::uint64_t i, const Base& b, int len) {
    if (len < 1) fail(errc::invalid_argument, "digit length must be positive");
    DigitVector d(static_cast<std::size_t>(len), 0);
    const std::uint64_t bb = b.value();
    for (int k = 0; k < len; ++k) {
        d[k] = static_cast<std::uint8_t>(i % bb);
        i /= bb;
    }
    if (i != 0)
        fail(errc::index_overflow, "index does not fit in " + std::to_string(len) + " base-" +
                                       std::to_string(b.value()) + " digits");
    return d;
}

std::uint64_t index_of_digits(const DigitVector& digits, const Base& b) {
    std::uint64_t i = 0;
    const std::uint64_t bb = b.value();
    for (std::size_t k = digits.size(); k-- > 0;) i = i * bb + digits[k];
    return i;
}

double radical_inverse(std::uint64_t i, const Base& b) {
    const double inv_b = 1.0 / b.value();
    double v = 0.0, scale = inv_b;
    while (i != 0) {
        v += double(i % b.value()) * scale;
        i /= b.value();
        scale *= inv_b;
    }
    return v;
}

int gray_step_position(std::uint64_t i_next, const Base& b) {
    if (i_next == 0) fail(errc::invalid_argument, "gray step needs a positive index");
    int k = 1;
    while (i_next % b.value() == 0) {
        i_next /= b.value();
        ++k;
    }
    return k;
}

DigitVector gray_digits(std::uint64_t i, const Base& b, int len) {
    DigitVector g(static_cast<std::size_t>(len), 0);
    const std::uint64_t bb = b.value();
    std::uint32_t lo = static_cast<std::uint32_t>(i % bb);
    for (int k = 0; k < len; ++k) {
        i /= bb;
        const std::uint32_t hi = static_cast<std::uint32_t>(i % bb);
        g[k] = static_cast<std::uint8_t>(b.sub(hi, lo));
        lo = hi;
    }
    return g;
}

DigitMatrix mat_mul(const DigitMatrix& x, const DigitMatrix& y, const Base& b) {
    if (x.cols != y.rows) fail(errc::shape_mismatch, "matrix product shape mismatch");
    DigitMatrix z(x.rows, y.cols);
    for (int r = 0; r < x.rows; ++r)
        for (int k = 0; k < x.cols; ++k) {
            const std::uint32_t xv = x.at(r, k);
            if (xv == 0) continue;
            for (int c = 0; c < y.cols; ++c)
                z.at(r, c) = static_cast<std::uint8_t>(b.add(z.at(r, c), b.mul(xv, y.at(k, c))));
        }
    return z;
}

DigitVector mat_vec(const DigitMatrix& x, const DigitVector& v, const Base& b) {
    if (static_cast<int>(v.size()) > x.cols) fail(errc::shape_mismatch, "vector longer than matrix columns");
    DigitVector out(static_cast<std::size_t>(x.rows), 0);
    for (int c = 0; c < static_cast<int>(v.size()); ++c) {
        const std::uint32_t vc = v[c];
        if (vc == 0) continue;
        for (int r = 0; r < x.rows; ++r)
            out[r] = static_cast<std::uint8_t>(b.add(out[r], b.mul(x.at(r, c), vc)));
    }
    return out;
}

DigitMatrix transpose(const DigitMatrix& x) {
    DigitMatrix z(x.cols, x.rows);
    for (int r = 0; r < x.rows; ++r)
        for (int c = 0; c < x.cols; ++c) z.at(c, r) = x.at(r, c);
    return z;
}

double digits_to_unit(const DigitVector& d, const Base& b) {
    // Horner from the last digit keeps rounding identical for equal digit vectors.
    const double inv_b = 1.0 / b.value();
    double v = 0.0;
    for (std::size_t k = d.size(); k-- > 0;) v = (v + d[k]) * inv_b;
    return v;
}

} // namespace qmc
