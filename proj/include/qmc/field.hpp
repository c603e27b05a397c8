#pragma once

#include <cstdint>
#include <vector>

#include "qmc/error.hpp"

namespace qmc {

bool is_prime(std::uint32_t n);

/// Prime base b with arithmetic in the finite field Z_b.
class Base {
  public:
    explicit Base(std::uint32_t b) : b_(b) {
        if (!is_prime(b)) fail(errc::invalid_argument, "base must be prime, got " + std::to_string(b));
    }

    std::uint32_t value() const { return b_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t c) const { return (a + c) % b_; }
    std::uint32_t sub(std::uint32_t a, std::uint32_t c) const { return (a + b_ - c % b_) % b_; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t c) const {
        return static_cast<std::uint32_t>(std::uint64_t(a) * c % b_);
    }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : b_ - a; }
    /// Multiplicative inverse in Z_b; c must be nonzero.
    std::uint32_t inv(std::uint32_t c) const;

    /// Largest digit count K such that b^-K stays within double precision.
    int max_digits() const;

    friend bool operator==(const Base& x, const Base& y) { return x.b_ == y.b_; }

  private:
    std::uint32_t b_;
};

/// Digit expansion, least significant digit first. Entries lie in [0, b).
using DigitVector = std::vector<std::uint8_t>;

/// First `len` base-b digits of i, least significant first.
/// Requires i < b^len.
DigitVector digits_of_index(std::uint64_t i, const Base& b, int len);

/// Reassemble an index from its digit expansion (inverse of digits_of_index).
std::uint64_t index_of_digits(const DigitVector& digits, const Base& b);

/// Radical inverse Q_b(i): the base-b digits of i flipped about the radix point.
double radical_inverse(std::uint64_t i, const Base& b);

/// 1-based position of the single digit that changes when the gray-code
/// counter advances from i_next-1 to i_next (the digit decrements by one
/// in Z_b). Equals one plus the number of trailing zero digits of i_next.
int gray_step_position(std::uint64_t i_next, const Base& b);

/// Gray-code digit vector at index i: digit k is (i_{k+1} - i_k) mod b.
/// Iterating gray_step_position from the all-zero vector reproduces it.
DigitVector gray_digits(std::uint64_t i, const Base& b, int len);

/// Dense row-major matrix with entries in [0, b). Shared by generator
/// matrices, scramble matrices and the rank computations.
struct DigitMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> a; // rows*cols entries

    DigitMatrix() = default;
    DigitMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

    std::uint8_t& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    std::uint8_t at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

    static DigitMatrix identity(int n) {
        DigitMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    friend bool operator==(const DigitMatrix& x, const DigitMatrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

/// Matrix product over Z_b. Shapes must be compatible.
DigitMatrix mat_mul(const DigitMatrix& x, const DigitMatrix& y, const Base& b);

/// Matrix-vector product over Z_b; v.size() may be shorter than x.cols
/// (missing entries are zero).
DigitVector mat_vec(const DigitMatrix& x, const DigitVector& v, const Base& b);

DigitMatrix transpose(const DigitMatrix& x);

/// Value of a digit vector read as 0.d1 d2 d3... in base b.
double digits_to_unit(const DigitVector& d, const Base& b);

} // namespace qmc
