#pragma once

#include <string>
#include <vector>

#include "qmc/field.hpp"

namespace qmc {

/// One generator matrix per dimension, all square m_max x m_max over Z_b.
struct GeneratorMatrixSet {
    Base base;
    int s = 1;
    int m_max = 1;
    std::vector<DigitMatrix> matrices; // s entries
    std::string name;

    GeneratorMatrixSet(Base b, int s_, int m, std::string name_ = {})
        : base(b), s(s_), m_max(m), matrices(static_cast<std::size_t>(s_), DigitMatrix(m, m)),
          name(std::move(name_)) {
        if (s_ < 1 || m < 1) fail(errc::invalid_argument, "generator set needs s >= 1 and m_max >= 1");
    }

    const DigitMatrix& matrix(int j) const { return matrices[static_cast<std::size_t>(j)]; } // 0-based
    DigitMatrix& matrix(int j) { return matrices[static_cast<std::size_t>(j)]; }
};

/// Identity generators in every dimension (dimension 1 is the van der
/// Corput sequence; higher dimensions repeat it).
GeneratorMatrixSet identity_matrices(const Base& b, int s, int m);

/// Faure construction for prime b >= s: C_j = P^(j-1) with P the upper
/// triangular Pascal matrix mod b, i.e. C_j[k][l] = binom(l-1,k-1) (j-1)^(l-k).
GeneratorMatrixSet faure_matrices(const Base& b, int s, int m);

/// Bit encoding of a binary unit upper triangular matrix: the strict upper
/// triangle in row-major order, diagonal fixed to one. Length (m^2-m)/2.
struct TriangularEncoding {
    int m = 0;
    std::vector<std::uint8_t> cells;

    TriangularEncoding() = default;
    explicit TriangularEncoding(int m_) : m(m_), cells(cell_count(m_), 0) {}

    static std::size_t cell_count(int m) { return static_cast<std::size_t>(m) * (m - 1) / 2; }
};

DigitMatrix decode_triangular(const TriangularEncoding& enc);
TriangularEncoding encode_triangular(const DigitMatrix& mat);

GeneratorMatrixSet load_matrices(const std::string& path);
void save_matrices(const GeneratorMatrixSet& set, const std::string& path);

/// Parse / serialize the matrix file format: header line "b s m", then for
/// each dimension m rows of m digits, dimensions separated by blank lines,
/// '#' starts a comment line.
GeneratorMatrixSet parse_matrices(std::istream& in, const std::string& origin);
void write_matrices(const GeneratorMatrixSet& set, std::ostream& out);

} // namespace qmc
