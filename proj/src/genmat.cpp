#include "qmc/genmat.hpp"

#include <fstream>
#include <sstream>

namespace qmc {

GeneratorMatrixSet identity_matrices(const Base& b, int s, int m) {
    GeneratorMatrixSet set(b, s, m, "identity");
    for (auto& mat : set.matrices) mat = DigitMatrix::identity(m);
    return set;
}

GeneratorMatrixSet faure_matrices(const Base& b, int s, int m) {
    if (static_cast<int>(b.value()) < s)
        fail(errc::base_too_small, "faure construction needs b >= s (b=" + std::to_string(b.value()) +
                                       ", s=" + std::to_string(s) + ")");
    // binom(l, k) mod b via Pascal's rule.
    std::vector<std::vector<std::uint32_t>> binom(m, std::vector<std::uint32_t>(m, 0));
    for (int l = 0; l < m; ++l) {
        binom[l][0] = 1;
        for (int k = 1; k <= l; ++k)
            binom[l][k] = b.add(binom[l - 1][k - 1], k <= l - 1 ? binom[l - 1][k] : 0);
    }
    GeneratorMatrixSet set(b, s, m, "faure");
    for (int j = 0; j < s; ++j) {
        DigitMatrix& c = set.matrix(j);
        for (int k = 0; k < m; ++k) {
            std::uint32_t q = 1; // (j)^(l-k), starting at l=k
            for (int l = k; l < m; ++l) {
                c.at(k, l) = static_cast<std::uint8_t>(b.mul(binom[l][k], q));
                q = b.mul(q, static_cast<std::uint32_t>(j));
            }
        }
    }
    return set;
}

DigitMatrix decode_triangular(const TriangularEncoding& enc) {
    if (enc.cells.size() != TriangularEncoding::cell_count(enc.m))
        fail(errc::length_mismatch, "triangular encoding needs (m^2-m)/2 cells");
    DigitMatrix mat = DigitMatrix::identity(enc.m);
    std::size_t pos = 0;
    for (int r = 0; r < enc.m; ++r)
        for (int c = r + 1; c < enc.m; ++c) mat.at(r, c) = enc.cells[pos++] ? 1 : 0;
    return mat;
}

TriangularEncoding encode_triangular(const DigitMatrix& mat) {
    if (mat.rows != mat.cols) fail(errc::length_mismatch, "triangular encoding needs a square matrix");
    TriangularEncoding enc(mat.rows);
    std::size_t pos = 0;
    for (int r = 0; r < mat.rows; ++r)
        for (int c = r + 1; c < mat.cols; ++c) enc.cells[pos++] = mat.at(r, c) ? 1 : 0;
    return enc;
}

GeneratorMatrixSet parse_matrices(std::istream& in, const std::string& origin) {
    auto parse_fail = [&](int line, const std::string& what) {
        fail(errc::parse_error, origin + ":" + std::to_string(line) + ": " + what);
    };

    std::string line;
    int lineno = 0;
    long b = 0, s = 0, m = 0;
    // Header: first non-comment, non-blank line.
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream hs(line);
        if (!(hs >> b >> s >> m)) parse_fail(lineno, "expected header 'b s m'");
        break;
    }
    if (b == 0) parse_fail(lineno, "missing header 'b s m'");
    if (b < 2 || !is_prime(static_cast<std::uint32_t>(b))) parse_fail(lineno, "base must be prime");
    if (s < 1 || m < 1) parse_fail(lineno, "need s >= 1 and m >= 1");

    GeneratorMatrixSet set(Base(static_cast<std::uint32_t>(b)), static_cast<int>(s),
                           static_cast<int>(m), origin);
    for (int j = 0; j < s; ++j) {
        for (int r = 0; r < m; ++r) {
            // Skip blanks and comments between rows.
            bool got = false;
            while (std::getline(in, line)) {
                ++lineno;
                if (line.empty() || line[0] == '#') continue;
                got = true;
                break;
            }
            if (!got) parse_fail(lineno, "unexpected end of file inside matrix " + std::to_string(j + 1));
            std::istringstream rs(line);
            for (int c = 0; c < m; ++c) {
                long digit;
                if (!(rs >> digit)) parse_fail(lineno, "expected " + std::to_string(m) + " digits in row");
                if (digit < 0 || digit >= b)
                    fail(errc::invalid_digit, origin + ":" + std::to_string(lineno) + ": digit " +
                                                  std::to_string(digit) + " outside [0," +
                                                  std::to_string(b) + ")");
                set.matrix(j).at(r, c) = static_cast<std::uint8_t>(digit);
            }
            long extra;
            if (rs >> extra) parse_fail(lineno, "row longer than m=" + std::to_string(m));
        }
    }
    return set;
}

void write_matrices(const GeneratorMatrixSet& set, std::ostream& out) {
    out << set.base.value() << ' ' << set.s << ' ' << set.m_max << '\n';
    for (int j = 0; j < set.s; ++j) {
        out << '\n';
        const DigitMatrix& c = set.matrix(j);
        for (int r = 0; r < set.m_max; ++r) {
            for (int col = 0; col < set.m_max; ++col) {
                if (col) out << ' ';
                out << int(c.at(r, col));
            }
            out << '\n';
        }
    }
}

GeneratorMatrixSet load_matrices(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::io_error, "cannot open matrix file " + path);
    return parse_matrices(in, path);
}

void save_matrices(const GeneratorMatrixSet& set, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(errc::io_error, "cannot write matrix file " + path);
    out << "# generator matrices: " << (set.name.empty() ? "unnamed" : set.name) << '\n';
    write_matrices(set, out);
    if (!out) fail(errc::io_error, "write failed for " + path);
}

} // namespace qmc
