#pragma once

#include <string>
#include <vector>

#include "qmc/engine.hpp"
#include "qmc/genmat.hpp"

namespace qmc {

/// Exact quality parameter t of the digital net spanned by the matrices of
/// `dims` (0-based indices into the set), truncated to the leading m rows
/// and columns: the smallest t such that for every composition
/// (d_1,...,d_k) of m-t the row prefixes {rows 1..d_j of C_j, first m
/// columns} have full rank over Z_b.
/// t_floor skips the search below a known lower bound (t is non-decreasing
/// when dimensions are appended, so grids can reuse the previous column).
int exact_t(const GeneratorMatrixSet& set, int m, const std::vector<int>& dims, int t_floor = 0);
int exact_t(const GeneratorMatrixSet& set, int m); // all dimensions

/// Brute-force t from the net definition: the smallest t such that every
/// b-ary box of volume b^(t-m) holds exactly b^t of the points. Requires
/// n == b^m.
int geometric_oracle_t(const PointBatch& batch, const Base& b, int m);

/// Cumulative quality grid: T(m,s) = max over m' <= m, s' <= s of the exact
/// t of the leading s' matrices truncated to m'. Non-decreasing in both
/// directions by construction.
struct TTable {
    int m_max = 0;
    int s_max = 0;
    std::vector<int> values; // row-major s_max x m_max
    std::string set_name;

    int at(int m, int s) const { return values[static_cast<std::size_t>(s - 1) * m_max + (m - 1)]; }
    int& at(int m, int s) { return values[static_cast<std::size_t>(s - 1) * m_max + (m - 1)]; }
};

TTable t_table(const GeneratorMatrixSet& set, int m_max, int s_max);

/// Side-by-side grid: '*' for equal entries, otherwise the initial of the
/// better (smaller) table, prefixed by the difference when it exceeds one.
std::string compare_tables(const TTable& a, const TTable& b, char a_initial, char b_initial);

struct ProjectionStats {
    int r = 0;
    int m = 0;
    double avg = 0.0;
    int max = 0;
};

/// Average and maximum exact t over all size-r dimension subsets.
/// Throws budget_exceeded when C(s,r) passes `budget`.
ProjectionStats projection_stats(const GeneratorMatrixSet& set, int r, int m,
                                 std::uint64_t budget = 100000);

std::string render_table(const TTable& table);
std::string table_csv(const TTable& table);

} // namespace qmc
