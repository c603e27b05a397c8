#include "qmc/tvalue.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qmc {

namespace {

// Incremental row reduction over Z_b with backtracking. Rows are reduced
// against the basis as they arrive; a row that reduces to zero is dependent.
class EchelonBasis {
  public:
    EchelonBasis(const Base& b, int width) : b_(b), width_(width) {}

    bool add(std::vector<std::uint8_t> row) {
        for (const auto& [pivot, basis_row] : rows_) {
            const std::uint32_t coeff = row[pivot];
            if (coeff == 0) continue;
            for (int c = pivot; c < width_; ++c)
                row[c] = static_cast<std::uint8_t>(b_.sub(row[c], b_.mul(coeff, basis_row[c])));
        }
        int pivot = -1;
        for (int c = 0; c < width_; ++c)
            if (row[c] != 0) {
                pivot = c;
                break;
            }
        if (pivot < 0) return false;
        const std::uint32_t inv = b_.inv(row[pivot]);
        for (int c = pivot; c < width_; ++c) row[c] = static_cast<std::uint8_t>(b_.mul(row[c], inv));
        rows_.emplace_back(pivot, std::move(row));
        return true;
    }

    std::size_t size() const { return rows_.size(); }
    void truncate(std::size_t size) { rows_.resize(size); }

  private:
    Base b_;
    int width_;
    std::vector<std::pair<int, std::vector<std::uint8_t>>> rows_;
};

// All rows of all selected matrices, truncated to the first m columns.
// rows[j][k] is row k of matrix dims[j].
std::vector<std::vector<std::vector<std::uint8_t>>> collect_rows(const GeneratorMatrixSet& set,
                                                                 int m,
                                                                 const std::vector<int>& dims) {
    std::vector<std::vector<std::vector<std::uint8_t>>> rows(dims.size());
    for (std::size_t j = 0; j < dims.size(); ++j) {
        rows[j].resize(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k) {
            rows[j][k].resize(static_cast<std::size_t>(m));
            for (int c = 0; c < m; ++c) rows[j][k][c] = set.matrix(dims[j]).at(k, c);
        }
    }
    return rows;
}

// DFS over compositions of `remaining` across dimensions j.. with shared
// elimination prefixes; returns false as soon as one composition is
// dependent.
bool compositions_independent(const std::vector<std::vector<std::vector<std::uint8_t>>>& rows,
                              std::size_t j, int remaining, EchelonBasis& basis) {
    if (j + 1 == rows.size()) {
        const std::size_t mark = basis.size();
        for (int k = 0; k < remaining; ++k)
            if (!basis.add(rows[j][static_cast<std::size_t>(k)])) {
                basis.truncate(mark);
                return false;
            }
        basis.truncate(mark);
        return true;
    }
    const std::size_t mark = basis.size();
    for (int d = 0;; ++d) {
        if (!compositions_independent(rows, j + 1, remaining - d, basis)) {
            basis.truncate(mark);
            return false;
        }
        if (d == remaining) break;
        if (!basis.add(rows[j][static_cast<std::size_t>(d)])) {
            // Rows 1..d+1 of this dimension are already dependent; any
            // composition assigning d_j > d fails too.
            basis.truncate(mark);
            return false;
        }
    }
    basis.truncate(mark);
    return true;
}

} // namespace

int exact_t(const GeneratorMatrixSet& set, int m, const std::vector<int>& dims, int t_floor) {
    if (dims.empty()) fail(errc::invalid_argument, "exact_t needs a non-empty dimension subset");
    if (m < 1 || m > set.m_max) fail(errc::invalid_argument, "m outside [1, m_max]");
    for (int j : dims)
        if (j < 0 || j >= set.s) fail(errc::invalid_argument, "dimension index out of range");

    const auto rows = collect_rows(set, m, dims);
    for (int t = std::max(t_floor, 0); t < m; ++t) {
        EchelonBasis basis(set.base, m);
        if (compositions_independent(rows, 0, m - t, basis)) return t;
    }
    return m;
}

int exact_t(const GeneratorMatrixSet& set, int m) {
    std::vector<int> dims(static_cast<std::size_t>(set.s));
    std::iota(dims.begin(), dims.end(), 0);
    return exact_t(set, m, dims);
}

namespace {

std::uint64_t pow_u64(std::uint64_t b, int e) {
    std::uint64_t v = 1;
    while (e-- > 0) v *= b;
    return v;
}

// Checks one box shape (k_1..k_s), sum q: every cell must hold the same
// count b^t of points.
bool shape_balanced(const PointBatch& batch, std::uint32_t b, const std::vector<int>& shape,
                    std::uint64_t expected) {
    const std::uint64_t cells = pow_u64(b, std::accumulate(shape.begin(), shape.end(), 0));
    std::vector<std::uint64_t> count(cells, 0);
    for (std::size_t i = 0; i < batch.n; ++i) {
        std::uint64_t idx = 0;
        for (int r = 0; r < batch.s; ++r) {
            const std::uint64_t res = pow_u64(b, shape[static_cast<std::size_t>(r)]);
            // Tiny nudge so coordinates that sit exactly on a cell boundary
            // but rounded down a hair still land in their true cell.
            auto cell = static_cast<std::uint64_t>(batch.at(i, r) * double(res) + 1e-9);
            if (cell >= res) cell = res - 1;
            idx = idx * res + cell;
        }
        if (++count[idx] > expected) return false;
    }
    return true; // all cells at most `expected` and totals match => exactly equal
}

bool all_shapes_balanced(const PointBatch& batch, std::uint32_t b, std::uint64_t expected,
                         std::vector<int>& shape, int r, int remaining) {
    if (r + 1 == batch.s) {
        shape[static_cast<std::size_t>(r)] = remaining;
        return shape_balanced(batch, b, shape, expected);
    }
    for (int k = 0; k <= remaining; ++k) {
        shape[static_cast<std::size_t>(r)] = k;
        if (!all_shapes_balanced(batch, b, expected, shape, r + 1, remaining - k)) return false;
    }
    return true;
}

} // namespace

int geometric_oracle_t(const PointBatch& batch, const Base& b, int m) {
    if (batch.n != pow_u64(b.value(), m))
        fail(errc::not_power_of_base,
             "need exactly b^m points, got " + std::to_string(batch.n));
    std::vector<int> shape(static_cast<std::size_t>(batch.s), 0);
    for (int t = 0; t < m; ++t) {
        const std::uint64_t expected = pow_u64(b.value(), t);
        if (all_shapes_balanced(batch, b.value(), expected, shape, 0, m - t)) return t;
    }
    return m;
}

TTable t_table(const GeneratorMatrixSet& set, int m_max, int s_max) {
    if (m_max < 1 || m_max > set.m_max || s_max < 1 || s_max > set.s)
        fail(errc::invalid_argument, "table size outside the generator set bounds");
    TTable table;
    table.m_max = m_max;
    table.s_max = s_max;
    table.set_name = set.name;
    table.values.assign(static_cast<std::size_t>(m_max) * s_max, 0);

    std::vector<int> dims;
    for (int s = 1; s <= s_max; ++s) {
        dims.push_back(s - 1);
        for (int m = 1; m <= m_max; ++m) {
            int v = exact_t(set, m, dims);
            if (m > 1) v = std::max(v, table.at(m - 1, s));
            if (s > 1) v = std::max(v, table.at(m, s - 1));
            table.at(m, s) = v;
        }
    }
    return table;
}

std::string compare_tables(const TTable& a, const TTable& b, char a_initial, char b_initial) {
    if (a.m_max != b.m_max || a.s_max != b.s_max)
        fail(errc::dimension_mismatch, "tables have different shapes");
    std::ostringstream out;
    out << "s\\m";
    for (int m = 1; m <= a.m_max; ++m) out << '\t' << m;
    out << '\n';
    for (int s = 1; s <= a.s_max; ++s) {
        out << s;
        for (int m = 1; m <= a.m_max; ++m) {
            out << '\t';
            const int av = a.at(m, s), bv = b.at(m, s);
            if (av == bv) {
                out << '*';
            } else {
                const int diff = std::abs(av - bv);
                if (diff > 1) out << diff;
                out << (av < bv ? a_initial : b_initial);
            }
        }
        out << '\n';
    }
    return out.str();
}

ProjectionStats projection_stats(const GeneratorMatrixSet& set, int r, int m, std::uint64_t budget) {
    if (r < 1 || r > set.s) fail(errc::invalid_argument, "projection order outside [1, s]");
    // C(s, r) with overflow guard against the budget.
    std::uint64_t count = 1;
    for (int i = 1; i <= r; ++i) {
        count = count * static_cast<std::uint64_t>(set.s - r + i) / static_cast<std::uint64_t>(i);
        if (count > budget)
            fail(errc::budget_exceeded, "C(s,r) exceeds the subset budget of " + std::to_string(budget) +
                                            "; sample instead of enumerating");
    }

    ProjectionStats stats;
    stats.r = r;
    stats.m = m;
    long long sum = 0;
    std::vector<int> dims(static_cast<std::size_t>(r));
    std::iota(dims.begin(), dims.end(), 0);
    while (true) {
        const int t = exact_t(set, m, dims);
        sum += t;
        stats.max = std::max(stats.max, t);
        // next combination
        int i = r - 1;
        while (i >= 0 && dims[static_cast<std::size_t>(i)] == set.s - r + i) --i;
        if (i < 0) break;
        ++dims[static_cast<std::size_t>(i)];
        for (int k = i + 1; k < r; ++k)
            dims[static_cast<std::size_t>(k)] = dims[static_cast<std::size_t>(k - 1)] + 1;
    }
    stats.avg = double(sum) / double(count);
    return stats;
}

std::string render_table(const TTable& table) {
    std::ostringstream out;
    out << "T(m,s) for " << (table.set_name.empty() ? "generator set" : table.set_name) << '\n';
    out << "  s\\m";
    for (int m = 1; m <= table.m_max; ++m) out << ' ' << (m < 10 ? " " : "") << m;
    out << '\n';
    for (int s = 1; s <= table.s_max; ++s) {
        out << (s < 10 ? "   " : "  ") << s << ' ';
        for (int m = 1; m <= table.m_max; ++m) {
            const int v = table.at(m, s);
            out << ' ' << (v < 10 ? " " : "") << v;
        }
        out << '\n';
    }
    return out.str();
}

std::string table_csv(const TTable& table) {
    std::ostringstream out;
    out << "s";
    for (int m = 1; m <= table.m_max; ++m) out << ",m" << m;
    out << '\n';
    for (int s = 1; s <= table.s_max; ++s) {
        out << s;
        for (int m = 1; m <= table.m_max; ++m) out << ',' << table.at(m, s);
        out << '\n';
    }
    return out.str();
}

} // namespace qmc
