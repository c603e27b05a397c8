#include "qmc/scramble.hpp"

#include <algorithm>

namespace qmc {

const char* to_string(ScrambleMode mode) {
    switch (mode) {
        case ScrambleMode::none: return "none";
        case ScrambleMode::owen: return "owen";
        case ScrambleMode::tumble: return "tumble";
        case ScrambleMode::both: return "both";
        case ScrambleMode::digital_shift: return "shift";
    }
    return "?";
}

ScrambleMode scramble_mode_from_string(const std::string& name) {
    if (name == "none") return ScrambleMode::none;
    if (name == "owen") return ScrambleMode::owen;
    if (name == "tumble") return ScrambleMode::tumble;
    if (name == "both") return ScrambleMode::both;
    if (name == "shift" || name == "digital-shift") return ScrambleMode::digital_shift;
    fail(errc::invalid_argument, "unknown scramble mode '" + name + "'");
}

ScrambleSpec identity_spec(const GeneratorMatrixSet& set, int K) {
    K = std::min(K, set.base.max_digits());
    ScrambleSpec spec;
    spec.mode = ScrambleMode::none;
    spec.K = K;
    spec.Lj.assign(static_cast<std::size_t>(set.s), DigitMatrix::identity(K));
    spec.ej.assign(static_cast<std::size_t>(set.s), DigitVector(static_cast<std::size_t>(K), 0));
    spec.L = DigitMatrix::identity(set.m_max);
    spec.e.assign(static_cast<std::size_t>(set.m_max), 0);
    return spec;
}

namespace {

DigitMatrix random_lower_triangular(int n, const Base& b, RngStream rng) {
    DigitMatrix m(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < r; ++c) m.at(r, c) = static_cast<std::uint8_t>(rng.next_below(b.value()));
        m.at(r, r) = static_cast<std::uint8_t>(1 + rng.next_below(b.value() - 1));
    }
    return m;
}

DigitVector random_digits(int n, const Base& b, RngStream rng) {
    DigitVector v(static_cast<std::size_t>(n));
    for (auto& d : v) d = static_cast<std::uint8_t>(rng.next_below(b.value()));
    return v;
}

} // namespace

ScrambleSpec random_scramble_spec(const GeneratorMatrixSet& set, ScrambleMode mode, int K,
                                  const RngStream& rng) {
    if (K < 1) fail(errc::invalid_argument, "scramble needs K >= 1");
    ScrambleSpec spec = identity_spec(set, K);
    spec.mode = mode;
    spec.seed = rng.seed();
    const Base& b = set.base;

    const bool scramble = mode == ScrambleMode::owen || mode == ScrambleMode::both;
    const bool shift = scramble || mode == ScrambleMode::digital_shift;
    const bool tumble = mode == ScrambleMode::tumble || mode == ScrambleMode::both;

    for (int j = 0; j < set.s; ++j) {
        const RngStream dim = rng.substream("dim").substream(static_cast<std::uint64_t>(j));
        if (scramble) spec.Lj[j] = random_lower_triangular(spec.K, b, dim.substream("L"));
        if (shift) spec.ej[j] = random_digits(spec.K, b, dim.substream("e"));
    }
    if (tumble) {
        spec.L = random_lower_triangular(set.m_max, b, rng.substream("tumble-L"));
        spec.e = random_digits(set.m_max, b, rng.substream("tumble-e"));
    }
    return spec;
}

PremultipliedSet premultiply(const GeneratorMatrixSet& set, const ScrambleSpec& spec) {
    const Base& b = set.base;
    const int K = spec.K, m = set.m_max;
    if (spec.Lj.size() != static_cast<std::size_t>(set.s) ||
        spec.ej.size() != static_cast<std::size_t>(set.s))
        fail(errc::shape_mismatch, "spec dimension count does not match the generator set");
    if (spec.L.rows != m || spec.L.cols != m || static_cast<int>(spec.e.size()) != m)
        fail(errc::shape_mismatch, "tumble transform must be m_max x m_max");

    const DigitMatrix Lt = transpose(spec.L);
    PremultipliedSet out{b, set.s, m, K, {}, {}};
    out.C.reserve(static_cast<std::size_t>(set.s));
    out.e.reserve(static_cast<std::size_t>(set.s));
    for (int j = 0; j < set.s; ++j) {
        if (spec.Lj[j].rows != K || spec.Lj[j].cols != K || static_cast<int>(spec.ej[j].size()) != K)
            fail(errc::shape_mismatch, "scramble transform must be K x K");
        // Extend C_j to K rows (zero padding below row m_max) before the left multiply.
        DigitMatrix cj(K, m);
        for (int r = 0; r < std::min(K, m); ++r)
            for (int c = 0; c < m; ++c) cj.at(r, c) = set.matrix(j).at(r, c);

        const DigitMatrix lc = mat_mul(spec.Lj[j], cj, b);
        out.C.push_back(mat_mul(lc, Lt, b));

        DigitVector ej = mat_vec(lc, spec.e, b);
        for (int k = 0; k < K; ++k) ej[k] = static_cast<std::uint8_t>(b.add(ej[k], spec.ej[j][k]));
        out.e.push_back(std::move(ej));
    }
    return out;
}

} // namespace qmc
