#include "qmc/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qmc {

const char* to_string(PointOrder order) { return order == PointOrder::natural ? "natural" : "gray"; }

namespace {

// b^e, saturating at 2^63 which is beyond any supported index range.
std::uint64_t pow_u64(std::uint64_t b, int e) {
    std::uint64_t v = 1;
    for (int i = 0; i < e; ++i) {
        if (v > (std::uint64_t(1) << 63) / b) return std::uint64_t(1) << 63;
        v *= b;
    }
    return v;
}

} // namespace

PointBatch generate(const GeneratorMatrixSet& set, const ScrambleSpec& spec, std::size_t n,
                    PointOrder order, std::uint64_t start_index) {
    const Base& b = set.base;
    const std::uint64_t period = pow_u64(b.value(), set.m_max);
    if (start_index + n > period)
        fail(errc::index_overflow, "start+n = " + std::to_string(start_index + n) + " exceeds b^m_max = " +
                                       std::to_string(period));

    const PremultipliedSet pre = premultiply(set, spec);
    const int K = pre.K, s = set.s;

    PointBatch batch;
    batch.n = n;
    batch.s = s;
    batch.pts.resize(n * static_cast<std::size_t>(s));
    batch.family = set.name;
    batch.order = order;
    batch.b = b.value();
    batch.seed = spec.seed;
    batch.start_index = start_index;
    if (n == 0) return batch;

    std::uint64_t ops = 0;
    if (order == PointOrder::natural) {
        for (std::size_t i = 0; i < n; ++i) {
            const DigitVector psi = digits_of_index(start_index + i, b, set.m_max);
            for (int j = 0; j < s; ++j) {
                DigitVector x = mat_vec(pre.C[j], psi, b);
                for (int k = 0; k < K; ++k) x[k] = static_cast<std::uint8_t>(b.add(x[k], pre.e[j][k]));
                batch.at(i, j) = digits_to_unit(x, b);
                ops += static_cast<std::uint64_t>(K) * (set.m_max + 2);
            }
        }
    } else {
        // State: x-digits of the current point per dimension; one generator
        // column is subtracted per step.
        std::vector<DigitVector> state(static_cast<std::size_t>(s));
        const DigitVector g0 = gray_digits(start_index, b, set.m_max);
        for (int j = 0; j < s; ++j) {
            DigitVector x = mat_vec(pre.C[j], g0, b);
            for (int k = 0; k < K; ++k) x[k] = static_cast<std::uint8_t>(b.add(x[k], pre.e[j][k]));
            batch.at(0, j) = digits_to_unit(x, b);
            state[j] = std::move(x);
        }
        for (std::size_t i = 1; i < n; ++i) {
            const int col = gray_step_position(start_index + i, b) - 1;
            for (int j = 0; j < s; ++j) {
                DigitVector& x = state[j];
                const DigitMatrix& c = pre.C[j];
                for (int k = 0; k < K; ++k)
                    x[k] = static_cast<std::uint8_t>(b.sub(x[k], c.at(k, col)));
                batch.at(i, j) = digits_to_unit(x, b);
                ops += 2u * static_cast<std::uint64_t>(K);
            }
        }
    }
    batch.digit_ops = ops;
    return batch;
}

PointBatch rank1_lattice(const std::vector<std::uint64_t>& h, std::size_t n,
                         const std::vector<double>& shift) {
    if (n < 1) fail(errc::invalid_argument, "lattice needs n >= 1");
    const int s = static_cast<int>(h.size());
    if (!shift.empty() && shift.size() != h.size())
        fail(errc::shape_mismatch, "shift dimension does not match the generating vector");

    PointBatch batch;
    batch.n = n;
    batch.s = s;
    batch.pts.resize(n * static_cast<std::size_t>(s));
    batch.family = "lattice";
    for (int j = 0; j < s; ++j) {
        const std::uint64_t hj = h[static_cast<std::size_t>(j)] % n;
        const double dj = shift.empty() ? 0.0 : shift[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint64_t num =
                static_cast<std::uint64_t>(static_cast<unsigned __int128>(i) * hj % n);
            double v = double(num) / double(n) + dj;
            if (v >= 1.0) v -= 1.0;
            batch.at(i, j) = v;
        }
    }
    return batch;
}

PointBatch extensible_lattice(const std::vector<std::uint64_t>& h, const Base& b, std::size_t n,
                              const std::vector<double>& shift) {
    if (n < 1) fail(errc::invalid_argument, "lattice needs n >= 1");
    const int s = static_cast<int>(h.size());
    if (!shift.empty() && shift.size() != h.size())
        fail(errc::shape_mismatch, "shift dimension does not match the generating vector");

    PointBatch batch;
    batch.n = n;
    batch.s = s;
    batch.pts.resize(n * static_cast<std::size_t>(s));
    batch.family = "ext-lattice";
    batch.b = b.value();
    for (std::size_t i = 0; i < n; ++i) {
        const double q = radical_inverse(i, b);
        for (int j = 0; j < s; ++j) {
            const double dj = shift.empty() ? 0.0 : shift[static_cast<std::size_t>(j)];
            double v = q * double(h[static_cast<std::size_t>(j)]) + dj;
            v -= std::floor(v);
            batch.at(i, j) = v;
        }
    }
    return batch;
}

PointBatch lhs_sample(std::size_t n, int s, const RngStream& rng) {
    if (n < 1 || s < 1) fail(errc::invalid_argument, "sample needs n >= 1 and s >= 1");
    PointBatch batch;
    batch.n = n;
    batch.s = s;
    batch.pts.resize(n * static_cast<std::size_t>(s));
    batch.family = "lhs";
    batch.seed = rng.seed();
    for (int j = 0; j < s; ++j) {
        RngStream dim = rng.substream("lhs-dim").substream(static_cast<std::uint64_t>(j));
        std::vector<std::uint32_t> strata(n);
        std::iota(strata.begin(), strata.end(), 0u);
        for (std::size_t i = n - 1; i > 0; --i)
            std::swap(strata[i], strata[dim.next_below(static_cast<std::uint32_t>(i + 1))]);
        for (std::size_t i = 0; i < n; ++i)
            batch.at(i, j) = (double(strata[i]) + dim.next_double()) / double(n);
    }
    return batch;
}

PointBatch mc_sample(std::size_t n, int s, const RngStream& rng) {
    if (n < 1 || s < 1) fail(errc::invalid_argument, "sample needs n >= 1 and s >= 1");
    PointBatch batch;
    batch.n = n;
    batch.s = s;
    batch.pts.resize(n * static_cast<std::size_t>(s));
    batch.family = "mc";
    batch.seed = rng.seed();
    RngStream stream = rng.substream("mc");
    for (auto& v : batch.pts) v = stream.next_double();
    return batch;
}

} // namespace qmc
