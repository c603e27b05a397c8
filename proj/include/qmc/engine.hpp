#pragma once

#include <string>
#include <vector>

#include "qmc/scramble.hpp"

namespace qmc {

enum class PointOrder { natural, gray };

const char* to_string(PointOrder order);

/// N points in [0,1)^s plus generation metadata.
struct PointBatch {
    std::size_t n = 0;
    int s = 0;
    std::vector<double> pts; // row-major n x s
    std::string family;
    PointOrder order = PointOrder::natural;
    std::uint32_t b = 0;
    std::uint64_t seed = 0;
    std::uint64_t start_index = 0;
    /// Digit-level operation count of the generation loop (gray updates and
    /// value reconstruction); used to check the O(s K) per-point bound.
    std::uint64_t digit_ops = 0;

    double at(std::size_t i, int j) const { return pts[i * static_cast<std::size_t>(s) + j]; }
    double& at(std::size_t i, int j) { return pts[i * static_cast<std::size_t>(s) + j]; }
    const double* row(std::size_t i) const { return pts.data() + i * static_cast<std::size_t>(s); }
};

/// Digital sequence points x_i with x-digits = C_j' psi(i) + e_j' over K
/// digits, where (C_j', e_j') fold in the randomization of `spec`.
///
/// Natural order enumerates psi(start), psi(start+1), ...; gray order
/// enumerates the gray-code digit vectors instead, updating one generator
/// column per step. Both orders emit the same points up to reordering on
/// aligned b^m index blocks (the gray block lands on the aligned block
/// whose index is the gray code of the block number).
///
/// Requires start_index + n <= b^m_max.
PointBatch generate(const GeneratorMatrixSet& set, const ScrambleSpec& spec, std::size_t n,
                    PointOrder order = PointOrder::gray, std::uint64_t start_index = 0);

/// Rank-1 lattice {i h / n + shift}, i = 0..n-1.
PointBatch rank1_lattice(const std::vector<std::uint64_t>& h, std::size_t n,
                         const std::vector<double>& shift);

/// Extensible lattice {Q_b(i) h + shift}; the first b^m points form the
/// rank-1 lattice with n = b^m as a set.
PointBatch extensible_lattice(const std::vector<std::uint64_t>& h, const Base& b, std::size_t n,
                              const std::vector<double>& shift);

/// Latin hypercube sample: each coordinate has one point per stratum
/// [k/n, (k+1)/n).
PointBatch lhs_sample(std::size_t n, int s, const RngStream& rng);

/// Plain Monte Carlo sample, i.i.d. uniform.
PointBatch mc_sample(std::size_t n, int s, const RngStream& rng);

} // namespace qmc
