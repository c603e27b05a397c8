#pragma once

#include <vector>

#include "qmc/genmat.hpp"
#include "qmc/rng.hpp"

namespace qmc {

/// Which random transforms apply to a digital sequence.
///
///   none          identity (raw sequence)
///   owen          left multiply by random lower triangular L_j, add shift e_j
///   tumble        index digits mapped through L^T psi(i) + e before the generators
///   both          owen and tumble combined
///   digital_shift shift e_j only (L_j = I)
enum class ScrambleMode { none, owen, tumble, both, digital_shift };

const char* to_string(ScrambleMode mode);
ScrambleMode scramble_mode_from_string(const std::string& name);

/// A concrete randomization instance, reproducible from its seed.
///
/// Shapes: L_j is K x K lower triangular with nonzero diagonal, e_j has K
/// digits, L is m_max x m_max lower triangular nonsingular, e has m_max
/// digits. K counts the output digits generated per coordinate.
struct ScrambleSpec {
    ScrambleMode mode = ScrambleMode::none;
    int K = 0;
    std::uint64_t seed = 0;
    std::vector<DigitMatrix> Lj;
    std::vector<DigitVector> ej;
    DigitMatrix L;
    DigitVector e;
};

/// Identity spec: L_j = I, e_j = 0, L = I, e = 0.
ScrambleSpec identity_spec(const GeneratorMatrixSet& set, int K);

/// Draw a spec for `set`: strict lower entries uniform on Z_b, diagonals
/// uniform on {1,..,b-1}, shifts uniform on Z_b. Each matrix and vector
/// uses its own substream of `rng`, so the spec does not depend on the
/// order the pieces are drawn in. K is clamped to the base's digit budget;
/// K < m_max generates truncated coordinates (legal but warned about at
/// the CLI layer).
ScrambleSpec random_scramble_spec(const GeneratorMatrixSet& set, ScrambleMode mode, int K,
                                  const RngStream& rng);

/// Generators and shifts with the randomization folded in:
/// C_j' = L_j C_j L^T (K x m_max) and e_j' = L_j C_j e + e_j (K digits).
/// Generating from these via x-digits = C_j' psi(i) + e_j' matches the
/// unfolded transform digit for digit.
struct PremultipliedSet {
    Base base;
    int s = 0;
    int m_max = 0;
    int K = 0;
    std::vector<DigitMatrix> C; // s matrices, K x m_max
    std::vector<DigitVector> e; // s vectors, K digits
};

PremultipliedSet premultiply(const GeneratorMatrixSet& set, const ScrambleSpec& spec);

} // namespace qmc
