#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmc/genmat.hpp"
#include "qmc/rng.hpp"

namespace qmc {

/// Candidate solution: one unit upper triangular binary matrix per
/// dimension, encoded as strict-upper-triangle bit strings.
struct Individual {
    std::vector<TriangularEncoding> enc; // s_max encodings, each (m^2-m)/2 bits
    std::optional<std::int64_t> fitness;
    int age = 0;
};

struct EAConfig {
    int u = 400;                 // population size
    double elite_frac = 0.3;     // survivors per generation
    double mutation_rate = 0.05; // fraction of cells flipped per offspring
    bool crossover_enabled = true;
    int max_age = 10; // generations an elite may survive
    int max_generations = 100;
    int s_max = 8;
    int m_max = 10;
    std::uint64_t seed = 0;
};

struct EAState {
    std::vector<Individual> pop;
    std::int64_t generation = 0;
    Individual best; // best ever seen, kept outside the population
    std::int64_t best_objective = -1; // -1 until the first evaluation
    std::uint64_t seed = 0;
};

/// Summed quality objective: sum over s = 1..s_max and m = 1..m_max of the
/// exact t of the leading s matrices truncated to m x m. Smaller is better;
/// zero is optimal.
std::int64_t objective(const Individual& ind, int m_max);

/// Decode an individual into a base-2 generator matrix set.
GeneratorMatrixSet decode_individual(const Individual& ind, int m_max);

/// Individual with the strict upper triangles of `set` (matrices beyond
/// set.s, if any, stay empty encodings to be filled by the caller).
Individual encode_individual(const GeneratorMatrixSet& set, int s_max, int m_max);

/// Deterministic two-point segment exchange on dimension j: children keep
/// cells [1..c1] and (c2..r] from their own parent and swap (c1..c2].
void crossover_segments(Individual& child1, Individual& child2, int j, int c1, int c2);

/// Two-point crossover applied per dimension with the first cut in the
/// first half of the cell string and the second cut in the second half.
std::pair<Individual, Individual> crossover(const Individual& p1, const Individual& p2,
                                            RngStream& rng);

/// Flip exactly ceil(rate * total_cells) distinct cells, sampled without
/// replacement across the whole individual.
Individual mutate(const Individual& ind, double rate, RngStream& rng);

/// One generation: evaluate, record the best, keep the elite fraction,
/// age and evict stale elites, refill with mutated crossover offspring.
void step(EAState& state, const EAConfig& config);

EAState init_random(const EAConfig& config);
EAState init_seeded(const EAConfig& config, const GeneratorMatrixSet& seed_set);

struct RunResult {
    GeneratorMatrixSet best;
    std::vector<std::int64_t> history; // best objective per generation
    EAState state;
};

/// Run until max_generations or a perfect objective, optionally writing a
/// resumable checkpoint each generation.
RunResult run(EAState state, const EAConfig& config, const std::string& checkpoint_path = {});

void save_checkpoint(const EAState& state, const EAConfig& config, const std::string& path);
std::pair<EAState, EAConfig> load_checkpoint(const std::string& path);

} // namespace qmc
