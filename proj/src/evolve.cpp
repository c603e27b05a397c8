#include "qmc/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <nlohmann/json.hpp>

#include "qmc/tvalue.hpp"

namespace qmc {

using json = nlohmann::json;

GeneratorMatrixSet decode_individual(const Individual& ind, int m_max) {
    if (ind.enc.empty()) fail(errc::invalid_argument, "individual has no encodings");
    GeneratorMatrixSet set(Base(2), static_cast<int>(ind.enc.size()), m_max, "ec");
    for (std::size_t j = 0; j < ind.enc.size(); ++j) {
        if (ind.enc[j].m != m_max) fail(errc::length_mismatch, "encoding size does not match m_max");
        set.matrix(static_cast<int>(j)) = decode_triangular(ind.enc[j]);
    }
    return set;
}

Individual encode_individual(const GeneratorMatrixSet& set, int s_max, int m_max) {
    if (set.base.value() != 2) fail(errc::invalid_argument, "encodings are base-2 only");
    if (set.m_max < m_max) fail(errc::length_mismatch, "seed matrices smaller than m_max");
    Individual ind;
    ind.enc.resize(static_cast<std::size_t>(s_max));
    for (int j = 0; j < std::min(s_max, set.s); ++j) {
        DigitMatrix top(m_max, m_max);
        for (int r = 0; r < m_max; ++r)
            for (int c = 0; c < m_max; ++c) top.at(r, c) = set.matrix(j).at(r, c);
        ind.enc[static_cast<std::size_t>(j)] = encode_triangular(top);
    }
    return ind;
}

std::int64_t objective(const Individual& ind, int m_max) {
    const GeneratorMatrixSet set = decode_individual(ind, m_max);
    std::int64_t total = 0;
    std::vector<int> dims;
    // Fill the (m, s) grid reusing the previous column as a lower bound.
    std::vector<int> prev(static_cast<std::size_t>(m_max) + 1, 0);
    for (int s = 1; s <= set.s; ++s) {
        dims.push_back(s - 1);
        for (int m = 1; m <= m_max; ++m) {
            const int t = exact_t(set, m, dims, prev[static_cast<std::size_t>(m)]);
            prev[static_cast<std::size_t>(m)] = t;
            total += t;
        }
    }
    return total;
}

void crossover_segments(Individual& child1, Individual& child2, int j, int c1, int c2) {
    auto& a = child1.enc[static_cast<std::size_t>(j)].cells;
    auto& b = child2.enc[static_cast<std::size_t>(j)].cells;
    if (a.size() != b.size()) fail(errc::length_mismatch, "crossover needs equal encodings");
    for (int pos = c1; pos < c2; ++pos) std::swap(a[static_cast<std::size_t>(pos)],
                                                  b[static_cast<std::size_t>(pos)]);
}

std::pair<Individual, Individual> crossover(const Individual& p1, const Individual& p2,
                                            RngStream& rng) {
    if (p1.enc.size() != p2.enc.size()) fail(errc::length_mismatch, "parents of different shape");
    Individual c1 = p1, c2 = p2;
    c1.fitness.reset();
    c2.fitness.reset();
    c1.age = c2.age = 0;
    for (std::size_t j = 0; j < p1.enc.size(); ++j) {
        const int r = static_cast<int>(p1.enc[j].cells.size());
        const int half = r / 2;
        if (half < 1 || half + 1 > r - 1) continue; // too short for two interior cuts
        const int cut1 = 1 + static_cast<int>(rng.next_below(static_cast<std::uint32_t>(half)));
        const int cut2 = half + 1 +
                         static_cast<int>(rng.next_below(static_cast<std::uint32_t>(r - 1 - half)));
        crossover_segments(c1, c2, static_cast<int>(j), cut1, cut2);
    }
    return {std::move(c1), std::move(c2)};
}

Individual mutate(const Individual& ind, double rate, RngStream& rng) {
    if (rate < 0.0 || rate > 1.0) fail(errc::invalid_argument, "mutation rate outside [0,1]");
    Individual out = ind;
    out.fitness.reset();
    out.age = 0;
    std::size_t total = 0;
    for (const auto& e : out.enc) total += e.cells.size();
    const auto flips = static_cast<std::size_t>(std::ceil(rate * double(total)));
    if (flips == 0) return out;

    // Partial Fisher-Yates: pick `flips` distinct cell positions.
    std::vector<std::uint32_t> idx(total);
    std::iota(idx.begin(), idx.end(), 0u);
    for (std::size_t i = 0; i < flips; ++i) {
        const std::size_t pick =
            i + rng.next_below(static_cast<std::uint32_t>(total - i));
        std::swap(idx[i], idx[pick]);
        std::uint32_t pos = idx[i];
        for (auto& e : out.enc) {
            if (pos < e.cells.size()) {
                e.cells[pos] ^= 1;
                break;
            }
            pos -= static_cast<std::uint32_t>(e.cells.size());
        }
    }
    return out;
}

namespace {

void evaluate_all(EAState& state, const EAConfig& config) {
    for (auto& ind : state.pop)
        if (!ind.fitness) ind.fitness = objective(ind, config.m_max);
    for (const auto& ind : state.pop)
        if (state.best_objective < 0 || *ind.fitness < state.best_objective) {
            state.best_objective = *ind.fitness;
            state.best = ind;
        }
}

} // namespace

void step(EAState& state, const EAConfig& config) {
    evaluate_all(state, config);

    std::stable_sort(state.pop.begin(), state.pop.end(),
                     [](const Individual& a, const Individual& b) { return *a.fitness < *b.fitness; });
    const auto elite_count = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(config.elite_frac * config.u)));
    std::vector<Individual> parents(state.pop.begin(),
                                    state.pop.begin() + std::min(elite_count, state.pop.size()));

    RngStream gen_rng =
        RngStream(state.seed).substream("generation").substream(static_cast<std::uint64_t>(state.generation));

    // Elites survive with their age incremented; stale ones drop out but
    // still act as parents this generation.
    std::vector<Individual> next;
    for (const auto& elite : parents) {
        Individual kept = elite;
        kept.age += 1;
        if (kept.age <= config.max_age) next.push_back(std::move(kept));
    }

    RngStream pair_rng = gen_rng.substream("pairs");
    RngStream mut_rng = gen_rng.substream("mutate");
    while (next.size() < static_cast<std::size_t>(config.u)) {
        const auto& pa = parents[pair_rng.next_below(static_cast<std::uint32_t>(parents.size()))];
        const auto& pb = parents[pair_rng.next_below(static_cast<std::uint32_t>(parents.size()))];
        std::pair<Individual, Individual> kids =
            config.crossover_enabled ? crossover(pa, pb, pair_rng)
                                     : std::pair<Individual, Individual>{pa, pb};
        for (Individual* kid : {&kids.first, &kids.second}) {
            if (next.size() >= static_cast<std::size_t>(config.u)) break;
            Individual child = mutate(*kid, config.mutation_rate, mut_rng);
            next.push_back(std::move(child));
        }
    }
    state.pop = std::move(next);
    state.generation += 1;
    evaluate_all(state, config);
}

namespace {

Individual random_individual(const EAConfig& config, RngStream rng) {
    Individual ind;
    ind.enc.assign(static_cast<std::size_t>(config.s_max), TriangularEncoding(config.m_max));
    for (auto& e : ind.enc)
        for (auto& cell : e.cells) cell = static_cast<std::uint8_t>(rng.next_below(2));
    return ind;
}

} // namespace

EAState init_random(const EAConfig& config) {
    EAState state;
    state.seed = config.seed;
    RngStream rng = RngStream(config.seed).substream("init");
    for (int i = 0; i < config.u; ++i)
        state.pop.push_back(random_individual(config, rng.substream(static_cast<std::uint64_t>(i))));
    return state;
}

EAState init_seeded(const EAConfig& config, const GeneratorMatrixSet& seed_set) {
    EAState state;
    state.seed = config.seed;
    RngStream rng = RngStream(config.seed).substream("init");
    Individual seed = encode_individual(seed_set, config.s_max, config.m_max);
    // Dimensions the seed set does not cover start random.
    const Individual pad = random_individual(config, rng.substream("pad"));
    for (int j = seed_set.s; j < config.s_max; ++j)
        seed.enc[static_cast<std::size_t>(j)] = pad.enc[static_cast<std::size_t>(j)];
    state.pop.push_back(seed);
    // Half mutated copies of the seed, half fresh random.
    RngStream mut = rng.substream("seed-mut");
    for (int i = 1; i < config.u; ++i) {
        if (i % 2 == 1)
            state.pop.push_back(mutate(seed, config.mutation_rate, mut));
        else
            state.pop.push_back(random_individual(config, rng.substream(static_cast<std::uint64_t>(i))));
    }
    return state;
}

RunResult run(EAState state, const EAConfig& config, const std::string& checkpoint_path) {
    evaluate_all(state, config);
    std::vector<std::int64_t> history{state.best_objective};
    while (state.generation < config.max_generations && state.best_objective > 0) {
        step(state, config);
        history.push_back(state.best_objective);
        if (!checkpoint_path.empty()) save_checkpoint(state, config, checkpoint_path);
    }
    RunResult result{decode_individual(state.best, config.m_max), std::move(history), std::move(state)};
    result.best.name = "ec";
    return result;
}

namespace {

std::string cells_to_hex(const std::vector<std::uint8_t>& cells) {
    static const char* digits = "0123456789abcdef";
    std::string hex;
    for (std::size_t base = 0; base < cells.size(); base += 8) {
        unsigned byte = 0;
        for (std::size_t k = 0; k < 8 && base + k < cells.size(); ++k)
            byte |= static_cast<unsigned>(cells[base + k] & 1) << k;
        hex.push_back(digits[byte >> 4]);
        hex.push_back(digits[byte & 0xf]);
    }
    return hex;
}

std::vector<std::uint8_t> hex_to_cells(const std::string& hex, std::size_t count) {
    std::vector<std::uint8_t> cells(count, 0);
    auto nibble = [](char ch) -> unsigned {
        if (ch >= '0' && ch <= '9') return static_cast<unsigned>(ch - '0');
        if (ch >= 'a' && ch <= 'f') return static_cast<unsigned>(ch - 'a' + 10);
        fail(errc::parse_error, "bad hex digit in checkpoint");
    };
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t byte_idx = i / 8;
        if (2 * byte_idx + 1 >= hex.size()) fail(errc::parse_error, "checkpoint cells truncated");
        const unsigned byte = (nibble(hex[2 * byte_idx]) << 4) | nibble(hex[2 * byte_idx + 1]);
        cells[i] = static_cast<std::uint8_t>((byte >> (i % 8)) & 1);
    }
    return cells;
}

json individual_to_json(const Individual& ind) {
    json enc = json::array();
    for (const auto& e : ind.enc) enc.push_back(cells_to_hex(e.cells));
    json j{{"enc", enc}, {"age", ind.age}};
    if (ind.fitness) j["fitness"] = *ind.fitness;
    return j;
}

Individual individual_from_json(const json& j, int m_max) {
    Individual ind;
    for (const auto& hex : j.at("enc")) {
        TriangularEncoding e(m_max);
        e.cells = hex_to_cells(hex.get<std::string>(), TriangularEncoding::cell_count(m_max));
        ind.enc.push_back(std::move(e));
    }
    ind.age = j.at("age").get<int>();
    if (j.contains("fitness")) ind.fitness = j.at("fitness").get<std::int64_t>();
    return ind;
}

} // namespace

void save_checkpoint(const EAState& state, const EAConfig& config, const std::string& path) {
    json j;
    j["format"] = "qmc-ea-checkpoint-1";
    j["generation"] = state.generation;
    j["seed"] = state.seed;
    j["config"] = {{"u", config.u},
                   {"elite_frac", config.elite_frac},
                   {"mutation_rate", config.mutation_rate},
                   {"crossover_enabled", config.crossover_enabled},
                   {"max_age", config.max_age},
                   {"max_generations", config.max_generations},
                   {"s_max", config.s_max},
                   {"m_max", config.m_max},
                   {"seed", config.seed}};
    j["best_objective"] = state.best_objective;
    if (!state.best.enc.empty()) j["best"] = individual_to_json(state.best);
    json pop = json::array();
    for (const auto& ind : state.pop) pop.push_back(individual_to_json(ind));
    j["population"] = std::move(pop);

    std::ofstream out(path);
    if (!out) fail(errc::io_error, "cannot write checkpoint " + path);
    out << j.dump(1) << '\n';
}

std::pair<EAState, EAConfig> load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::io_error, "cannot open checkpoint " + path);
    json j;
    in >> j;
    if (j.value("format", "") != "qmc-ea-checkpoint-1")
        fail(errc::parse_error, "unrecognized checkpoint format in " + path);

    EAConfig config;
    const json& c = j.at("config");
    config.u = c.at("u").get<int>();
    config.elite_frac = c.at("elite_frac").get<double>();
    config.mutation_rate = c.at("mutation_rate").get<double>();
    config.crossover_enabled = c.at("crossover_enabled").get<bool>();
    config.max_age = c.at("max_age").get<int>();
    config.max_generations = c.at("max_generations").get<int>();
    config.s_max = c.at("s_max").get<int>();
    config.m_max = c.at("m_max").get<int>();
    config.seed = c.at("seed").get<std::uint64_t>();

    EAState state;
    state.generation = j.at("generation").get<std::int64_t>();
    state.seed = j.at("seed").get<std::uint64_t>();
    state.best_objective = j.at("best_objective").get<std::int64_t>();
    if (j.contains("best")) state.best = individual_from_json(j.at("best"), config.m_max);
    for (const auto& ind : j.at("population")) state.pop.push_back(individual_from_json(ind, config.m_max));
    return {std::move(state), config};
}

} // namespace qmc
