// Command line front end: point generation, discrepancy evaluation,
// t-value tables, the evolutionary matrix search, distribution fitting and
// quadrature benchmarks. Every randomized run either takes --seed or draws
// one and echoes it into the output metadata.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qmc/discrepancy.hpp"
#include "qmc/distfit.hpp"
#include "qmc/engine.hpp"
#include "qmc/evolve.hpp"
#include "qmc/integrands.hpp"
#include "qmc/kernels.hpp"
#include "qmc/pointio.hpp"
#include "qmc/tvalue.hpp"

using json = nlohmann::json;

namespace {

std::uint64_t resolve_seed(std::optional<std::uint64_t> seed) {
    if (seed) return *seed;
    std::random_device rd;
    const std::uint64_t drawn = (std::uint64_t(rd()) << 32) ^ rd();
    std::cerr << "note: no --seed given, using seed " << drawn << "\n";
    return drawn;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoull(item));
    }
    return out;
}

int required_m(const qmc::Base& b, std::uint64_t last_index) {
    int m = 1;
    std::uint64_t cap = b.value();
    while (cap <= last_index) {
        cap *= b.value();
        ++m;
    }
    return m;
}

struct GenOptions {
    std::string family = "faure";
    std::string matrix_file;
    std::uint32_t b = 2;
    int s = 1;
    int m = 0; // 0: derive from n
    std::uint64_t n = 0;
    std::uint64_t start = 0;
    std::string order = "gray";
    std::string scramble = "none";
    int digits = 0; // 0: default K
    std::optional<std::uint64_t> seed;
    std::string h_list;
    std::uint64_t korobov = 0;
    bool random_shift = false;
    std::string out = "-";
    std::string format = "csv";
};

qmc::PointBatch generate_from_options(GenOptions& opt, std::vector<std::string>& meta) {
    const std::uint64_t seed = resolve_seed(opt.seed);
    opt.seed = seed;
    qmc::PointBatch batch;

    if (opt.family == "lattice" || opt.family == "ext-lattice") {
        std::vector<std::uint64_t> h;
        if (opt.korobov != 0) {
            // Korobov vector (1, eta, eta^2, ...) reduced mod n.
            const std::uint64_t modulus = opt.family == "lattice" ? opt.n : (std::uint64_t(1) << 62);
            std::uint64_t g = 1;
            for (int j = 0; j < opt.s; ++j) {
                h.push_back(g);
                g = static_cast<std::uint64_t>((static_cast<unsigned __int128>(g) * opt.korobov) % modulus);
            }
        } else if (!opt.h_list.empty()) {
            h = parse_u64_list(opt.h_list);
        } else {
            throw CLI::ValidationError("--h or --korobov is required for lattice families");
        }
        std::vector<double> shift;
        if (opt.random_shift) {
            qmc::RngStream rng = qmc::RngStream(seed).substream("shift");
            for (std::size_t j = 0; j < h.size(); ++j) shift.push_back(rng.next_double());
        }
        batch = opt.family == "lattice"
                    ? qmc::rank1_lattice(h, opt.n, shift)
                    : qmc::extensible_lattice(h, qmc::Base(opt.b), opt.n, shift);
        meta.push_back("h=" + opt.h_list);
    } else if (opt.family == "lhs") {
        batch = qmc::lhs_sample(opt.n, opt.s, qmc::RngStream(seed));
    } else if (opt.family == "mc") {
        batch = qmc::mc_sample(opt.n, opt.s, qmc::RngStream(seed));
    } else {
        qmc::GeneratorMatrixSet set = [&] {
            if (opt.family == "faure") {
                const int m = opt.m > 0 ? opt.m : required_m(qmc::Base(opt.b), opt.start + opt.n - 1);
                return qmc::faure_matrices(qmc::Base(opt.b), opt.s, m);
            }
            if (opt.family == "identity") {
                const int m = opt.m > 0 ? opt.m : required_m(qmc::Base(opt.b), opt.start + opt.n - 1);
                return qmc::identity_matrices(qmc::Base(opt.b), opt.s, m);
            }
            if (opt.family == "matrix-file") {
                if (opt.matrix_file.empty())
                    throw CLI::ValidationError("--matrix-file is required for family matrix-file");
                qmc::GeneratorMatrixSet loaded = qmc::load_matrices(opt.matrix_file);
                if (opt.s > 0 && opt.s < loaded.s) {
                    loaded.s = opt.s; // leading dimensions
                    loaded.matrices.resize(static_cast<std::size_t>(opt.s));
                }
                return loaded;
            }
            throw CLI::ValidationError("unknown family '" + opt.family + "'");
        }();
        opt.s = set.s;
        opt.b = set.base.value();
        opt.m = set.m_max;

        const qmc::ScrambleMode mode = qmc::scramble_mode_from_string(opt.scramble);
        int K = opt.digits;
        if (K == 0) K = mode == qmc::ScrambleMode::none ? set.m_max : set.m_max + 10;
        K = std::min(K, set.base.max_digits());
        if (K < set.m_max && mode != qmc::ScrambleMode::none)
            std::cerr << "warning: K=" << K << " below m_max=" << set.m_max
                      << "; trailing digits are truncated\n";
        const qmc::ScrambleSpec spec =
            mode == qmc::ScrambleMode::none
                ? qmc::identity_spec(set, K)
                : qmc::random_scramble_spec(set, mode, K, qmc::RngStream(seed).substream("scramble"));
        const qmc::PointOrder order =
            opt.order == "natural" ? qmc::PointOrder::natural : qmc::PointOrder::gray;
        batch = qmc::generate(set, spec, opt.n, order, opt.start);
        meta.push_back("m=" + std::to_string(set.m_max));
        meta.push_back("digits=" + std::to_string(K));
    }
    batch.seed = seed;

    meta.push_back("family=" + opt.family);
    meta.push_back("b=" + std::to_string(opt.b));
    meta.push_back("s=" + std::to_string(batch.s));
    meta.push_back("n=" + std::to_string(batch.n));
    meta.push_back("start=" + std::to_string(opt.start));
    meta.push_back("order=" + opt.order);
    meta.push_back("scramble=" + opt.scramble);
    meta.push_back("seed=" + std::to_string(seed));
    return batch;
}

qmc::PointBatch read_points_any(const std::string& path) {
    if (path.size() > 4 && path.substr(path.size() - 4) == ".bin") return qmc::read_points_bin(path);
    return qmc::read_points_csv(path);
}

void write_text(const std::string& out, const std::string& text) {
    if (out == "-" || out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) qmc::fail(qmc::errc::io_error, "cannot write " + out);
    f << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasi-Monte Carlo toolkit: digital nets, scrambling, discrepancy, "
                 "t-values, matrix search, distribution fits and quadrature benchmarks"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a key=value file");

    int threads = static_cast<int>(std::thread::hardware_concurrency());
    app.add_option("--threads", threads, "worker pool cap for replicated experiments");
    std::string kernel = "auto";
    app.add_option("--kernel", kernel, "pair-sum kernel: auto|scalar|avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

    // ---- gen ----------------------------------------------------------
    GenOptions gen;
    CLI::App* cmd_gen = app.add_subcommand("gen", "generate a point set");
    cmd_gen->add_option("--family", gen.family, "faure|identity|matrix-file|lattice|ext-lattice|lhs|mc")
        ->check(CLI::IsMember({"faure", "identity", "matrix-file", "lattice", "ext-lattice", "lhs", "mc"}));
    cmd_gen->add_option("--matrix-file", gen.matrix_file, "generator matrix file");
    cmd_gen->add_option("--b", gen.b, "prime base");
    cmd_gen->add_option("--s", gen.s, "dimensions");
    cmd_gen->add_option("--m", gen.m, "matrix size m_max (default: fit n)");
    cmd_gen->add_option("--n", gen.n, "number of points")->required();
    cmd_gen->add_option("--start", gen.start, "first index of the sequence segment");
    cmd_gen->add_option("--order", gen.order, "natural|gray")->check(CLI::IsMember({"natural", "gray"}));
    cmd_gen->add_option("--scramble", gen.scramble, "none|owen|tumble|both|shift")
        ->check(CLI::IsMember({"none", "owen", "tumble", "both", "shift"}));
    cmd_gen->add_option("--digits", gen.digits, "scrambled digits K (default m+10 when scrambling)");
    cmd_gen->add_option("--seed", gen.seed, "run seed (drawn and echoed when omitted)");
    cmd_gen->add_option("--h", gen.h_list, "lattice generating vector, comma separated");
    cmd_gen->add_option("--korobov", gen.korobov, "korobov generator eta for the lattice vector");
    cmd_gen->add_flag("--random-shift", gen.random_shift, "add a seeded random shift (lattices)");
    cmd_gen->add_option("--out", gen.out, "output path or - for stdout");
    cmd_gen->add_option("--format", gen.format, "csv|bin")->check(CLI::IsMember({"csv", "bin"}));

    // ---- disc ---------------------------------------------------------
    std::string disc_in, disc_out = "-";
    qmc::DiscrepancyParams disc_params;
    bool disc_per_order = false;
    CLI::App* cmd_disc = app.add_subcommand("disc", "kernel discrepancy of a point file");
    cmd_disc->add_option("--in", disc_in, "points file (csv or .bin)")->required();
    cmd_disc->add_option("--alpha", disc_params.alpha, "smoothness degree (1 or 2)");
    cmd_disc->add_option("--gamma", disc_params.gamma, "projection weight");
    cmd_disc->add_flag("--per-order", disc_per_order, "emit the projection-order decomposition");
    cmd_disc->add_option("--out", disc_out, "output path or - for stdout");

    // ---- tvalue -------------------------------------------------------
    std::string tv_file, tv_compare, tv_out = "-", tv_format = "text", tv_initials = "AB";
    std::vector<int> tv_table;
    int tv_exact = 0, tv_proj = 0, tv_m = 0;
    std::uint64_t tv_budget = 100000;
    CLI::App* cmd_tv = app.add_subcommand("tvalue", "exact t-values of generator matrices");
    cmd_tv->add_option("--matrix-file", tv_file, "generator matrix file")->required();
    cmd_tv->add_option("--table", tv_table, "emit the cumulative T(m,s) table: m_max s_max")
        ->expected(2);
    cmd_tv->add_option("--exact", tv_exact, "exact t for the full set at this m");
    cmd_tv->add_option("--compare", tv_compare, "second matrix file to compare tables against");
    cmd_tv->add_option("--initials", tv_initials, "two letters naming the compared sets");
    cmd_tv->add_option("--proj", tv_proj, "projection order r for subset statistics");
    cmd_tv->add_option("--m", tv_m, "row size m for --proj");
    cmd_tv->add_option("--budget", tv_budget, "max subsets enumerated by --proj");
    cmd_tv->add_option("--format", tv_format, "text|csv")->check(CLI::IsMember({"text", "csv"}));
    cmd_tv->add_option("--out", tv_out, "output path or - for stdout");

    // ---- evolve -------------------------------------------------------
    qmc::EAConfig ea;
    std::optional<std::uint64_t> ea_seed;
    std::string ea_seed_matrices, ea_checkpoint, ea_resume, ea_out = "-", ea_history;
    CLI::App* cmd_ea = app.add_subcommand("evolve", "search generator matrices by evolution");
    cmd_ea->add_option("--u", ea.u, "population size");
    cmd_ea->add_option("--s-max", ea.s_max, "dimensions");
    cmd_ea->add_option("--m-max", ea.m_max, "matrix size");
    cmd_ea->add_option("--generations", ea.max_generations, "generation cap");
    cmd_ea->add_option("--mutation-rate", ea.mutation_rate, "fraction of cells flipped");
    cmd_ea->add_option("--elite-frac", ea.elite_frac, "survivor fraction");
    cmd_ea->add_option("--max-age", ea.max_age, "elite eviction age");
    cmd_ea->add_option("--seed", ea_seed, "run seed");
    cmd_ea->add_option("--seed-matrices", ea_seed_matrices, "matrix file seeding the population");
    cmd_ea->add_option("--checkpoint", ea_checkpoint, "write a resumable checkpoint every generation");
    cmd_ea->add_option("--resume", ea_resume, "resume from a checkpoint file");
    cmd_ea->add_option("--out", ea_out, "best matrices output (matrix file format)");
    cmd_ea->add_option("--history", ea_history, "per-generation best objective csv");

    // ---- fit ----------------------------------------------------------
    std::string fit_in, fit_out = "-", fit_qq;
    qmc::QuantileFitConfig fit_config;
    std::optional<std::uint64_t> fit_seed;
    int fit_mult = 11;
    CLI::App* cmd_fit = app.add_subcommand("fit", "fit a chi-square mixture to discrepancy samples");
    cmd_fit->add_option("--in", fit_in, "csv with one squared discrepancy per line")->required();
    cmd_fit->add_option("--n", fit_config.n, "explicit mixture terms");
    cmd_fit->add_option("--lsamp-mult", fit_mult, "model sample size as an odd multiple of M");
    cmd_fit->add_option("--seed", fit_seed, "run seed");
    cmd_fit->add_option("--qq", fit_qq, "write paired empirical/model quantiles to this csv");
    cmd_fit->add_option("--out", fit_out, "output path or - for stdout");

    // ---- bench --------------------------------------------------------
    std::string bn_integrand = "product", bn_out = "-", bn_format = "csv", bn_nlist = "16,64,256,1024";
    GenOptions bn_gen; // reused generator options for the point source
    int bn_reps = 50, bn_s = 5;
    bool bn_periodize = false;
    std::optional<std::uint64_t> bn_seed;
    CLI::App* cmd_bn = app.add_subcommand("bench", "quadrature error benchmark");
    cmd_bn->add_option("--integrand", bn_integrand,
                       "product|keister|oscillatory|product-peak|corner-peak|gaussian|c0|discontinuous");
    cmd_bn->add_option("--s", bn_s, "dimensions");
    cmd_bn->add_option("--family", bn_gen.family, "point family as in gen");
    cmd_bn->add_option("--matrix-file", bn_gen.matrix_file, "generator matrix file");
    cmd_bn->add_option("--b", bn_gen.b, "prime base");
    cmd_bn->add_option("--m", bn_gen.m, "matrix size");
    cmd_bn->add_option("--scramble", bn_gen.scramble, "randomization per replication");
    cmd_bn->add_option("--digits", bn_gen.digits, "scrambled digits K");
    cmd_bn->add_option("--h", bn_gen.h_list, "lattice generating vector");
    cmd_bn->add_option("--korobov", bn_gen.korobov, "korobov generator eta");
    cmd_bn->add_option("--n-list", bn_nlist, "comma separated point counts");
    cmd_bn->add_option("--reps", bn_reps, "replications per point count");
    cmd_bn->add_option("--seed", bn_seed, "run seed");
    cmd_bn->add_flag("--periodize", bn_periodize, "apply the tent-map transform");
    cmd_bn->add_option("--out", bn_out, "output path or - for stdout");
    cmd_bn->add_option("--format", bn_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
        qmc::kernels::set_backend(kernel);

        if (cmd_gen->parsed()) {
            std::vector<std::string> meta{"tool=qmc gen"};
            qmc::PointBatch batch = generate_from_options(gen, meta);
            if (gen.format == "bin") {
                if (gen.out == "-") throw CLI::ValidationError("binary output needs --out FILE");
                qmc::write_points_bin(batch, gen.out);
            } else if (gen.out == "-") {
                for (const auto& line : meta) std::cout << "# " << line << "\n";
                std::cout.precision(17);
                for (std::size_t i = 0; i < batch.n; ++i) {
                    for (int j = 0; j < batch.s; ++j) std::cout << (j ? "," : "") << batch.at(i, j);
                    std::cout << "\n";
                }
            } else {
                qmc::write_points_csv(batch, gen.out, meta);
            }
            return 0;
        }

        if (cmd_disc->parsed()) {
            const qmc::PointBatch batch = read_points_any(disc_in);
            qmc::DiscrepancyReport report = qmc::squared_discrepancy(batch, disc_params);
            if (disc_per_order) report.per_order = qmc::projection_decomposition(batch, disc_params.alpha);
            json j{{"d2", report.d2},
                   {"d2_scaled", report.d2_scaled},
                   {"scale_constant", report.scale_constant},
                   {"config", {{"in", disc_in},
                               {"alpha", disc_params.alpha},
                               {"gamma", disc_params.gamma},
                               {"n", batch.n},
                               {"s", batch.s},
                               {"kernel", qmc::kernels::active_backend().name}}}};
            if (disc_per_order) j["per_order"] = report.per_order;
            write_text(disc_out, j.dump(2) + "\n");
            return 0;
        }

        if (cmd_tv->parsed()) {
            const qmc::GeneratorMatrixSet set = qmc::load_matrices(tv_file);
            std::ostringstream out;
            if (!tv_table.empty()) {
                const qmc::TTable table = qmc::t_table(set, tv_table[0], tv_table[1]);
                out << (tv_format == "csv" ? qmc::table_csv(table) : qmc::render_table(table));
            } else if (!tv_compare.empty()) {
                if (tv_initials.size() != 2)
                    throw CLI::ValidationError("--initials needs exactly two letters");
                const qmc::GeneratorMatrixSet other = qmc::load_matrices(tv_compare);
                const int m = std::min(set.m_max, other.m_max);
                const int s = std::min(set.s, other.s);
                out << qmc::compare_tables(qmc::t_table(set, m, s), qmc::t_table(other, m, s),
                                           tv_initials[0], tv_initials[1]);
            } else if (tv_proj > 0) {
                const int m = tv_m > 0 ? tv_m : set.m_max;
                const qmc::ProjectionStats st = qmc::projection_stats(set, tv_proj, m, tv_budget);
                out << "r=" << st.r << " m=" << st.m << " avg=" << st.avg << " max=" << st.max << "\n";
            } else if (tv_exact > 0) {
                out << "t=" << qmc::exact_t(set, tv_exact) << "\n";
            } else {
                throw CLI::ValidationError("pick one of --table/--exact/--compare/--proj");
            }
            write_text(tv_out, out.str());
            return 0;
        }

        if (cmd_ea->parsed()) {
            qmc::EAState state;
            if (!ea_resume.empty()) {
                auto [loaded_state, loaded_config] = qmc::load_checkpoint(ea_resume);
                state = std::move(loaded_state);
                ea = loaded_config;
            } else {
                ea.seed = resolve_seed(ea_seed);
                state = ea_seed_matrices.empty()
                            ? qmc::init_random(ea)
                            : qmc::init_seeded(ea, qmc::load_matrices(ea_seed_matrices));
            }
            qmc::RunResult result = qmc::run(std::move(state), ea, ea_checkpoint);
            if (!ea_history.empty()) {
                std::ofstream h(ea_history);
                h << "generation,best_objective\n";
                for (std::size_t g = 0; g < result.history.size(); ++g)
                    h << g << ',' << result.history[g] << "\n";
            }
            if (ea_out == "-") {
                qmc::write_matrices(result.best, std::cout);
            } else {
                qmc::save_matrices(result.best, ea_out);
            }
            std::cerr << "best objective " << result.state.best_objective << " after "
                      << result.state.generation << " generations (seed " << ea.seed << ")\n";
            return 0;
        }

        if (cmd_fit->parsed()) {
            const qmc::PointBatch samples = qmc::read_points_csv(fit_in);
            if (samples.s != 1) throw CLI::ValidationError("fit expects a single-column csv");
            std::vector<double> empirical = samples.pts;
            fit_config.M = static_cast<int>(empirical.size());
            fit_config.Lsamp = fit_config.M * fit_mult;
            fit_config.seed = resolve_seed(fit_seed);
            const qmc::FitResult result = qmc::fit(empirical, fit_config);
            json j{{"n", fit_config.n},
                   {"betas", result.model.betas},
                   {"c", result.model.c},
                   {"loss", result.loss},
                   {"initial_loss", result.initial_loss},
                   {"iterations", result.iterations},
                   {"converged", result.converged},
                   {"config", {{"in", fit_in},
                               {"M", fit_config.M},
                               {"Lsamp", fit_config.Lsamp},
                               {"seed", fit_config.seed}}}};
            write_text(fit_out, j.dump(2) + "\n");
            if (!fit_qq.empty()) {
                std::sort(empirical.begin(), empirical.end());
                const qmc::QuantileIndices qi = qmc::quantile_indices(fit_config.M, fit_config.Lsamp);
                const std::vector<double> w = qmc::sample_mixture(
                    result.model, static_cast<std::size_t>(fit_config.Lsamp), qmc::RngStream(fit_config.seed));
                std::ofstream q(fit_qq);
                q << "p,empirical,model\n";
                q.precision(17);
                for (int i = 0; i < fit_config.M; ++i)
                    q << qi.p[i] << ',' << empirical[static_cast<std::size_t>(i)] << ','
                      << w[qi.k[static_cast<std::size_t>(i)] - 1] << "\n";
            }
            return 0;
        }

        if (cmd_bn->parsed()) {
            const std::uint64_t seed = resolve_seed(bn_seed);
            qmc::Integrand f = [&] {
                if (bn_integrand == "product") return qmc::product_integrand(qmc::product_coefficients(bn_s));
                if (bn_integrand == "keister") return qmc::keister_integrand(bn_s);
                const qmc::GenzKind kind = qmc::genz_kind_from_string(bn_integrand);
                const qmc::GenzParams params =
                    qmc::genz_default_params(kind, bn_s, qmc::RngStream(seed).substream("genz"));
                return qmc::genz_family(kind, bn_s, params);
            }();
            if (bn_periodize) f = qmc::periodize(f);

            bn_gen.s = bn_s;
            bn_gen.order = "gray";
            auto source = [&](std::uint64_t n, int rep) {
                GenOptions per = bn_gen;
                per.n = n;
                per.seed = qmc::RngStream(seed).substream("rep").substream(static_cast<std::uint64_t>(rep)).seed();
                per.random_shift = bn_gen.family == "lattice" || bn_gen.family == "ext-lattice";
                std::vector<std::string> sink;
                return generate_from_options(per, sink);
            };

            const std::vector<qmc::BenchmarkRow> rows =
                qmc::benchmark(f, source, parse_u64_list(bn_nlist), bn_reps, threads);

            std::ostringstream out;
            if (bn_format == "json") {
                json j;
                j["config"] = {{"integrand", f.name}, {"s", bn_s},     {"family", bn_gen.family},
                               {"scramble", bn_gen.scramble}, {"reps", bn_reps}, {"seed", seed}};
                if (f.exact) j["exact"] = *f.exact;
                j["rows"] = json::array();
                for (const auto& r : rows)
                    j["rows"].push_back({{"n", r.n},
                                         {"reps", r.reps},
                                         {"mean", r.mean},
                                         {"rms_rel_err", r.rms_rel_err},
                                         {"std_err", r.std_err},
                                         {"digit_accuracy", qmc::digit_accuracy(r.rms_rel_err)}});
                out << j.dump(2) << "\n";
            } else {
                out << "# tool=qmc bench integrand=" << f.name << " s=" << bn_s
                    << " family=" << bn_gen.family << " scramble=" << bn_gen.scramble
                    << " reps=" << bn_reps << " seed=" << seed << "\n";
                out << "n,reps,mean,rms_rel_err,std_err\n";
                out.precision(12);
                for (const auto& r : rows)
                    out << r.n << ',' << r.reps << ',' << r.mean << ',' << r.rms_rel_err << ','
                        << r.std_err << "\n";
            }
            write_text(bn_out, out.str());
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const qmc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
            case qmc::errc::fit_diverged:
            case qmc::errc::budget_exceeded:
            case qmc::errc::ill_conditioned:
                return 3;
            default:
                return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
