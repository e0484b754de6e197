// lacuna: command-line front end for lacunary-sequence LIL experiments.
//
// Subcommands: sequence, diophantine, sigma, discrepancy, lil,
// counterexample, selftest.  Exit codes: 0 success, 1 runtime/resource
// failure, 2 usage or configuration error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "lacuna/diophantine.hpp"
#include "lacuna/discrepancy.hpp"
#include "lacuna/errors.hpp"
#include "lacuna/experiment_config.hpp"
#include "lacuna/lil_lab.hpp"
#include "lacuna/periodic.hpp"
#include "lacuna/permutations.hpp"
#include "lacuna/sequences.hpp"
#include "lacuna/unit_fraction.hpp"
#include "lacuna/version.hpp"

namespace fs = std::filesystem;
using namespace lacuna;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    unsigned threads = 0;
    std::vector<std::string> overrides;
    std::string format = "both";
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--config", c.config_path, "experiment config file");
    cmd->add_option("--out", c.out_dir, "output directory (created if absent)");
    cmd->add_option("--threads", c.threads, "worker threads (0 = auto)");
    cmd->add_option("--override", c.overrides, "config override key=value (repeatable)");
    cmd->add_option("--format", c.format, "csv|summary|both")
        ->check(CLI::IsMember({"csv", "summary", "both"}));
}

unsigned resolve_threads(unsigned flag) {
    if (flag) return flag;
    if (const char* env = std::getenv("LACUNA_THREADS")) {
        const long v = std::atol(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 0;  // library picks hardware concurrency
}

ExperimentConfig load_config(const CommonOpts& c) {
    ExperimentConfig cfg;
    if (!c.config_path.empty()) cfg = parse_config_file(c.config_path);
    apply_overrides(cfg, c.overrides);
    return cfg;
}

std::ofstream open_out(const CommonOpts& c, const std::string& name) {
    fs::create_directories(c.out_dir);
    std::ofstream f(fs::path(c.out_dir) / name, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + name + " under " + c.out_dir);
    return f;
}

void write_manifest(const CommonOpts& c, const std::string& subcommand,
                    const ExperimentConfig& cfg) {
    auto f = open_out(c, "run_manifest.txt");
    f << "tool = lacuna " << kVersion << "\n";
    f << "subcommand = " << subcommand << "\n";
    f << "config_hash = " << cfg.hash_hex() << "\n";
    f << "seed = " << cfg.seed << "\n";
    f << "threads_hint = " << resolve_threads(c.threads) << " (0 = hardware)\n";
}

IntegerSequence sequence_from_config(const ExperimentConfig& cfg, std::size_t n) {
    switch (cfg.seq_kind) {
        case SequenceKind::power: return gen_power(cfg.seq_base, n);
        case SequenceKind::power_minus_one: return gen_power_minus_one(cfg.seq_base, n);
        case SequenceKind::superlacunary: return gen_superlacunary(n);
        case SequenceKind::custom: return load_sequence_file(cfg.seq_path);
    }
    throw config_error("bad sequence kind");
}

// ---------------------------------------------------------------------------

int cmd_sequence(const CommonOpts& c) {
    ExperimentConfig cfg = load_config(c);
    const std::size_t n = cfg.seq_length ? cfg.seq_length : 64;
    IntegerSequence seq = sequence_from_config(cfg, n);
    write_manifest(c, "sequence", cfg);

    if (c.format != "summary") {
        auto csv = open_out(c, "sequence.csv");
        csv << "k,n_k\n";
        for (std::size_t k = 1; k <= seq.size(); ++k)
            csv << k << "," << seq.term(k).get_str() << "\n";
    }
    if (c.format != "csv") {
        auto sum = open_out(c, "sequence_summary.txt");
        GapReport rep = gap_report(seq);
        sum << "generator = " << seq.generator().describe() << "\n";
        sum << "N = " << seq.size() << "\n";
        sum << "min_ratio = " << rep.min_ratio.get_str() << " ("
            << rep.min_ratio.get_d() << ")\n";
        sum << "is_hadamard = " << (rep.is_hadamard ? "true" : "false") << "\n";
        sum << "ratio_trend_first = " << rep.ratio_trend.front() << "\n";
        sum << "ratio_trend_last = " << rep.ratio_trend.back() << "\n";
    }
    std::cout << "sequence: " << seq.size() << " terms -> " << c.out_dir << "\n";
    return 0;
}

int cmd_diophantine(const CommonOpts& c, long a, long b, const std::string& c_str,
                    std::size_t n, long degree, const std::string& grid_str) {
    ExperimentConfig cfg = load_config(c);
    write_manifest(c, "diophantine", cfg);

    if (degree > 0) {
        std::vector<std::size_t> grid;
        std::istringstream in(grid_str);
        std::string tok;
        while (std::getline(in, tok, ',')) grid.push_back(std::stoull(tok));
        if (grid.empty()) throw config_error("--grid must list prefix lengths");
        IntegerSequence seq = sequence_from_config(cfg, grid.back());
        auto rows = boundedness_verdict(seq, degree, grid);
        auto csv = open_out(c, "diophantine.csv");
        csv << "a,b";
        for (auto g : grid)
            csv << ",max_mult_nonzero_c@" << g << ",witness_c@" << g << ",zero_c_count@" << g;
        csv << ",verdict\n";
        for (const auto& row : rows) {
            csv << row.a << "," << row.b;
            for (const auto& cell : row.cells)
                csv << "," << cell.report.max_nonzero << ","
                    << cell.report.witness_c.get_str() << "," << cell.report.zero_count;
            csv << "," << (row.verdict == GrowthVerdict::growing ? "growing" : "bounded")
                << "\n";
        }
        std::cout << "diophantine profile: " << rows.size() << " coefficient pairs -> "
                  << c.out_dir << "\n";
        return 0;
    }

    if (a == 0 || b == 0) throw config_error("--a and --b must be nonzero (or use --degree)");
    if (n == 0) throw config_error("--N must be positive");
    IntegerSequence seq = sequence_from_config(cfg, n);
    DiophQuery q{a, b, mpz_class(c_str), n};
    SolutionCount sc = count_solutions(seq, q);
    auto csv = open_out(c, "diophantine.csv");
    csv << "a,b,c,N,ordered,diagonal,off_diagonal,headline\n";
    csv << a << "," << b << "," << q.c.get_str() << "," << n << "," << sc.ordered_count
        << "," << sc.diagonal_count << "," << sc.off_diagonal() << "," << sc.headline(q.c)
        << "\n";
    std::cout << "count(a=" << a << ", b=" << b << ", c=" << q.c.get_str() << ", N=" << n
              << ") = " << sc.headline(q.c) << " (" << sc.convention << ")\n";
    return 0;
}

int cmd_sigma(const CommonOpts& c, std::uint64_t theta, unsigned k_terms,
              std::uint64_t step_denom, bool no_cache) {
    ExperimentConfig cfg = load_config(c);
    write_manifest(c, "sigma", cfg);
    fs::create_directories(c.out_dir);
    const std::string cache =
        no_cache ? std::string{}
                 : (fs::path(c.out_dir) / ("sigma_cache_theta" + std::to_string(theta) + "_K" +
                                           std::to_string(k_terms) + "_D" +
                                           std::to_string(step_denom) + ".txt"))
                       .string();
    SupSigmaResult r =
        sup_sigma_over_intervals(theta, k_terms, step_denom, cache, resolve_threads(c.threads));
    auto sum = open_out(c, "sigma_summary.txt");
    sum << "theta = " << theta << "\nK = " << k_terms << "\nstep = 1/" << step_denom << "\n";
    sum << "sigma_max = " << r.sigma_max << "\n";
    sum << "sigma_sq = " << r.sigma_sq.get_str() << "\n";
    sum << "interval_a = " << r.a.get_str() << "\ninterval_b = " << r.b.get_str() << "\n";
    sum << format_correlation_cache(r);
    std::cout << "sigma_max = " << r.sigma_max << " at [" << r.a.get_str() << ", "
              << r.b.get_str() << ")\n";
    return 0;
}

int cmd_discrepancy(const CommonOpts& c, const std::string& points_path,
                    std::uint64_t sample_index) {
    ExperimentConfig cfg = load_config(c);
    write_manifest(c, "discrepancy", cfg);

    if (!points_path.empty()) {
        std::ifstream in(points_path);
        if (!in) throw config_error("cannot open points file: " + points_path);
        std::vector<double> pts;
        double v;
        while (in >> v) pts.push_back(v);
        PointSet ps(std::move(pts));
        auto sum = open_out(c, "discrepancy_summary.txt");
        sum << "N = " << ps.size() << "\n";
        sum << "star = " << star_discrepancy(ps) << "\n";
        sum << "extreme = " << extreme_discrepancy(ps) << "\n";
        std::cout << "N=" << ps.size() << " star=" << star_discrepancy(ps)
                  << " extreme=" << extreme_discrepancy(ps) << "\n";
        return 0;
    }

    // stream {n_sigma(k) x} for one sample and checkpoint the discrepancies
    ResolvedExperiment exp(cfg);
    const UnitFraction x = exp.sample(sample_index);
    auto cps = geometric_checkpoints(cfg.n_max, cfg.checkpoint_ratio);
    auto rows = prefix_discrepancies([&](std::size_t k) { return exp.frac_at(x, k); },
                                     cfg.n_max, cps);
    auto csv = open_out(c, "discrepancy.csv");
    csv << "N,star,extreme,lil_statistic\n";
    for (const auto& [n, dv] : rows)
        csv << n << "," << dv.star << "," << dv.extreme << ","
            << static_cast<double>(n) * dv.extreme / lil_normalizer(n) << "\n";
    std::cout << "discrepancy prefix trail: " << rows.size() << " checkpoints -> "
              << c.out_dir << "\n";
    return 0;
}

int run_lil_like(const CommonOpts& c, ExperimentConfig cfg, const char* name) {
    write_manifest(c, name, cfg);
    LilEstimate est = run_experiment(cfg, resolve_threads(c.threads));
    if (c.format != "summary") {
        auto csv = open_out(c, std::string(name) + "_samples.csv");
        write_csv(est, csv);
    }
    if (c.format != "csv") {
        auto sum = open_out(c, std::string(name) + "_summary.txt");
        write_summary(est, sum, kVersion);
    }
    std::cout << name << ": median runmax = " << est.runmax.median
              << ", median final = " << est.final.median;
    if (est.comparison.defined && est.comparison.rank_corr_defined)
        std::cout << ", spearman = " << est.comparison.spearman_runmax;
    std::cout << "\n";
    return 0;
}

int cmd_counterexample(const CommonOpts& c) {
    ExperimentConfig cfg = load_config(c);
    // the pipeline fixes the shape of the run: pair-interleaved permutation,
    // p(x) = cos(2 pi a x) + cos(2 pi b x), prediction sqrt((cos(2 pi c x)+2)/2)
    cfg.perm_kind = ConfigPermKind::pair_interleave;
    if (cfg.query_a <= 0 || cfg.query_b <= 0)
        throw config_error("counterexample: query coefficients a, b must be positive");
    const auto a = static_cast<std::size_t>(cfg.query_a);
    const auto b = static_cast<std::size_t>(cfg.query_b);
    std::vector<mpq_class> cs(std::max(a, b), mpq_class(0));
    cs[a - 1] += 1;
    cs[b - 1] += 1;
    cfg.fn_kind = FunctionKind::cos_poly;
    cfg.fn_cos = std::move(cs);
    cfg.fn_sin.clear();
    cfg.pred_kind = PredictionKind::cos_formula;
    if (!cfg.query_c.fits_slong_p())
        throw config_error("counterexample: |c| too large");
    cfg.pred_c = static_cast<long>(cfg.query_c.get_si());

    const int rc = run_lil_like(c, cfg, "counterexample");
    // export the materialized permutation for reproducibility
    ResolvedExperiment exp(cfg);
    if (exp.plan()) {
        fs::create_directories(c.out_dir);
        export_permutation(*exp.plan(),
                           (fs::path(c.out_dir) / "counterexample_permutation.txt").string());
    }
    return rc;
}

// ---------------------------------------------------------------------------
// selftest: quick oracle suites
// ---------------------------------------------------------------------------

int cmd_selftest(const CommonOpts& c) {
    (void)c;
    int failures = 0;
    std::mt19937_64 rng(20240917);

    {  // discrepancy evaluators vs critical-interval oracle
        bool ok = true;
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (int trial = 0; trial < 300 && ok; ++trial) {
            const std::size_t n = 1 + rng() % 12;
            std::vector<double> pts(n);
            for (auto& p : pts) p = unif(rng);
            if (trial % 7 == 0)
                for (auto& p : pts) p = std::floor(p * 8) / 8.0;  // force ties
            PointSet ps(std::move(pts));
            DiscrepancyValue bf = brute_force_discrepancy(ps);
            if (std::abs(bf.star - star_discrepancy(ps)) > 1e-12 ||
                std::abs(bf.extreme - extreme_discrepancy(ps)) > 1e-12)
                ok = false;
        }
        std::cout << (ok ? "[PASS]" : "[FAIL]") << " discrepancy oracle suite (300 sets)\n";
        failures += !ok;
    }

    {  // diophantine counting vs brute force
        bool ok = true;
        IntegerSequence pm1 = gen_power_minus_one(2, 300);
        IntegerSequence sl = gen_superlacunary(120);
        for (int trial = 0; trial < 60 && ok; ++trial) {
            const IntegerSequence& seq = (trial % 2) ? sl : pm1;
            DiophQuery q;
            q.a = static_cast<long>(rng() % 7) - 3;
            q.b = static_cast<long>(rng() % 7) - 3;
            if (q.a == 0) q.a = 1;
            if (q.b == 0) q.b = -1;
            q.n = 2 + rng() % (seq.size() - 2);
            const std::size_t kk = 1 + rng() % q.n, ll = 1 + rng() % q.n;
            q.c = (trial % 3 == 0) ? mpz_class(0) : mpz_class(q.a * seq.term(kk) + q.b * seq.term(ll));
            SolutionCount fast = count_solutions(seq, q);
            SolutionCount slow = brute_force_count(seq, q);
            if (fast.ordered_count != slow.ordered_count ||
                fast.diagonal_count != slow.diagonal_count)
                ok = false;
        }
        std::cout << (ok ? "[PASS]" : "[FAIL]") << " diophantine oracle suite (60 queries)\n";
        failures += !ok;
    }

    return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lacunary-sequence LIL experiments"};
    app.require_subcommand(1);

    CommonOpts common;
    long dio_a = 0, dio_b = 0, dio_degree = 0;
    std::string dio_c = "0", dio_grid;
    std::size_t dio_n = 0;
    std::uint64_t sg_theta = 2, sg_step = 1024;
    unsigned sg_k = 24;
    bool sg_nocache = false;
    std::string disc_points;
    std::uint64_t disc_sample = 0;

    auto* c_seq = app.add_subcommand("sequence", "generate a sequence and its gap report");
    add_common(c_seq, common);
    auto* c_dio = app.add_subcommand("diophantine", "count Diophantine solutions");
    add_common(c_dio, common);
    c_dio->add_option("--a", dio_a, "coefficient a");
    c_dio->add_option("--b", dio_b, "coefficient b");
    c_dio->add_option("--c", dio_c, "right-hand side c");
    c_dio->add_option("--N", dio_n, "prefix length");
    c_dio->add_option("--degree", dio_degree, "profile all |a|,|b| <= degree");
    c_dio->add_option("--grid", dio_grid, "comma list of N values for the profile");
    auto* c_sig = app.add_subcommand("sigma", "grid-search the interval LIL constant");
    add_common(c_sig, common);
    c_sig->add_option("--theta", sg_theta, "sequence base theta");
    c_sig->add_option("--K", sg_k, "correlation truncation");
    c_sig->add_option("--step", sg_step, "grid denominator D (step = 1/D)");
    c_sig->add_flag("--no-cache", sg_nocache, "ignore and do not write the disk cache");
    auto* c_dis = app.add_subcommand("discrepancy", "exact discrepancy of points or prefixes");
    add_common(c_dis, common);
    c_dis->add_option("--points", disc_points, "file with one point per line");
    c_dis->add_option("--sample-index", disc_sample, "sample index for the config stream");
    auto* c_lil = app.add_subcommand("lil", "run a LIL experiment from the config");
    add_common(c_lil, common);
    auto* c_ctr = app.add_subcommand("counterexample", "pair-interleave pipeline");
    add_common(c_ctr, common);
    auto* c_tst = app.add_subcommand("selftest", "run the built-in oracle suites");
    add_common(c_tst, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (c_seq->parsed()) return cmd_sequence(common);
        if (c_dio->parsed())
            return cmd_diophantine(common, dio_a, dio_b, dio_c, dio_n, dio_degree, dio_grid);
        if (c_sig->parsed()) return cmd_sigma(common, sg_theta, sg_k, sg_step, sg_nocache);
        if (c_dis->parsed()) return cmd_discrepancy(common, disc_points, disc_sample);
        if (c_lil->parsed()) return run_lil_like(common, load_config(common), "lil");
        if (c_ctr->parsed()) return cmd_counterexample(common);
        if (c_tst->parsed()) return cmd_selftest(common);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
