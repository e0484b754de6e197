// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Deliberately self-contained and chatty: each line restates the
// check it ran and the numbers it saw.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "lacuna/diophantine.hpp"
#include "lacuna/discrepancy.hpp"
#include "lacuna/experiment_config.hpp"
#include "lacuna/lil_lab.hpp"
#include "lacuna/periodic.hpp"
#include "lacuna/permutations.hpp"
#include "lacuna/sequences.hpp"

using namespace lacuna;

namespace {

int g_failures = 0;
std::chrono::steady_clock::time_point g_t0;

void begin() { g_t0 = std::chrono::steady_clock::now(); }

void report(const char* id, bool ok, const std::string& detail) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - g_t0).count();
    std::printf("[%s] %s  %s  (%.1fs)\n", ok ? "PASS" : "FAIL", id, detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.5g", v);
    return buf;
}

// ---------------------------------------------------------------------------

void criterion1() {
    begin();
    std::mt19937_64 rng(1001);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 1 + rng() % 12;
        std::vector<double> pts(n);
        for (auto& p : pts) p = unif(rng);
        if (t % 6 == 0)
            for (auto& p : pts) p = std::floor(p * 8.0) / 8.0;
        if (t % 17 == 0 && !pts.empty()) pts[0] = 0.0;
        const PointSet ps(std::move(pts));
        const DiscrepancyValue oracle = brute_force_discrepancy(ps);
        worst = std::max(worst, std::abs(star_discrepancy(ps) - oracle.star));
        worst = std::max(worst, std::abs(extreme_discrepancy(ps) - oracle.extreme));
    }
    report("C1 discrepancy-oracle", worst <= 1e-12,
           "star+extreme vs critical intervals, 1000 sets N<=12, worst |diff| = " +
               fmt(worst));
}

void criterion2() {
    begin();
    std::mt19937_64 rng(2002);
    const IntegerSequence pm1 = gen_power_minus_one(2, 1000);
    const IntegerSequence sl = gen_superlacunary(1000);
    std::uint64_t mismatches = 0, done = 0;
    auto run = [&](const IntegerSequence& seq, std::size_t n) {
        DiophQuery q;
        q.a = static_cast<long>(rng() % 9) - 4;
        q.b = static_cast<long>(rng() % 9) - 4;
        if (q.a == 0) q.a = 1;
        if (q.b == 0) q.b = -2;
        q.n = n;
        switch (done % 3) {
            case 0: q.c = 0; break;
            case 1: {
                const std::size_t k = 1 + rng() % n, l = 1 + rng() % n;
                q.c = q.a * seq.term(k) + q.b * seq.term(l);
                break;
            }
            default: q.c = static_cast<long>(rng() % 2000) - 1000;
        }
        const SolutionCount fast = count_solutions(seq, q);
        const SolutionCount slow = brute_force_count(seq, q);
        if (fast.ordered_count != slow.ordered_count ||
            fast.diagonal_count != slow.diagonal_count)
            ++mismatches;
        ++done;
    };
    for (int t = 0; t < 100; ++t) run(pm1, 2 + rng() % 999);
    for (int t = 0; t < 90; ++t) run(sl, 2 + rng() % 349);
    for (int t = 0; t < 8; ++t) run(sl, 350 + rng() % 350);
    for (int t = 0; t < 2; ++t) run(sl, 700 + rng() % 301);
    report("C2 diophantine-oracle", mismatches == 0,
           "count_solutions vs brute force, " + std::to_string(done) +
               " randomized queries, mismatches = " + std::to_string(mismatches));
}

void criterion3() {
    begin();
    const double target = std::sqrt(42.0) / 9.0;
    const SupSigmaResult r = sup_sigma_over_intervals(2, 24, 1024, {}, 0);
    const double rel = std::abs(r.sigma_max - target) / target;
    report("C3 interval-constant", rel <= 0.015,
           "sup sigma on the 2^-10 grid, K=24: " + fmt(r.sigma_max) + " vs " + fmt(target) +
               ", rel err " + fmt(rel) + ", maximizer [" + r.a.get_str() + "," +
               r.b.get_str() + ")");
}

void criterion4() {
    begin();
    bool ok = true;
    std::string note;
    for (unsigned k : {1u, 4u, 24u}) {
        const SigmaResult s = sigma_identity(TrigPolynomial({mpq_class(1)}, {}), 2, k);
        ok &= (*s.sigma_sq == mpq_class(1, 2)) && (s.sigma == std::sqrt(0.5));
    }
    for (unsigned k : {1u, 8u, 24u}) {
        const SigmaResult s =
            sigma_identity(TrigPolynomial({mpq_class(1), mpq_class(1)}, {}), 2, k);
        ok &= (*s.sigma_sq == 2);
    }
    for (unsigned k : {1u, 24u}) {
        const SigmaResult s =
            sigma_identity(centered_indicator(mpq_class(0), mpq_class(1, 2)), 2, k);
        ok &= (*s.sigma_sq == mpq_class(1, 4)) && (s.sigma == 0.5);
    }
    report("C4 exact-resonance", ok,
           "sigma^2 rational-exact: cos -> 1/2, cos+cos2 -> 2, Rademacher -> 1/4");
}

// shared configs for criteria 5-7 so criterion 9 can rerun them
ExperimentConfig probe_cfg(const std::vector<mpq_class>& cos_coeffs, bool indicator) {
    ExperimentConfig cfg;
    cfg.seq_kind = SequenceKind::power;
    cfg.seq_base = 2;
    if (indicator) {
        cfg.fn_kind = FunctionKind::indicator;
        cfg.fn_lo = 0;
        cfg.fn_hi = mpq_class(1, 2);
    } else {
        cfg.fn_kind = FunctionKind::cos_poly;
        cfg.fn_cos = cos_coeffs;
    }
    cfg.n_max = 1 << 12;
    cfg.samples = 400;
    cfg.seed = 90210;
    return cfg;
}

struct ProbeSpec {
    ExperimentConfig cfg;
    double sigma_sq;
    const char* name;
};

std::vector<ProbeSpec> variance_probes() {
    return {
        {probe_cfg({mpq_class(1)}, false), 0.5, "cos"},
        {probe_cfg({mpq_class(1), mpq_class(1)}, false), 2.0, "cos+cos2"},
        {probe_cfg({}, true), 0.25, "indicator(0,1/2)"},
    };
}

void criterion5(std::vector<VarianceProbe>& out) {
    begin();
    bool ok = true;
    std::string note;
    for (const auto& spec : variance_probes()) {
        const VarianceProbe p = variance_probe(spec.cfg, spec.cfg.n_max, 0);
        out.push_back(p);
        const bool hit = std::abs(p.mean - spec.sigma_sq) <= 3.0 * p.std_error;
        ok &= hit;
        note += std::string(spec.name) + ": " + fmt(p.mean) + "+-" + fmt(p.std_error) +
                " vs " + fmt(spec.sigma_sq) + "; ";
    }
    report("C5 variance-probes", ok, "E[S_N^2]/N at N=2^12, X=400, 3 SE bands: " + note);
}

ExperimentConfig cfg_6a() {
    ExperimentConfig cfg;
    cfg.seq_kind = SequenceKind::power;
    cfg.seq_base = 2;
    cfg.fn_cos = {mpq_class(1)};
    cfg.statistic = StatisticKind::sums;
    cfg.n_max = 1 << 16;
    cfg.samples = 200;
    cfg.seed = 31337;
    return cfg;
}

ExperimentConfig cfg_6b(SequenceKind kind, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.seq_kind = kind;
    cfg.seq_base = 2;
    cfg.statistic = StatisticKind::discrepancy;
    cfg.n_max = 1 << 13;
    cfg.samples = 200;
    cfg.seed = seed;
    return cfg;
}

void criterion6(LilEstimate& est_6a, LilEstimate& est_6b_sl, LilEstimate& est_6b_p2) {
    begin();
    est_6a = run_experiment(cfg_6a(), 0);
    const bool ok_a = est_6a.runmax.median >= 0.55 && est_6a.runmax.median <= 0.95;
    report("C6a erdos-gal-band", ok_a,
           "cos on 2^k sums, N=2^16, X=200: median runmax = " + fmt(est_6a.runmax.median) +
               " in [0.55,0.95], target 1/sqrt(2) = 0.7071");

    begin();
    // band on the final-N statistic (the per-N quantity the 1/2 target
    // describes at a fixed scale), ordering on the running max (the limsup
    // surrogate that the sqrt(42)/9-vs-1/2 comparison is about)
    est_6b_sl = run_experiment(cfg_6b(SequenceKind::superlacunary, 777000), 0);
    est_6b_p2 = run_experiment(cfg_6b(SequenceKind::power, 777000), 0);
    const bool ok_band = est_6b_sl.final.median >= 0.35 && est_6b_sl.final.median <= 0.75;
    int wins = (est_6b_p2.runmax.median > est_6b_sl.runmax.median) ? 1 : 0;
    std::string meds = "(" + fmt(est_6b_p2.runmax.median) + " vs " +
                       fmt(est_6b_sl.runmax.median) + ")";
    for (std::uint64_t r = 1; r < 5; ++r) {
        const LilEstimate sl = run_experiment(cfg_6b(SequenceKind::superlacunary, 777000 + r), 0);
        const LilEstimate p2 = run_experiment(cfg_6b(SequenceKind::power, 777000 + r), 0);
        wins += (p2.runmax.median > sl.runmax.median) ? 1 : 0;
        meds += " (" + fmt(p2.runmax.median) + " vs " + fmt(sl.runmax.median) + ")";
    }
    const bool ok_b = ok_band && wins >= 4;
    report("C6b discrepancy-medians", ok_b,
           "superlacunary median final = " + fmt(est_6b_sl.final.median) +
               " in [0.35,0.75] (target 1/2); 2^k running-max median above superlacunary in " +
               std::to_string(wins) + "/5 seed replications " + meds);

    begin();
    const double bound = 0.5 / (4.0 * std::sqrt(2.0));
    double least = 1e9;
    for (const auto& rec : est_6b_p2.samples) least = std::min(least, rec.stat_final);
    report("C6c philipp-floor", least > bound,
           "2^k discrepancy finals at N=2^13: min over samples = " + fmt(least) +
               " > (1/(4 sqrt 2)) * 0.5 = " + fmt(bound));
}

ExperimentConfig cfg_7(bool c_one) {
    ExperimentConfig cfg;
    cfg.statistic = StatisticKind::sums;
    cfg.n_max = 1 << 13;
    cfg.samples = 200;
    cfg.seed = 424242;
    cfg.perm_kind = ConfigPermKind::pair_interleave;
    cfg.perm_growth = PairGrowth::packed;
    cfg.fn_kind = FunctionKind::cos_poly;
    cfg.fn_cos = {mpq_class(1), mpq_class(1)};  // cos 2pi x + cos 4pi x
    cfg.query_a = 1;
    cfg.query_b = 2;
    cfg.pred_kind = PredictionKind::cos_formula;
    if (c_one) {
        cfg.seq_kind = SequenceKind::power_minus_one;
        cfg.seq_base = 2;
        cfg.query_c = 1;
        cfg.pred_c = 1;
    } else {
        cfg.seq_kind = SequenceKind::power;
        cfg.seq_base = 2;
        cfg.query_c = 0;
        cfg.pred_c = 0;
    }
    return cfg;
}

void criterion7(LilEstimate& est_c1, LilEstimate& est_c0) {
    begin();
    est_c1 = run_experiment(cfg_7(true), 0);
    est_c0 = run_experiment(cfg_7(false), 0);
    const bool rank_ok =
        est_c1.comparison.rank_corr_defined && est_c1.comparison.spearman_runmax >= 0.4;
    const double cov1 = est_c1.comparison.cov_stat;
    const double cov0 = est_c0.comparison.cov_stat;
    const bool cov_ok = cov1 >= 1.5 * cov0;
    report("C7 counterexample-nonconstancy", rank_ok && cov_ok,
           "2^k-1,(1,2,1): spearman(runmax, sqrt((cos 2pi x + 2)/2)) = " +
               fmt(est_c1.comparison.spearman_runmax) + " >= 0.4; cov " + fmt(cov1) +
               " vs c=0 run " + fmt(cov0) + " (need >= 1.5x)");
}

void criterion8() {
    begin();
    bool ok = true;
    std::string note;
    {
        const std::uint64_t n_max = 1 << 13;
        const IntegerSequence pm1 = gen_power_minus_one(2, n_max + 96);
        const SolutionPairs sp =
            find_solution_pairs(pm1, 1, 2, 1, n_max / 2, PairGrowth::packed, 8);
        const PermutationPlan plan = build_counterexample(sp, n_max);
        const ValidationReport rep = validate(plan, n_max);
        ok &= rep.pass;
        note += "packed plan at N=2^13: bijective=" + std::to_string(rep.bijective) +
                " prefixes=" + std::to_string(rep.prefix_sets_match) +
                " M<=2lnN=" + std::to_string(rep.filler_bounded) +
                " (max M=" + std::to_string(rep.max_filler) + "); ";
    }
    {
        const IntegerSequence pm1 = gen_power_minus_one(2, 6000);
        const SolutionPairs sp = find_solution_pairs(pm1, 1, 2, 1, 6, PairGrowth::divergent);
        ok &= sp.ratio_above_two && sp.ratio_diverges;
        const PermutationPlan plan = build_counterexample(sp, 14);
        ok &= validate(plan, 14).pass;
        note += "divergent chain validated to its feasible N=14; ";
    }
    {
        std::mt19937_64 rng(808);
        const std::size_t n = 10000;
        std::vector<std::uint64_t> arr(n);
        for (std::size_t i = 0; i < n; ++i) arr[i] = i + 1;
        bool blocks_ok = true;
        for (int t = 0; t < 100; ++t) {
            std::shuffle(arr.begin(), arr.end(), rng);
            const auto out = block_sorted(arr, 2.0);
            for (std::size_t lo = 2; lo <= n && blocks_ok; lo *= 2) {
                const std::size_t hi = std::min(2 * lo, n + 1);
                std::vector<std::uint64_t> a(arr.begin() + lo - 1, arr.begin() + (hi - 1));
                std::vector<std::uint64_t> b(out.begin() + lo - 1, out.begin() + (hi - 1));
                if (!std::is_sorted(b.begin(), b.end())) blocks_ok = false;
                std::sort(a.begin(), a.end());
                if (a != b) blocks_ok = false;
            }
        }
        ok &= blocks_ok;
        note += "block multisets preserved on 100 shuffles at N=10^4";
    }
    report("C8 permutation-construction", ok, note);
}

void criterion9(const std::vector<VarianceProbe>& probes64, const LilEstimate& est_6a,
                const LilEstimate& est_6b_sl, const LilEstimate& est_6b_p2,
                const LilEstimate& est_c1, const LilEstimate& est_c0) {
    begin();
    double worst = 0.0;
    auto widen = [](ExperimentConfig cfg) {
        cfg.precision_guard = 128;
        return cfg;
    };
    {
        const auto specs = variance_probes();
        for (std::size_t i = 0; i < specs.size(); ++i) {
            const VarianceProbe wide = variance_probe(widen(specs[i].cfg), specs[i].cfg.n_max, 0);
            worst = std::max(worst, std::abs(wide.mean - probes64[i].mean));
        }
    }
    auto ladder = [&](const LilEstimate& base) {
        const LilEstimate wide = run_experiment(widen(base.config), 0);
        for (std::size_t i = 0; i < base.samples.size(); ++i) {
            worst = std::max(worst, std::abs(base.samples[i].stat_runmax -
                                             wide.samples[i].stat_runmax));
            worst = std::max(worst, std::abs(base.samples[i].stat_final -
                                             wide.samples[i].stat_final));
        }
    };
    ladder(est_6a);
    ladder(est_6b_sl);
    ladder(est_6b_p2);
    ladder(est_c1);
    ladder(est_c0);
    const bool ladder_ok = worst <= 1e-9;

    // byte determinism: the same config twice gives identical CSV
    const LilEstimate again = run_experiment(est_c1.config, 0);
    std::ostringstream a, b;
    write_csv(est_c1, a);
    write_csv(again, b);
    const bool bytes_ok = a.str() == b.str();

    report("C9 precision-ladder", ladder_ok && bytes_ok,
           "guard 64 -> 128 worst statistic drift = " + fmt(worst) +
               " (<= 1e-9); repeated run byte-identical = " + std::to_string(bytes_ok));
}

}  // namespace

int main() {
    std::printf("acceptance suite, %u hardware threads\n",
                std::max(1u, std::thread::hardware_concurrency()));
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    std::vector<VarianceProbe> probes;
    criterion5(probes);
    LilEstimate est_6a, est_6b_sl, est_6b_p2, est_c1, est_c0;
    criterion6(est_6a, est_6b_sl, est_6b_p2);
    criterion7(est_c1, est_c0);
    criterion8();
    criterion9(probes, est_6a, est_6b_sl, est_6b_p2, est_c1, est_c0);
    std::printf("%s: %d criterion(s) failed\n", g_failures ? "FAIL" : "PASS", g_failures);
    return g_failures ? 1 : 0;
}
