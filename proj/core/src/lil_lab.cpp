#include "lacuna/lil_lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

#include "lacuna/errors.hpp"

namespace lacuna {

double lil_normalizer(std::uint64_t n) {
    const double ln = std::max(1.0, std::log(static_cast<double>(n)));
    const double ll = std::max(1.0, std::log(ln));
    return std::sqrt(2.0 * static_cast<double>(n) * ll);
}

// ---------------------------------------------------------------------------
// resolution
// ---------------------------------------------------------------------------

static int floor_log10_u64(std::uint64_t n) {
    int d = 0;
    while (n >= 10) { n /= 10; ++d; }
    return d;
}

static std::uint64_t pairs_needed(std::uint64_t n_max) {
    return n_max / 2 - static_cast<std::uint64_t>(floor_log10_u64(n_max));
}

// deterministic Fisher-Yates keyed by the seed; independent of samples
static std::vector<std::uint64_t> seeded_shuffle(std::uint64_t n, std::uint64_t seed) {
    std::vector<std::uint64_t> arr(n);
    for (std::uint64_t i = 0; i < n; ++i) arr[i] = i + 1;
    std::uint64_t state = mix64(seed ^ 0x5851f42d4c957f2dULL);
    for (std::uint64_t i = n; i > 1; --i) {
        const std::uint64_t j = splitmix64_next(state) % i;
        std::swap(arr[i - 1], arr[j]);
    }
    return arr;
}

// rough bit count of materializing the first `len` terms; used to refuse
// absurd materializations (superlacunary terms grow like 2^(k^2/2))
static double materialization_bits(SequenceKind kind, std::uint64_t base, std::uint64_t len) {
    const double l = static_cast<double>(len);
    switch (kind) {
        case SequenceKind::superlacunary: return l * l * l / 6.0;
        case SequenceKind::power:
        case SequenceKind::power_minus_one:
            return l * l / 2.0 * std::log2(static_cast<double>(base));
        case SequenceKind::custom: return 0.0;
    }
    return 0.0;
}

static IntegerSequence materialize(const ExperimentConfig& cfg, std::uint64_t len) {
    if (materialization_bits(cfg.seq_kind, cfg.seq_base, len) > 2.1e9)
        throw resource_error("sequence prefix of length " + std::to_string(len) +
                             " would not fit in memory; reduce lil.N_max");
    switch (cfg.seq_kind) {
        case SequenceKind::power: return gen_power(cfg.seq_base, len);
        case SequenceKind::power_minus_one: return gen_power_minus_one(cfg.seq_base, len);
        case SequenceKind::superlacunary: return gen_superlacunary(len);
        case SequenceKind::custom: {
            IntegerSequence s = load_sequence_file(cfg.seq_path);
            if (s.size() < len)
                throw config_error("custom sequence has " + std::to_string(s.size()) +
                                   " terms, need " + std::to_string(len));
            return s;
        }
    }
    throw config_error("unreachable sequence kind");
}

ResolvedExperiment::ResolvedExperiment(const ExperimentConfig& cfg)
    : cfg_(cfg), fn_(cfg.build_function()) {
    // permutation first: it decides how far into the sequence we reach
    switch (cfg_.perm_kind) {
        case ConfigPermKind::identity:
            plan_.reset();
            max_index_ = cfg_.n_max;
            break;
        case ConfigPermKind::shuffle: {
            PermutationPlan p;
            p.kind = PermutationKind::identity;
            p.materialized = seeded_shuffle(cfg_.n_max, cfg_.seed);
            plan_ = std::move(p);
            max_index_ = cfg_.n_max;
            break;
        }
        case ConfigPermKind::block_sorted: {
            plan_ = block_sorted_plan(seeded_shuffle(cfg_.n_max, cfg_.seed), cfg_.perm_theta);
            max_index_ = cfg_.n_max;
            break;
        }
        case ConfigPermKind::pair_interleave: {
            const std::uint64_t want = pairs_needed(cfg_.n_max);
            const std::uint64_t min_index =
                cfg_.perm_min_index
                    ? cfg_.perm_min_index
                    : 2 * static_cast<std::uint64_t>(floor_log10_u64(cfg_.n_max)) + 2;
            const std::uint64_t search_len =
                cfg_.seq_length ? cfg_.seq_length : cfg_.n_max + 2 * min_index + 64;
            IntegerSequence search_seq = materialize(cfg_, search_len);
            SolutionPairs pairs =
                find_solution_pairs(search_seq, cfg_.query_a, cfg_.query_b, cfg_.query_c,
                                    want, cfg_.perm_growth, min_index);
            if (pairs.size() < want)
                throw std::invalid_argument(
                    "pair_interleave: found " + std::to_string(pairs.size()) +
                    " solution pairs, need " + std::to_string(want) + " for N_max=" +
                    std::to_string(cfg_.n_max));
            plan_ = build_counterexample(pairs, cfg_.n_max);
            max_index_ = plan_->max_image_index();
            terms_ = std::move(search_seq);
            break;
        }
    }

    if (cfg_.seq_length && cfg_.seq_length < max_index_)
        throw config_error("sequence.N=" + std::to_string(cfg_.seq_length) +
                           " is shorter than the largest permuted index " +
                           std::to_string(max_index_));

    // 2-power fast path?
    IntegerSequence probe({}, {cfg_.seq_kind, cfg_.seq_base, cfg_.seq_path});
    exp2_path_ = probe.exponent_of_two(1).has_value();
    if (exp2_path_ && cfg_.seq_kind == SequenceKind::power)
        exp2_factor_ = *probe.exponent_of_two(1);

    long payload_bits = 0;
    if (exp2_path_) {
        payload_bits = *probe.exponent_of_two(max_index_);
        terms_.reset();  // never needed for evaluation
    } else {
        if (!terms_ || terms_->size() < max_index_) terms_ = materialize(cfg_, max_index_);
        payload_bits = static_cast<long>(
            mpz_sizeinbase(terms_->term(max_index_).get_mpz_t(), 2));
    }
    budget_ = PrecisionBudget{cfg_.precision_guard};
    precision_ = std::max<long>(128, payload_bits + cfg_.precision_guard);
    if (cfg_.precision_bits) {
        if (cfg_.precision_bits < precision_)
            throw config_error("lil.precision_bits=" + std::to_string(cfg_.precision_bits) +
                               " below the required " + std::to_string(precision_) +
                               " bits (largest multiplier plus guard)");
        precision_ = cfg_.precision_bits;
    }
    if (precision_ > (1L << 31))
        throw resource_error("experiment needs " + std::to_string(precision_) +
                             " bits of precision; reduce lil.N_max");
    checkpoints_ = geometric_checkpoints(cfg_.n_max, cfg_.checkpoint_ratio);
}

UnitFraction ResolvedExperiment::sample(std::uint64_t index) const {
    return sample_unit(cfg_.seed, index, precision_);
}

double ResolvedExperiment::frac_at(const UnitFraction& x, std::uint64_t position) const {
    const std::uint64_t idx = plan_ ? plan_->materialized[position - 1] : position;
    if (exp2_path_) {
        const long e = exp2_factor_ ? exp2_factor_ * static_cast<long>(idx)
                                    : static_cast<long>(idx * (idx + 1) / 2);
        return frac_shift_top64(x, e, budget_);
    }
    return frac_mul(terms_->term(idx), x, budget_).to_real();
}

double ResolvedExperiment::prediction_for(const UnitFraction& x) const {
    switch (cfg_.pred_kind) {
        case PredictionKind::none: return std::numeric_limits<double>::quiet_NaN();
        case PredictionKind::constant: return cfg_.pred_value;
        case PredictionKind::norm: return l2_norm(fn_);
        case PredictionKind::sigma_identity:
            return sigma_identity(fn_, cfg_.pred_theta, cfg_.pred_k).sigma;
        case PredictionKind::cos_formula: {
            const double xr = x.to_real();
            const double c = static_cast<double>(cfg_.pred_c);
            return std::sqrt((std::cos(2.0 * 3.1415926535897932384626433832795 * c * xr) + 2.0) /
                             2.0);
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

SampleRecord ResolvedExperiment::run_sample(std::uint64_t index) const {
    const UnitFraction x = sample(index);
    SampleRecord rec;
    rec.sample_index = index;
    rec.x_top64 = x.read_bits64(precision_ - 64);
    rec.prediction = prediction_for(x);

    double runmax = 0.0;
    bool any_cp = false;
    double final_stat = 0.0;

    if (cfg_.statistic == StatisticKind::sums) {
        double s = 0.0;
        std::size_t next_cp = 0;
        for (std::uint64_t k = 1; k <= cfg_.n_max; ++k) {
            s += eval(fn_, frac_at(x, k));
            while (next_cp < checkpoints_.size() && checkpoints_[next_cp] == k) {
                const double stat = std::abs(s) / lil_normalizer(k);
                final_stat = stat;
                if (k >= cfg_.n_min) {
                    runmax = std::max(runmax, stat);
                    any_cp = true;
                }
                ++next_cp;
            }
        }
    } else {
        IncrementalDiscrepancy inc;
        std::size_t next_cp = 0;
        for (std::uint64_t k = 1; k <= cfg_.n_max; ++k) {
            inc.insert(frac_at(x, k));
            while (next_cp < checkpoints_.size() && checkpoints_[next_cp] == k) {
                const double d = inc.evaluate().extreme;
                const double stat = static_cast<double>(k) * d / lil_normalizer(k);
                final_stat = stat;
                if (k >= cfg_.n_min) {
                    runmax = std::max(runmax, stat);
                    any_cp = true;
                }
                ++next_cp;
            }
        }
    }
    rec.stat_final = final_stat;
    rec.stat_runmax = any_cp ? runmax : final_stat;
    return rec;
}

double ResolvedExperiment::partial_sum(const UnitFraction& x, std::uint64_t n) const {
    double s = 0.0;
    for (std::uint64_t k = 1; k <= n; ++k) s += eval(fn_, frac_at(x, k));
    return s;
}

// ---------------------------------------------------------------------------
// aggregation
// ---------------------------------------------------------------------------

static double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    if (sorted.size() == 1) return sorted[0];
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    if (i + 1 >= sorted.size()) return sorted.back();
    return sorted[i] * (1.0 - frac) + sorted[i + 1] * frac;
}

static Aggregate aggregate(std::vector<double> v) {
    Aggregate a;
    if (v.empty()) return a;
    double s = 0.0;
    for (double x : v) s += x;
    a.mean = s / static_cast<double>(v.size());
    std::sort(v.begin(), v.end());
    a.min = v.front();
    a.max = v.back();
    a.median = quantile_sorted(v, 0.5);
    a.q25 = quantile_sorted(v, 0.25);
    a.q75 = quantile_sorted(v, 0.75);
    return a;
}

static std::vector<double> ranks_with_ties(const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> rank(v.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i + 1;
        while (j < order.size() && v[order[j]] == v[order[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j - 1)) / 2.0 + 1.0;
        for (std::size_t t = i; t < j; ++t) rank[order[t]] = avg;
        i = j;
    }
    return rank;
}

std::optional<double> spearman(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2) return std::nullopt;
    const auto ra = ranks_with_ties(a), rb = ranks_with_ties(b);
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < ra.size(); ++i) { ma += ra[i]; mb += rb[i]; }
    ma /= static_cast<double>(ra.size());
    mb /= static_cast<double>(rb.size());
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        const double da = ra[i] - ma, db = rb[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0) return std::nullopt;  // a side is constant
    return sab / std::sqrt(saa * sbb);
}

static double coefficient_of_variation(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    double m = 0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    if (m == 0.0) return 0.0;
    double ss = 0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1)) / m;
}

PredictionComparison compare_prediction(const std::vector<SampleRecord>& samples) {
    PredictionComparison cmp;
    cmp.defined = true;
    std::vector<double> runmax, preds, ratios;
    runmax.reserve(samples.size());
    preds.reserve(samples.size());
    for (const auto& r : samples) {
        runmax.push_back(r.stat_runmax);
        preds.push_back(r.prediction);
        if (r.prediction != 0.0 && !std::isnan(r.prediction))
            ratios.push_back(r.stat_runmax / r.prediction);
    }
    cmp.median_ratio = aggregate(std::move(ratios)).median;
    if (auto rc = spearman(runmax, preds)) {
        cmp.rank_corr_defined = true;
        cmp.spearman_runmax = *rc;
    }
    cmp.cov_stat = coefficient_of_variation(runmax);
    cmp.cov_prediction = coefficient_of_variation(preds);
    return cmp;
}

LilEstimate run_experiment(const ExperimentConfig& cfg, unsigned threads) {
    ResolvedExperiment exp(cfg);
    LilEstimate est;
    est.config = cfg;
    est.max_index_touched = exp.max_index();
    est.precision_bits = exp.precision_bits();
    est.samples.resize(cfg.samples);

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(cfg.samples));
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= cfg.samples) break;
            est.samples[i] = exp.run_sample(i);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::vector<double> runmax, fin;
    runmax.reserve(cfg.samples);
    fin.reserve(cfg.samples);
    for (const auto& r : est.samples) {
        runmax.push_back(r.stat_runmax);
        fin.push_back(r.stat_final);
    }
    est.runmax = aggregate(std::move(runmax));
    est.final = aggregate(std::move(fin));
    if (cfg.pred_kind != PredictionKind::none)
        est.comparison = compare_prediction(est.samples);
    return est;
}

VarianceProbe variance_probe(const ExperimentConfig& cfg, std::uint64_t n_probe,
                             unsigned threads) {
    if (n_probe < 1 || n_probe > cfg.n_max)
        throw std::invalid_argument("variance_probe: need 1 <= N_probe <= lil.N_max");
    ResolvedExperiment exp(cfg);
    std::vector<double> y(cfg.samples);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(cfg.samples));
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= cfg.samples) break;
            const double s = exp.partial_sum(exp.sample(i), n_probe);
            y[i] = s * s / static_cast<double>(n_probe);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    VarianceProbe out;
    out.n_probe = n_probe;
    out.samples = cfg.samples;
    double m = 0;
    for (double v : y) m += v;
    m /= static_cast<double>(y.size());
    out.mean = m;
    if (y.size() > 1) {
        double ss = 0;
        for (double v : y) ss += (v - m) * (v - m);
        out.std_error = std::sqrt(ss / static_cast<double>(y.size() - 1) /
                                  static_cast<double>(y.size()));
    }
    return out;
}

// ---------------------------------------------------------------------------
// output
// ---------------------------------------------------------------------------

static std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const LilEstimate& est, std::ostream& out) {
    out << "sample_index,x_top64_hex,stat_runmax,stat_final,prediction\n";
    char hex[20];
    for (const auto& r : est.samples) {
        std::snprintf(hex, sizeof(hex), "%016llx",
                      static_cast<unsigned long long>(r.x_top64));
        out << r.sample_index << "," << hex << "," << g17(r.stat_runmax) << ","
            << g17(r.stat_final) << "," << g17(r.prediction) << "\n";
    }
}

static void write_aggregate(std::ostream& out, const char* name, const Aggregate& a) {
    out << name << ".mean = " << g17(a.mean) << "\n";
    out << name << ".median = " << g17(a.median) << "\n";
    out << name << ".q25 = " << g17(a.q25) << "\n";
    out << name << ".q75 = " << g17(a.q75) << "\n";
    out << name << ".min = " << g17(a.min) << "\n";
    out << name << ".max = " << g17(a.max) << "\n";
}

void write_summary(const LilEstimate& est, std::ostream& out, const std::string& version) {
    out << "version = " << version << "\n";
    out << "config_hash = " << est.config.hash_hex() << "\n";
    out << "samples = " << est.samples.size() << "\n";
    out << "max_index_touched = " << est.max_index_touched << "\n";
    out << "precision_bits = " << est.precision_bits << "\n";
    write_aggregate(out, "stat_runmax", est.runmax);
    write_aggregate(out, "stat_final", est.final);
    if (est.comparison.defined) {
        out << "comparison.median_ratio = " << g17(est.comparison.median_ratio) << "\n";
        if (est.comparison.rank_corr_defined)
            out << "comparison.spearman_runmax = " << g17(est.comparison.spearman_runmax)
                << "\n";
        else
            out << "comparison.spearman_runmax = undefined (constant prediction)\n";
        out << "comparison.cov_stat = " << g17(est.comparison.cov_stat) << "\n";
        out << "comparison.cov_prediction = " << g17(est.comparison.cov_prediction) << "\n";
    }
    out << "--- config ---\n" << est.config.serialize() << "--- end config ---\n";
}

}  // namespace lacuna
