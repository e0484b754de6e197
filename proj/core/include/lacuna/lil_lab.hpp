#pragma once

// Monte Carlo harness for law-of-the-iterated-logarithm statistics.
//
// Per sample x (drawn deterministically from the config seed), the engine
// computes either
//   sums:        |S_N| / sqrt(2 N LL(N)),  S_N = sum_{k<=N} f({n_{sigma(k)} x})
//   discrepancy:  N D_N / sqrt(2 N LL(N))
// at geometric checkpoints, with LL(N) = max(1, log(max(1, log N))) in
// natural logs.  The running max over checkpoints >= N_min is the desk-scale
// surrogate for the limsup; the value at N_max is reported alongside.
//
// Fractional parts are exact: {2^e x} is a bit-window read and general n go
// through frac_mul, with the precision P derived from the largest index the
// permutation touches plus the configured guard bits.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lacuna/discrepancy.hpp"
#include "lacuna/experiment_config.hpp"
#include "lacuna/periodic.hpp"
#include "lacuna/permutations.hpp"
#include "lacuna/unit_fraction.hpp"

namespace lacuna {

struct SampleRecord {
    std::uint64_t sample_index = 0;
    std::uint64_t x_top64 = 0;     // top 64 bits of the sample point
    double stat_runmax = 0.0;
    double stat_final = 0.0;
    double prediction = 0.0;       // NaN when the config has no prediction
};

struct Aggregate {
    double mean = 0.0, median = 0.0, q25 = 0.0, q75 = 0.0, min = 0.0, max = 0.0;
};

struct PredictionComparison {
    bool defined = false;           // any prediction configured
    double median_ratio = 0.0;      // median of stat_runmax / prediction
    bool rank_corr_defined = false; // false when the prediction is constant
    double spearman_runmax = 0.0;   // rank correlation, runmax vs prediction
    double cov_stat = 0.0;          // coefficient of variation of stat_runmax
    double cov_prediction = 0.0;
};

struct LilEstimate {
    ExperimentConfig config;
    std::vector<SampleRecord> samples;  // ordered by sample_index
    Aggregate runmax;
    Aggregate final;
    PredictionComparison comparison;
    std::uint64_t max_index_touched = 0;  // largest sequence index evaluated
    long precision_bits = 0;
};

// The fully resolved experiment: permutation materialized (when not identity),
// sequence prefix materialized (when no 2-power fast path exists).
class ResolvedExperiment {
  public:
    explicit ResolvedExperiment(const ExperimentConfig& cfg);

    const ExperimentConfig& config() const { return cfg_; }
    long precision_bits() const { return precision_; }
    std::uint64_t max_index() const { return max_index_; }
    const std::optional<PermutationPlan>& plan() const { return plan_; }

    UnitFraction sample(std::uint64_t index) const;
    // {n_{sigma(k)} x} as a double, exact up to the top-64 truncation
    double frac_at(const UnitFraction& x, std::uint64_t position) const;

    SampleRecord run_sample(std::uint64_t index) const;  // full statistic
    double partial_sum(const UnitFraction& x, std::uint64_t n) const;  // S_n, sums only

  private:
    ExperimentConfig cfg_;
    PeriodicFunction fn_;
    std::optional<PermutationPlan> plan_;   // nullopt = identity, applied implicitly
    std::optional<IntegerSequence> terms_;  // materialized when needed
    bool exp2_path_ = false;                // n_k = 2^e(k)
    long exp2_factor_ = 0;                  // e(k) = factor*k; 0 = triangular
    std::uint64_t max_index_ = 0;
    long precision_ = 0;
    PrecisionBudget budget_;
    std::vector<std::size_t> checkpoints_;
    double prediction_for(const UnitFraction& x) const;

    friend LilEstimate run_experiment(const ExperimentConfig&, unsigned);
};

// Runs cfg.samples independent samples (parallel over workers; results merged
// by sample index, so thread count never changes the output).
LilEstimate run_experiment(const ExperimentConfig& cfg, unsigned threads = 0);

struct VarianceProbe {
    double mean = 0.0;      // average of S_N^2 / N over samples
    double std_error = 0.0;
    std::uint64_t n_probe = 0;
    std::uint64_t samples = 0;
};

// CLT-scale check of the variance identity: E[S_N^2]/N for the sums
// statistic at N = n_probe.
VarianceProbe variance_probe(const ExperimentConfig& cfg, std::uint64_t n_probe,
                             unsigned threads = 0);

// CSV: sample_index,x_top64_hex,stat_runmax,stat_final,prediction
void write_csv(const LilEstimate& est, std::ostream& out);
// Flat text summary with aggregates and a config echo block.
void write_summary(const LilEstimate& est, std::ostream& out, const std::string& version);

// Comparison report for per-sample records that carry predictions: median of
// stat_runmax/prediction, Spearman rank correlation (undefined for constant
// predictions), coefficients of variation of both columns.
PredictionComparison compare_prediction(const std::vector<SampleRecord>& samples);

// Spearman rank correlation with average ranks on ties; returns nullopt when
// either side is constant.
std::optional<double> spearman(const std::vector<double>& a, const std::vector<double>& b);

double lil_normalizer(std::uint64_t n);  // sqrt(2 N LL(N))

}  // namespace lacuna
