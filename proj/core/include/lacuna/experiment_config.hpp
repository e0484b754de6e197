#pragma once

// Experiment configuration: flat "key = value" text with dotted keys,
// '#' comments, one key per line.  Unknown keys are rejected.  The canonical
// serialization round-trips through the parser, which is what lets run
// summaries embed a re-usable copy of their configuration.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>
#include <gmpxx.h>

#include "lacuna/periodic.hpp"
#include "lacuna/permutations.hpp"
#include "lacuna/sequences.hpp"

namespace lacuna {

enum class FunctionKind { cos_poly, indicator };
enum class StatisticKind { sums, discrepancy };
enum class PredictionKind { none, constant, norm, sigma_identity, cos_formula };
// shuffle = seed-keyed Fisher-Yates of {1..N}; block_sorted = that shuffle
// repaired to be ascending within the theta-blocks
enum class ConfigPermKind { identity, shuffle, block_sorted, pair_interleave };

struct ExperimentConfig {
    // sequence.*
    SequenceKind seq_kind = SequenceKind::power;
    std::uint64_t seq_base = 2;
    std::uint64_t seq_length = 0;  // 0 = derive from lil.N_max and the permutation
    std::string seq_path;          // custom only

    // function.*
    FunctionKind fn_kind = FunctionKind::cos_poly;
    std::vector<mpq_class> fn_cos{mpq_class(1)};  // cos_poly coefficients a_1..a_d
    std::vector<mpq_class> fn_sin;                // optional b_1..b_d
    mpq_class fn_lo = mpq_class(0);               // indicator [lo,hi)
    mpq_class fn_hi = mpq_class(1, 2);

    // permutation.*
    ConfigPermKind perm_kind = ConfigPermKind::identity;
    double perm_theta = 2.0;
    long query_a = 1, query_b = 2;
    mpz_class query_c = 0;
    PairGrowth perm_growth = PairGrowth::packed;
    std::uint64_t perm_min_index = 0;  // 0 = derive 2*floor(log10 N_max)+2

    // lil.*
    StatisticKind statistic = StatisticKind::sums;
    std::uint64_t n_max = 1 << 12;
    double checkpoint_ratio = 1.0905077326652577;  // 2^(1/8)
    std::uint64_t n_min = 64;
    std::uint64_t samples = 100;
    std::uint64_t seed = 1;
    long precision_guard = 64;
    long precision_bits = 0;  // manual P override; 0 = derive from the run

    // prediction.*
    PredictionKind pred_kind = PredictionKind::none;
    double pred_value = 0.0;        // constant
    std::uint64_t pred_theta = 2;   // sigma_identity
    unsigned pred_k = 24;           // sigma_identity
    long pred_c = 0;                // cos_formula

    PeriodicFunction build_function() const;

    std::string serialize() const;          // canonical key order
    std::string hash_hex() const;           // FNV-1a 64 of the serialization
    bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);
// key=value override strings, applied in order
void apply_overrides(ExperimentConfig& cfg, const std::vector<std::string>& overrides);

}  // namespace lacuna
