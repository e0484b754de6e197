#pragma once

// Strictly increasing integer sequences n_1 < n_2 < ... with generator
// metadata and exact gap-ratio reporting.
//
// Three named generators cover the standard cases:
//   power            n_k = base^k
//   power_minus_one  n_k = base^k - 1
//   superlacunary    n_k = 2^(k(k+1)/2), so n_{k+1}/n_k = 2^(k+1)
// plus `custom` sequences loaded from a text file (one base-10 integer per
// line, strictly increasing, '#' starts a comment).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>
#include <gmpxx.h>

namespace lacuna {

enum class SequenceKind { power, power_minus_one, superlacunary, custom };

struct SequenceGenerator {
    SequenceKind kind = SequenceKind::custom;
    std::uint64_t base = 0;  // power / power_minus_one only
    std::string source;      // custom only: originating path, informational

    std::string describe() const;
};

struct GapReport {
    mpq_class min_ratio;                // exact min of n_{k+1}/n_k
    bool is_hadamard = false;           // min_ratio > 1
    std::vector<double> ratio_trend;    // sampled ratios along k, for ->inf checks
};

class IntegerSequence {
  public:
    IntegerSequence() = default;
    IntegerSequence(std::vector<mpz_class> terms, SequenceGenerator gen);

    std::size_t size() const { return terms_.size(); }
    // 1-based, matching the usual indexing n_1, n_2, ...
    const mpz_class& term(std::size_t k) const { return terms_.at(k - 1); }
    const std::vector<mpz_class>& terms() const { return terms_; }
    const SequenceGenerator& generator() const { return gen_; }

    // e with n_k = 2^e, when the generator guarantees the form; nullopt
    // otherwise.  Valid for any k >= 1, even beyond the materialized prefix,
    // which is what lets experiments on 2-power sequences skip
    // materialization entirely.
    std::optional<long> exponent_of_two(std::uint64_t k) const;

  private:
    std::vector<mpz_class> terms_;
    SequenceGenerator gen_;
};

IntegerSequence gen_power(std::uint64_t base, std::size_t n);
IntegerSequence gen_power_minus_one(std::uint64_t base, std::size_t n);
IntegerSequence gen_superlacunary(std::size_t n);

// Load a custom sequence; throws std::invalid_argument on parse errors or
// monotonicity violations (with line number).
IntegerSequence load_sequence_file(const std::string& path);

// Exact gap statistics over terms k >= drop_prefix+1.  Requires at least two
// terms after the drop.
GapReport gap_report(const IntegerSequence& seq, std::size_t drop_prefix = 0);

// Sorted union of {a*n_k} and {b*n_k}, duplicates collapsed.  The returned
// sequence has a `custom` generator tag describing its origin.
IntegerSequence merge_scaled(const IntegerSequence& seq, std::uint64_t a, std::uint64_t b);

}  // namespace lacuna
