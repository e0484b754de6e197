#pragma once

// Exact counting of solutions of a*n_k + b*n_l = c over 1 <= k,l <= N, and
// multiplicity profiles over all right-hand sides c.
//
// Counting convention: ordered pairs (k,l); pairs with k = l are tallied
// separately so that callers can apply the "k != l when c = 0" rule without
// recounting.

#include <cstdint>
#include <string>
#include <vector>
#include <gmpxx.h>

#include "lacuna/sequences.hpp"

namespace lacuna {

struct DiophQuery {
    long a = 0;       // nonzero
    long b = 0;       // nonzero
    mpz_class c;
    std::size_t n = 0;  // prefix length, 1 <= n <= seq.size()
};

struct SolutionCount {
    std::uint64_t ordered_count = 0;   // all ordered pairs, k = l included
    std::uint64_t diagonal_count = 0;  // pairs with k = l
    std::string convention = "ordered pairs (k,l), 1<=k,l<=N; headline count at c=0 excludes k=l";

    std::uint64_t off_diagonal() const { return ordered_count - diagonal_count; }
    // The count the boundedness condition talks about.
    std::uint64_t headline(const mpz_class& c) const {
        return c == 0 ? off_diagonal() : ordered_count;
    }
};

// O(N) membership lookups against a sorted index of the prefix.
SolutionCount count_solutions(const IntegerSequence& seq, const DiophQuery& q);

// O(N^2) double loop; the testing oracle.
SolutionCount brute_force_count(const IntegerSequence& seq, const DiophQuery& q);

struct MultiplicityReport {
    std::uint64_t max_nonzero = 0;  // largest multiplicity among values != 0, k != l
    mpz_class witness_c;            // a value attaining max_nonzero (smallest such)
    std::uint64_t zero_count = 0;   // multiplicity of the value 0, k != l
};

// Multiset of all a*n_k + b*n_l over k != l, 1 <= k,l <= N, grouped by value.
// Values are interned as compact sign+magnitude byte strings and sorted, which
// keeps memory flat at ~(value bytes) per pair.  Throws resource_error when
// N^2 exceeds max_pairs (default 10^8).
MultiplicityReport max_multiplicity(const IntegerSequence& seq, long a, long b,
                                    std::size_t n, std::uint64_t max_pairs = 100'000'000);

enum class GrowthVerdict { bounded, growing };

struct ConditionCell {
    std::size_t n;
    MultiplicityReport report;
};

struct ConditionRow {
    long a;
    long b;
    std::vector<ConditionCell> cells;       // one per grid N, increasing
    GrowthVerdict verdict = GrowthVerdict::bounded;
    bool growing_at_zero = false;           // which side grew between the two largest N
    bool growing_at_nonzero = false;
};

// Profile every (a,b), a,b != 0, |a|,|b| <= degree over the N grid.  The
// verdict is heuristic: "growing" when the max multiplicity (at zero or at
// nonzero c) strictly increases between the two largest grid values.
std::vector<ConditionRow> boundedness_verdict(const IntegerSequence& seq, long degree,
                                           const std::vector<std::size_t>& n_grid);

}  // namespace lacuna
