#pragma once

// Permutations of index sequences: identity, the block-sorted rearrangement
// (ascending within blocks theta^m <= k < theta^(m+1)), and the
// pair-interleave permutation assembled from Diophantine solution pairs,
// whose prefix at each even N is
//   { k_i, i <= N/2 - floor(log10 N) } u { l_i, ... } u { 1..M },
// M grown until the union has exactly N elements (and always M <= 2 ln N).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>
#include <gmpxx.h>

#include "lacuna/sequences.hpp"

namespace lacuna {

// How solution pairs are thinned before building the permutation.
//
// `divergent` follows the asymptotic construction: ratios k_{i+1}/k_i and
// l_{i+1}/l_i stay > 2 and the l-ratio is forced >= i+2, so the ratios
// diverge.  Indices then grow factorially, which caps the usable pair count
// at a handful for any sequence that fits in memory.
//
// `packed` keeps every raw solution whose indices are fresh (disjoint from
// all previously selected k's and l's) and above min_index; this is the
// desk-scale mode that supports prefixes of thousands of pairs.
enum class PairGrowth { divergent, packed };

struct SolutionPairs {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;  // (k_i, l_i), 1-based
    long a = 0, b = 0;   // query a*n_k - b*n_l = c, a,b > 0
    mpz_class c;
    PairGrowth policy = PairGrowth::divergent;
    std::uint64_t requested = 0;  // max_pairs asked for

    // growth certificate, recomputed from the selected pairs
    bool strictly_increasing = false;  // k_j > k_i, l_j > l_i for j > i
    bool ratio_above_two = false;      // k_{i+1}/k_i > 2 and l_{i+1}/l_i > 2
    bool ratio_diverges = false;       // l_{i+1}/l_i >= i+2 for all i
    bool disjoint_indices = false;     // all k_i, l_i pairwise distinct

    std::size_t size() const { return pairs.size(); }
};

// Scans raw solutions of a*n_k - b*n_l = c (k != l) in increasing k and
// applies the growth policy.  Stops at max_pairs or at the end of the
// sequence; finding fewer pairs than requested is not an error (callers that
// need a minimum check `size()`).
SolutionPairs find_solution_pairs(const IntegerSequence& seq, long a, long b,
                                  const mpz_class& c, std::uint64_t max_pairs,
                                  PairGrowth policy = PairGrowth::divergent,
                                  std::uint64_t min_index = 2);

enum class PermutationKind { identity, block_sorted, pair_interleave };

struct PermutationPlan {
    PermutationKind kind = PermutationKind::identity;
    double theta = 2.0;                   // block_sorted
    std::optional<SolutionPairs> pairs;   // pair_interleave
    // sigma as an explicit array: sigma[pos-1] is the index at position pos.
    // identity/block_sorted map {1..N} onto {1..N}; pair_interleave maps onto
    // the interleaved prefix sets, so its image is injective but not an
    // initial segment.
    std::vector<std::uint64_t> materialized;

    std::uint64_t max_image_index() const;
};

PermutationPlan identity_plan(std::uint64_t n_max);

// Sort values ascending within each block {k : theta^m <= k < theta^(m+1)},
// m >= 1; positions outside every block (k < theta) are untouched.  The input
// is any arrangement of distinct indices.
std::vector<std::uint64_t> block_sorted(const std::vector<std::uint64_t>& arrangement,
                                        double theta);

PermutationPlan block_sorted_plan(const std::vector<std::uint64_t>& arrangement, double theta);

// Interleaves the solution pairs into a single permutation prefix of length
// n_max (n_max even).  Each step N-2 -> N appends the two newly required
// indices in ascending order.  Throws std::invalid_argument when the pairs
// run out, internal errors on nesting violations.
PermutationPlan build_counterexample(const SolutionPairs& pairs, std::uint64_t n_max);

struct ValidationReport {
    bool pass = false;
    bool bijective = false;           // materialized indices all distinct
    bool prefix_sets_match = true;    // pair_interleave only: union formula holds
    bool filler_bounded = true;       // M <= 2 ln N at every even N
    std::uint64_t max_filler = 0;
    double max_filler_over_log_e = 0.0;   // max over N of M / ln N
    double max_filler_over_log10 = 0.0;   // same with log10, for the record
    std::string detail;               // first failure witness, if any
};

ValidationReport validate(const PermutationPlan& plan, std::uint64_t n_max);

// One "position index" pair per line, 1-based.
void export_permutation(const PermutationPlan& plan, const std::string& path);

}  // namespace lacuna
