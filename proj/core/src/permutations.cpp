#include "lacuna/permutations.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

namespace lacuna {

// ---------------------------------------------------------------------------
// solution pairs
// ---------------------------------------------------------------------------

static void recompute_certificate(SolutionPairs& sp) {
    const auto& p = sp.pairs;
    sp.strictly_increasing = true;
    sp.ratio_above_two = true;
    sp.ratio_diverges = true;
    std::unordered_set<std::uint64_t> seen;
    sp.disjoint_indices = true;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!seen.insert(p[i].first).second) sp.disjoint_indices = false;
        if (!seen.insert(p[i].second).second) sp.disjoint_indices = false;
        if (i == 0) continue;
        const auto [k1, l1] = p[i - 1];
        const auto [k2, l2] = p[i];
        if (k2 <= k1 || l2 <= l1) sp.strictly_increasing = false;
        if (k2 <= 2 * k1 || l2 <= 2 * l1) sp.ratio_above_two = false;
        if (l2 < (i + 2) * l1) sp.ratio_diverges = false;
    }
    if (p.empty()) {
        sp.strictly_increasing = sp.ratio_above_two = sp.ratio_diverges = false;
        sp.disjoint_indices = false;
    }
}

SolutionPairs find_solution_pairs(const IntegerSequence& seq, long a, long b,
                                  const mpz_class& c, std::uint64_t max_pairs,
                                  PairGrowth policy, std::uint64_t min_index) {
    if (a <= 0 || b <= 0)
        throw std::invalid_argument("find_solution_pairs: need a > 0 and b > 0");
    SolutionPairs out;
    out.a = a;
    out.b = b;
    out.c = c;
    out.policy = policy;
    out.requested = max_pairs;

    const auto& t = seq.terms();
    std::unordered_set<std::uint64_t> used;
    mpz_class rhs, nl;
    for (std::uint64_t k = 1; k <= t.size() && out.pairs.size() < max_pairs; ++k) {
        // a*n_k - c = b*n_l
        rhs = a * t[k - 1] - c;
        if (rhs < 1) continue;
        if (mpz_divisible_ui_p(rhs.get_mpz_t(), static_cast<unsigned long>(b)) == 0) continue;
        nl = rhs / b;
        auto it = std::lower_bound(t.begin(), t.end(), nl);
        if (it == t.end() || *it != nl) continue;
        const auto l = static_cast<std::uint64_t>(it - t.begin()) + 1;
        if (l == k) continue;

        if (k < min_index || l < min_index) continue;
        if (used.count(k) || used.count(l)) continue;
        if (policy == PairGrowth::divergent && !out.pairs.empty()) {
            const auto [kp, lp] = out.pairs.back();
            const std::uint64_t i = out.pairs.size();  // index of the previous pair
            if (k < 2 * kp + 1) continue;
            if (l < std::max(2 * lp + 1, (i + 2) * lp)) continue;
        }
        used.insert(k);
        used.insert(l);
        out.pairs.emplace_back(k, l);
    }
    recompute_certificate(out);
    return out;
}

// ---------------------------------------------------------------------------
// plans
// ---------------------------------------------------------------------------

std::uint64_t PermutationPlan::max_image_index() const {
    std::uint64_t m = 0;
    for (auto v : materialized) m = std::max(m, v);
    return m;
}

PermutationPlan identity_plan(std::uint64_t n_max) {
    PermutationPlan p;
    p.kind = PermutationKind::identity;
    p.materialized.resize(n_max);
    for (std::uint64_t i = 0; i < n_max; ++i) p.materialized[i] = i + 1;
    return p;
}

std::vector<std::uint64_t> block_sorted(const std::vector<std::uint64_t>& arrangement,
                                        double theta) {
    if (!(theta > 1.0)) throw std::invalid_argument("block_sorted: theta must be > 1");
    std::vector<std::uint64_t> out = arrangement;
    const double n = static_cast<double>(out.size());
    double lo = theta;  // block m covers positions theta^m <= k < theta^(m+1)
    while (lo <= n) {
        const double hi = lo * theta;
        const auto first = static_cast<std::size_t>(std::ceil(lo));
        auto last = static_cast<std::size_t>(std::ceil(hi));  // exclusive
        last = std::min<std::size_t>(last, out.size() + 1);
        if (first < last)
            std::sort(out.begin() + static_cast<std::ptrdiff_t>(first - 1),
                      out.begin() + static_cast<std::ptrdiff_t>(last - 1));
        lo = hi;
    }
    return out;
}

PermutationPlan block_sorted_plan(const std::vector<std::uint64_t>& arrangement, double theta) {
    PermutationPlan p;
    p.kind = PermutationKind::block_sorted;
    p.theta = theta;
    p.materialized = block_sorted(arrangement, theta);
    return p;
}

static int floor_log10(std::uint64_t n) {
    int d = 0;
    while (n >= 10) { n /= 10; ++d; }
    return d;
}

// pairs wanted in the prefix of length N (even)
static std::uint64_t pairs_at(std::uint64_t n) {
    return n / 2 - static_cast<std::uint64_t>(floor_log10(n));
}

PermutationPlan build_counterexample(const SolutionPairs& pairs, std::uint64_t n_max) {
    if (n_max < 2 || n_max % 2 != 0)
        throw std::invalid_argument("build_counterexample: N_max must be even and >= 2");
    const std::uint64_t need = pairs_at(n_max);
    if (pairs.size() < need)
        throw std::invalid_argument("build_counterexample: need " + std::to_string(need) +
                                    " solution pairs for N_max=" + std::to_string(n_max) +
                                    ", have " + std::to_string(pairs.size()));

    PermutationPlan plan;
    plan.kind = PermutationKind::pair_interleave;
    plan.pairs = pairs;
    plan.materialized.reserve(n_max);

    std::unordered_set<std::uint64_t> image;
    std::uint64_t j_cur = 0;  // pairs placed
    std::uint64_t filler_m = 0;
    std::vector<std::uint64_t> fresh;
    for (std::uint64_t n = 2; n <= n_max; n += 2) {
        fresh.clear();
        const std::uint64_t j_target = pairs_at(n);
        while (j_cur < j_target) {
            const auto [k, l] = pairs.pairs[j_cur];
            if (!image.insert(k).second || !image.insert(l).second)
                throw std::logic_error("build_counterexample: pair index already in prefix");
            fresh.push_back(k);
            fresh.push_back(l);
            ++j_cur;
        }
        while (image.size() < n) {
            ++filler_m;
            if (image.insert(filler_m).second) fresh.push_back(filler_m);
        }
        if (static_cast<double>(filler_m) > 2.0 * std::log(static_cast<double>(n)))
            throw std::invalid_argument(
                "build_counterexample: filler M=" + std::to_string(filler_m) +
                " exceeds 2 ln N at N=" + std::to_string(n) +
                "; pairs too dense near the small indices");
        std::sort(fresh.begin(), fresh.end());
        for (auto v : fresh) plan.materialized.push_back(v);
    }
    return plan;
}

ValidationReport validate(const PermutationPlan& plan, std::uint64_t n_max) {
    ValidationReport rep;
    n_max = std::min<std::uint64_t>(n_max, plan.materialized.size());

    // bijectivity on the materialized prefix
    {
        std::unordered_set<std::uint64_t> seen;
        rep.bijective = true;
        for (std::uint64_t pos = 0; pos < n_max; ++pos) {
            const std::uint64_t v = plan.materialized[pos];
            if (v == 0 || !seen.insert(v).second) {
                rep.bijective = false;
                rep.detail = "duplicate or zero index at position " + std::to_string(pos + 1);
                break;
            }
        }
        if (rep.bijective && plan.kind != PermutationKind::pair_interleave) {
            // image must be exactly {1..N}
            for (std::uint64_t pos = 0; pos < n_max && rep.bijective; ++pos)
                if (plan.materialized[pos] > n_max) {
                    rep.bijective = false;
                    rep.detail = "index " + std::to_string(plan.materialized[pos]) +
                                 " outside {1..N}";
                }
        }
    }

    if (plan.kind == PermutationKind::pair_interleave && rep.bijective) {
        if (!plan.pairs) {
            rep.prefix_sets_match = false;
            rep.detail = "pair_interleave plan without pairs";
        } else {
            const auto& pr = plan.pairs->pairs;
            std::unordered_set<std::uint64_t> image, required;
            std::uint64_t j_cur = 0, filler_m = 0, pos = 0;
            for (std::uint64_t n = 2; n <= n_max && rep.prefix_sets_match; n += 2) {
                // independent reconstruction of the required union at N
                const std::uint64_t j_target = pairs_at(n);
                if (j_target > pr.size()) break;
                while (j_cur < j_target) {
                    required.insert(pr[j_cur].first);
                    required.insert(pr[j_cur].second);
                    ++j_cur;
                }
                while (required.size() < n) {
                    ++filler_m;
                    required.insert(filler_m);
                }
                image.insert(plan.materialized[pos++]);
                image.insert(plan.materialized[pos++]);
                if (image != required) {
                    rep.prefix_sets_match = false;
                    rep.detail = "prefix set mismatch at N=" + std::to_string(n);
                    break;
                }
                const double ln_n = std::log(static_cast<double>(n));
                const double l10_n = std::log10(static_cast<double>(n));
                rep.max_filler = std::max(rep.max_filler, filler_m);
                rep.max_filler_over_log_e =
                    std::max(rep.max_filler_over_log_e, static_cast<double>(filler_m) / ln_n);
                if (l10_n > 0)
                    rep.max_filler_over_log10 = std::max(
                        rep.max_filler_over_log10, static_cast<double>(filler_m) / l10_n);
                if (static_cast<double>(filler_m) > 2.0 * ln_n) {
                    rep.filler_bounded = false;
                    rep.detail = "filler bound violated at N=" + std::to_string(n);
                }
            }
        }
    }

    rep.pass = rep.bijective && rep.prefix_sets_match && rep.filler_bounded;
    return rep;
}

void export_permutation(const PermutationPlan& plan, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (std::size_t pos = 0; pos < plan.materialized.size(); ++pos)
        out << (pos + 1) << " " << plan.materialized[pos] << "\n";
}

}  // namespace lacuna
