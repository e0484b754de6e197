#include "lacuna/diophantine.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

#include "lacuna/errors.hpp"

namespace lacuna {

static void validate(const IntegerSequence& seq, const DiophQuery& q) {
    if (q.a == 0 || q.b == 0)
        throw std::invalid_argument("diophantine: coefficients a, b must be nonzero");
    if (q.n < 1 || q.n > seq.size())
        throw std::invalid_argument("diophantine: prefix length out of range");
}

SolutionCount count_solutions(const IntegerSequence& seq, const DiophQuery& q) {
    validate(seq, q);
    const auto& t = seq.terms();
    const auto first = t.begin();
    const auto last = t.begin() + static_cast<std::ptrdiff_t>(q.n);

    SolutionCount out;
    mpz_class rhs, nl;
    for (std::size_t k = 1; k <= q.n; ++k) {
        // solve b*n_l = c - a*n_k
        rhs = q.c - q.a * t[k - 1];
        if (mpz_divisible_ui_p(rhs.get_mpz_t(), static_cast<unsigned long>(std::abs(q.b))) == 0)
            continue;
        nl = rhs / q.b;
        if (nl < 1) continue;
        auto it = std::lower_bound(first, last, nl);
        if (it != last && *it == nl) {
            ++out.ordered_count;
            if (static_cast<std::size_t>(it - first) + 1 == k) ++out.diagonal_count;
        }
    }
    return out;
}

SolutionCount brute_force_count(const IntegerSequence& seq, const DiophQuery& q) {
    validate(seq, q);
    const auto& t = seq.terms();
    // scale once so the pair loop is add + compare only
    std::vector<mpz_class> at(q.n), bt(q.n);
    for (std::size_t i = 0; i < q.n; ++i) {
        at[i] = q.a * t[i];
        bt[i] = q.b * t[i];
    }
    SolutionCount out;
    mpz_class s;
    for (std::size_t k = 0; k < q.n; ++k)
        for (std::size_t l = 0; l < q.n; ++l) {
            s = at[k] + bt[l];
            if (s == q.c) {
                ++out.ordered_count;
                if (k == l) ++out.diagonal_count;
            }
        }
    return out;
}

// ---------------------------------------------------------------------------
// max_multiplicity: interned byte-string multiset
// ---------------------------------------------------------------------------

// sign byte ('-', '0', '+') followed by big-endian magnitude with no leading
// zero byte; equal values encode identically, so grouping needs only
// lexicographic sorting.
static std::string encode_value(const mpz_class& v) {
    const int s = sgn(v);
    if (s == 0) return "0";
    std::string out(s < 0 ? "-" : "+");
    const std::size_t bytes = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
    out.resize(1 + bytes);
    std::size_t written = 0;
    mpz_export(out.data() + 1, &written, 1 /*MSB first*/, 1, 0, 0, v.get_mpz_t());
    out.resize(1 + written);
    return out;
}

static mpz_class decode_value(const std::string& enc) {
    if (enc == "0") return 0;
    mpz_class v;
    mpz_import(v.get_mpz_t(), enc.size() - 1, 1, 1, 0, 0, enc.data() + 1);
    if (enc[0] == '-') v = -v;
    return v;
}

MultiplicityReport max_multiplicity(const IntegerSequence& seq, long a, long b,
                                    std::size_t n, std::uint64_t max_pairs) {
    DiophQuery probe{a, b, 0, n};
    validate(seq, probe);
    const std::uint64_t pairs = static_cast<std::uint64_t>(n) * n;
    if (pairs > max_pairs)
        throw resource_error("max_multiplicity: " + std::to_string(pairs) +
                             " pairs exceed the budget of " + std::to_string(max_pairs) +
                             "; use a smaller N");

    const auto& t = seq.terms();
    std::vector<mpz_class> at(n), bt(n);
    for (std::size_t i = 0; i < n; ++i) {
        at[i] = a * t[i];
        bt[i] = b * t[i];
    }

    std::vector<std::string> values;
    values.reserve(pairs - n);
    MultiplicityReport rep;
    mpz_class s;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
            if (k == l) continue;
            s = at[k] + bt[l];
            if (s == 0)
                ++rep.zero_count;
            else
                values.push_back(encode_value(s));
        }
    std::sort(values.begin(), values.end());

    std::string best_enc;
    std::size_t i = 0;
    while (i < values.size()) {
        std::size_t j = i + 1;
        while (j < values.size() && values[j] == values[i]) ++j;
        const std::uint64_t mult = j - i;
        if (mult > rep.max_nonzero ||
            (mult == rep.max_nonzero && !best_enc.empty() &&
             decode_value(values[i]) < decode_value(best_enc))) {
            rep.max_nonzero = mult;
            best_enc = values[i];
        }
        i = j;
    }
    if (!best_enc.empty()) rep.witness_c = decode_value(best_enc);
    return rep;
}

std::vector<ConditionRow> boundedness_verdict(const IntegerSequence& seq, long degree,
                                           const std::vector<std::size_t>& n_grid) {
    if (degree < 1) throw std::invalid_argument("boundedness_verdict: degree must be >= 1");
    if (n_grid.size() < 1) throw std::invalid_argument("boundedness_verdict: empty N grid");
    for (std::size_t i = 1; i < n_grid.size(); ++i)
        if (n_grid[i] <= n_grid[i - 1])
            throw std::invalid_argument("boundedness_verdict: N grid must be increasing");

    std::vector<ConditionRow> rows;
    for (long a = -degree; a <= degree; ++a) {
        if (a == 0) continue;
        for (long b = -degree; b <= degree; ++b) {
            if (b == 0) continue;
            ConditionRow row{a, b, {}, GrowthVerdict::bounded, false, false};
            for (std::size_t n : n_grid)
                row.cells.push_back({n, max_multiplicity(seq, a, b, n)});
            if (row.cells.size() >= 2) {
                const auto& lo = row.cells[row.cells.size() - 2].report;
                const auto& hi = row.cells.back().report;
                row.growing_at_zero = hi.zero_count > lo.zero_count;
                row.growing_at_nonzero = hi.max_nonzero > lo.max_nonzero;
                if (row.growing_at_zero || row.growing_at_nonzero)
                    row.verdict = GrowthVerdict::growing;
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace lacuna
