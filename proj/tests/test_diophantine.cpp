#include <doctest.h>

#include <map>
#include <random>

#include "lacuna/diophantine.hpp"
#include "lacuna/errors.hpp"
#include "lacuna/sequences.hpp"

using namespace lacuna;

TEST_CASE("hand counts on named sequences") {
    const IntegerSequence pow2 = gen_power(2, 10);
    {
        SolutionCount c = count_solutions(pow2, {1, -2, 0, 10});
        CHECK(c.off_diagonal() == 9);  // 2^k = 2^(l+1)
        CHECK(c.diagonal_count == 0);
        CHECK(c.headline(0) == 9);
    }
    CHECK(count_solutions(pow2, {1, 1, 0, 10}).ordered_count == 0);
    const IntegerSequence pm1 = gen_power_minus_one(2, 10);
    CHECK(count_solutions(pm1, {1, -2, 1, 10}).ordered_count == 9);
}

TEST_CASE("argument validation") {
    const IntegerSequence s = gen_power(2, 4);
    CHECK_THROWS_AS(count_solutions(s, {0, 1, 0, 4}), std::invalid_argument);
    CHECK_THROWS_AS(count_solutions(s, {1, 0, 0, 4}), std::invalid_argument);
    CHECK_THROWS_AS(count_solutions(s, {1, 1, 0, 5}), std::invalid_argument);
}

TEST_CASE("fast count equals brute force on random queries") {
    std::mt19937_64 rng(101);
    const IntegerSequence pm1 = gen_power_minus_one(2, 200);
    for (int t = 0; t < 200; ++t) {
        DiophQuery q;
        q.a = static_cast<long>(rng() % 9) - 4;
        q.b = static_cast<long>(rng() % 9) - 4;
        if (q.a == 0) q.a = 2;
        if (q.b == 0) q.b = -2;
        q.n = 2 + rng() % 198;
        switch (t % 3) {
            case 0: q.c = 0; break;
            case 1: {  // plant a solution so counts are often nonzero
                const std::size_t k = 1 + rng() % q.n, l = 1 + rng() % q.n;
                q.c = q.a * pm1.term(k) + q.b * pm1.term(l);
                break;
            }
            default: q.c = static_cast<long>(rng() % 1000) - 500;
        }
        const SolutionCount fast = count_solutions(pm1, q);
        const SolutionCount slow = brute_force_count(pm1, q);
        CHECK(fast.ordered_count == slow.ordered_count);
        CHECK(fast.diagonal_count == slow.diagonal_count);
    }
}

TEST_CASE("exhaustive agreement at small N and a large randomized case") {
    const IntegerSequence s = gen_power_minus_one(3, 60);
    for (long a : {-2L, 1L, 3L})
        for (long b : {-3L, -1L, 2L})
            for (long cc : {-8L, 0L, 2L, 26L}) {
                DiophQuery q{a, b, cc, 60};
                CHECK(count_solutions(s, q).ordered_count ==
                      brute_force_count(s, q).ordered_count);
            }
    const IntegerSequence big = gen_power_minus_one(2, 2000);
    DiophQuery q{1, -2, 1, 2000};
    CHECK(count_solutions(big, q).ordered_count == brute_force_count(big, q).ordered_count);
    CHECK(count_solutions(big, q).ordered_count == 1999);
    std::mt19937_64 rng2(55);
    for (int t = 0; t < 3; ++t) {
        DiophQuery rq{static_cast<long>(rng2() % 5) + 1, -static_cast<long>(rng2() % 5) - 1,
                      static_cast<long>(rng2() % 100) - 50, 1500 + rng2() % 500};
        CHECK(count_solutions(big, rq).ordered_count ==
              brute_force_count(big, rq).ordered_count);
    }
}

TEST_CASE("trivial identities") {
    const IntegerSequence s = gen_power_minus_one(2, 80);
    CHECK(count_solutions(s, {1, -1, 0, 80}).off_diagonal() == 0);
    CHECK(count_solutions(s, {2, -2, 0, 80}).off_diagonal() == 0);
}

TEST_CASE("symmetry and scaling") {
    std::mt19937_64 rng(7);
    const IntegerSequence s = gen_power_minus_one(2, 120);
    for (int t = 0; t < 40; ++t) {
        const long a = static_cast<long>(rng() % 5) + 1;
        const long b = -static_cast<long>(rng() % 5) - 1;
        const mpz_class c = static_cast<long>(rng() % 64) - 32;
        const std::size_t n = 10 + rng() % 110;
        CHECK(count_solutions(s, {a, b, c, n}).ordered_count ==
              count_solutions(s, {b, a, c, n}).ordered_count);
        for (long m : {-3L, 2L})
            CHECK(count_solutions(s, {a, b, c, n}).ordered_count ==
                  count_solutions(s, {m * a, m * b, m * c, n}).ordered_count);
    }
}

// independent multiplicity oracle: group all off-diagonal values in a map
static MultiplicityReport multiplicity_by_map(const IntegerSequence& seq, long a, long b,
                                              std::size_t n) {
    std::map<mpz_class, std::uint64_t> groups;
    MultiplicityReport rep;
    for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t l = 1; l <= n; ++l) {
            if (k == l) continue;
            mpz_class v = a * seq.term(k) + b * seq.term(l);
            if (v == 0) ++rep.zero_count;
            else ++groups[v];
        }
    for (const auto& [v, m] : groups)
        if (m > rep.max_nonzero) {
            rep.max_nonzero = m;
            rep.witness_c = v;
        }
    return rep;
}

TEST_CASE("max multiplicity profiles") {
    const IntegerSequence pow2 = gen_power(2, 50);
    {
        const MultiplicityReport r = max_multiplicity(pow2, 1, -2, 50);
        const MultiplicityReport o = multiplicity_by_map(pow2, 1, -2, 50);
        CHECK(r.zero_count == 49);
        CHECK(r.max_nonzero == o.max_nonzero);
    }
    {
        const MultiplicityReport r = max_multiplicity(gen_superlacunary(50), 1, -1, 50);
        CHECK(r.max_nonzero == 1);
        CHECK(r.zero_count == 0);
    }
    {
        const MultiplicityReport r = max_multiplicity(gen_power_minus_one(2, 50), 1, -2, 50);
        CHECK(r.max_nonzero == 49);
        CHECK(r.witness_c == 1);
    }
    // witness agrees with the map oracle on mixed-sign data
    const IntegerSequence pm1 = gen_power_minus_one(3, 40);
    const MultiplicityReport r = max_multiplicity(pm1, 2, -3, 40);
    const MultiplicityReport o = multiplicity_by_map(pm1, 2, -3, 40);
    CHECK(r.max_nonzero == o.max_nonzero);
    CHECK(r.zero_count == o.zero_count);
}

TEST_CASE("max multiplicity respects its pair budget") {
    CHECK_THROWS_AS(max_multiplicity(gen_power(2, 100), 1, -1, 100, 50), resource_error);
}

TEST_CASE("boundedness verdicts") {
    {
        const auto rows = boundedness_verdict(gen_power(2, 400), 2, {100, 200, 400});
        bool found = false;
        for (const auto& row : rows) {
            if (row.a == 1 && row.b == -2) {
                found = true;
                CHECK(row.verdict == GrowthVerdict::growing);
                CHECK(row.growing_at_zero);
                CHECK(row.cells[0].report.zero_count == 99);
                CHECK(row.cells[1].report.zero_count == 199);
                CHECK(row.cells[2].report.zero_count == 399);
            }
        }
        CHECK(found);
    }
    {
        const auto rows = boundedness_verdict(gen_superlacunary(150), 3, {50, 100, 150});
        for (const auto& row : rows) {
            CHECK(row.verdict == GrowthVerdict::bounded);
            for (const auto& cell : row.cells) CHECK(cell.report.max_nonzero <= 2);
        }
    }
    CHECK(boundedness_verdict(gen_power(2, 20), 1, {10, 20}).size() == 4);  // (+-1, +-1)
}
