#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "lacuna/sequences.hpp"

using namespace lacuna;

static std::vector<long> as_longs(const IntegerSequence& s) {
    std::vector<long> v;
    for (const auto& t : s.terms()) v.push_back(t.get_si());
    return v;
}

TEST_CASE("gen_power basics") {
    CHECK(as_longs(gen_power(2, 4)) == std::vector<long>{2, 4, 8, 16});
    CHECK(as_longs(gen_power(3, 3)) == std::vector<long>{3, 9, 27});
    const IntegerSequence s = gen_power(2, 100);
    CHECK(mpz_sizeinbase(s.term(100).get_mpz_t(), 2) == 101);
}

TEST_CASE("gen_power_minus_one basics") {
    CHECK(as_longs(gen_power_minus_one(2, 4)) == std::vector<long>{1, 3, 7, 15});
    const IntegerSequence s = gen_power_minus_one(2, 10);
    for (const auto& t : s.terms()) CHECK(mpz_odd_p(t.get_mpz_t()));
    const GapReport rep = gap_report(s);
    CHECK(rep.min_ratio == mpq_class(1023, 511));
    CHECK(rep.is_hadamard);
}

TEST_CASE("gen_superlacunary basics") {
    CHECK(as_longs(gen_superlacunary(3)) == std::vector<long>{2, 8, 64});
    const IntegerSequence s = gen_superlacunary(6);
    CHECK(s.term(6) / s.term(5) == 64);  // ratio at k=5 is 2^6
    const GapReport rep = gap_report(gen_superlacunary(50));
    for (std::size_t i = 1; i < rep.ratio_trend.size(); ++i)
        CHECK(rep.ratio_trend[i] > rep.ratio_trend[i - 1]);
}

TEST_CASE("gap_report hand cases") {
    CHECK(gap_report(gen_power(2, 10)).min_ratio == 2);
    const IntegerSequence s({mpz_class(1), mpz_class(2), mpz_class(3)},
                            {SequenceKind::custom, 0, "inline"});
    const GapReport rep = gap_report(s);
    CHECK(rep.min_ratio == mpq_class(3, 2));
    CHECK(rep.is_hadamard);
    CHECK_THROWS_AS(gap_report(gen_power(2, 1)), std::invalid_argument);
}

TEST_CASE("generators pass their own gap consistency") {
    for (std::uint64_t b : {2, 3, 5})
        CHECK(gap_report(gen_power(b, 20)).min_ratio == static_cast<long>(b));
}

TEST_CASE("merge_scaled") {
    const IntegerSequence s({mpz_class(2), mpz_class(4), mpz_class(8)},
                            {SequenceKind::custom, 0, "inline"});
    CHECK(as_longs(merge_scaled(s, 1, 3)) == std::vector<long>{2, 4, 6, 8, 12, 24});
    CHECK(as_longs(merge_scaled(gen_power(2, 5), 1, 1)) == as_longs(gen_power(2, 5)));
    CHECK(gap_report(merge_scaled(gen_superlacunary(20), 1, 5)).is_hadamard);
}

TEST_CASE("merge_scaled is the exact union") {
    const IntegerSequence s = gen_power_minus_one(3, 12);
    const IntegerSequence m = merge_scaled(s, 2, 7);
    for (std::size_t i = 1; i < m.size(); ++i) CHECK(m.terms()[i] > m.terms()[i - 1]);
    for (const auto& t : s.terms()) {
        bool has2 = false, has7 = false;
        for (const auto& u : m.terms()) {
            has2 |= (u == 2 * t);
            has7 |= (u == 7 * t);
        }
        CHECK(has2);
        CHECK(has7);
    }
    CHECK(m.size() <= 2 * s.size());
}

TEST_CASE("superlacunary merge is Hadamard after a dropped prefix") {
    const IntegerSequence m = merge_scaled(gen_superlacunary(30), 3, 7);
    CHECK(gap_report(m, 4).min_ratio > 1);
    CHECK(gap_report(m, 4).is_hadamard);
}

TEST_CASE("sequence file round trip and rejection") {
    const char* path = "seq_test_tmp.txt";
    {
        std::ofstream f(path);
        f << "# comment line\n 3 \n9\n27 # trailing comment\n\n81\n";
    }
    const IntegerSequence s = load_sequence_file(path);
    CHECK(as_longs(s) == std::vector<long>{3, 9, 27, 81});

    {
        std::ofstream f(path);
        f << "5\n4\n";
    }
    CHECK_THROWS_AS(load_sequence_file(path), std::invalid_argument);
    {
        std::ofstream f(path);
        f << "5\nnot-a-number\n";
    }
    CHECK_THROWS_AS(load_sequence_file(path), std::invalid_argument);
    std::remove(path);
}

TEST_CASE("exponent-of-two fast path detection") {
    CHECK(gen_power(2, 1).exponent_of_two(10) == 10);
    CHECK(gen_power(4, 1).exponent_of_two(10) == 20);
    CHECK(gen_superlacunary(1).exponent_of_two(5) == 15);
    CHECK(!gen_power(3, 1).exponent_of_two(10).has_value());
    CHECK(!gen_power_minus_one(2, 1).exponent_of_two(10).has_value());
}

TEST_CASE("monotonicity enforced at construction") {
    CHECK_THROWS_AS(IntegerSequence({mpz_class(2), mpz_class(2)},
                                    {SequenceKind::custom, 0, ""}),
                    std::invalid_argument);
    CHECK_THROWS_AS(IntegerSequence({mpz_class(0)}, {SequenceKind::custom, 0, ""}),
                    std::invalid_argument);
}
