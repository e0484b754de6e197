#include "lacuna/sequences.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace lacuna {

std::string SequenceGenerator::describe() const {
    switch (kind) {
        case SequenceKind::power: return "power{" + std::to_string(base) + "}";
        case SequenceKind::power_minus_one:
            return "power_minus_one{" + std::to_string(base) + "}";
        case SequenceKind::superlacunary: return "superlacunary";
        case SequenceKind::custom: return source.empty() ? "custom" : "custom{" + source + "}";
    }
    return "?";
}

IntegerSequence::IntegerSequence(std::vector<mpz_class> terms, SequenceGenerator gen)
    : terms_(std::move(terms)), gen_(std::move(gen)) {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i] < 1)
            throw std::invalid_argument("IntegerSequence: terms must be >= 1");
        if (i > 0 && terms_[i] <= terms_[i - 1])
            throw std::invalid_argument("IntegerSequence: terms must be strictly increasing");
    }
}

std::optional<long> IntegerSequence::exponent_of_two(std::uint64_t k) const {
    if (k == 0) return std::nullopt;
    if (gen_.kind == SequenceKind::superlacunary) {
        // k(k+1)/2; desk-scale k keeps this well inside long range
        return static_cast<long>(k * (k + 1) / 2);
    }
    if (gen_.kind == SequenceKind::power) {
        // base = 2^t exactly?
        std::uint64_t b = gen_.base;
        if (b < 2 || (b & (b - 1)) != 0) return std::nullopt;
        long t = 0;
        while (b > 1) { b >>= 1; ++t; }
        return static_cast<long>(k) * t;
    }
    return std::nullopt;
}

IntegerSequence gen_power(std::uint64_t base, std::size_t n) {
    if (base < 2) throw std::invalid_argument("gen_power: base must be >= 2");
    std::vector<mpz_class> terms;
    terms.reserve(n);
    mpz_class v = 1;
    for (std::size_t k = 0; k < n; ++k) {
        v *= base;
        terms.push_back(v);
    }
    return IntegerSequence(std::move(terms), {SequenceKind::power, base, {}});
}

IntegerSequence gen_power_minus_one(std::uint64_t base, std::size_t n) {
    if (base < 2) throw std::invalid_argument("gen_power_minus_one: base must be >= 2");
    std::vector<mpz_class> terms;
    terms.reserve(n);
    mpz_class v = 1;
    for (std::size_t k = 0; k < n; ++k) {
        v *= base;
        terms.push_back(v - 1);
    }
    return IntegerSequence(std::move(terms), {SequenceKind::power_minus_one, base, {}});
}

IntegerSequence gen_superlacunary(std::size_t n) {
    std::vector<mpz_class> terms;
    terms.reserve(n);
    for (std::size_t k = 1; k <= n; ++k) {
        mpz_class v;
        mpz_ui_pow_ui(v.get_mpz_t(), 2, static_cast<unsigned long>(k * (k + 1) / 2));
        terms.push_back(std::move(v));
    }
    return IntegerSequence(std::move(terms), {SequenceKind::superlacunary, 0, {}});
}

IntegerSequence load_sequence_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open sequence file: " + path);
    std::vector<mpz_class> terms;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r");
        std::string tok = line.substr(b, e - b + 1);
        mpz_class v;
        if (mpz_set_str(v.get_mpz_t(), tok.c_str(), 10) != 0)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": not a decimal integer: '" + tok + "'");
        if (!terms.empty() && v <= terms.back())
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": sequence not strictly increasing");
        if (v < 1)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": terms must be >= 1");
        terms.push_back(std::move(v));
    }
    return IntegerSequence(std::move(terms), {SequenceKind::custom, 0, path});
}

GapReport gap_report(const IntegerSequence& seq, std::size_t drop_prefix) {
    if (seq.size() < drop_prefix + 2)
        throw std::invalid_argument("gap_report: need at least 2 terms after drop");
    GapReport rep;
    bool first = true;
    const auto& t = seq.terms();
    for (std::size_t i = drop_prefix; i + 1 < t.size(); ++i) {
        mpq_class r(t[i + 1], t[i]);
        r.canonicalize();
        if (first || r < rep.min_ratio) rep.min_ratio = r;
        first = false;
        rep.ratio_trend.push_back(r.get_d());
    }
    rep.is_hadamard = rep.min_ratio > 1;
    return rep;
}

IntegerSequence merge_scaled(const IntegerSequence& seq, std::uint64_t a, std::uint64_t b) {
    if (a < 1 || b < 1) throw std::invalid_argument("merge_scaled: factors must be >= 1");
    std::vector<mpz_class> merged;
    merged.reserve(2 * seq.size());
    for (const auto& v : seq.terms()) {
        merged.push_back(v * a);
        merged.push_back(v * b);
    }
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    SequenceGenerator gen{SequenceKind::custom, 0,
                          "merge_scaled(" + seq.generator().describe() + "," +
                              std::to_string(a) + "," + std::to_string(b) + ")"};
    return IntegerSequence(std::move(merged), std::move(gen));
}

}  // namespace lacuna
