#pragma once

// Exact binary fixed-point numbers in [0,1).
//
// A UnitFraction stores x = mantissa / 2^P with 0 <= mantissa < 2^P.  The
// whole point of the representation is that {n*x} (fractional part) is a
// big-integer multiply followed by a mask, and {2^k * x} is a bit-window
// read.  P is typically a few bits more than the largest multiplier the
// experiment will ever use, so fractional parts come out exact.

#include <cstdint>
#include <gmpxx.h>

#include "lacuna/errors.hpp"

namespace lacuna {

// Guard policy: an n multiplied into a P-bit fraction must satisfy
// bits(n) <= P - guard_bits.  The guard absorbs the truncation error of the
// sampled x, so that {n*x} is trustworthy in its top bits.
struct PrecisionBudget {
    long guard_bits = 64;

    long max_operand_bits(long precision_bits) const {
        return precision_bits - guard_bits;
    }
};

class UnitFraction {
  public:
    UnitFraction() : precision_(1) {}  // 0 at P=1

    // value = mantissa / 2^P; mantissa is reduced mod 2^P.
    UnitFraction(mpz_class mantissa, long precision_bits);

    const mpz_class& mantissa() const { return mantissa_; }
    long precision_bits() const { return precision_; }

    // Top-64-bit truncation; truncation error < 2^-64 before rounding to
    // double.
    double to_real() const;

    // Reads the 64 bits of the mantissa starting at bit `lo` (bit 0 = least
    // significant).  Bits above the mantissa or below bit 0 read as zero.
    // O(1): touches at most two limbs.
    std::uint64_t read_bits64(long lo) const;

  private:
    mpz_class mantissa_;
    long precision_;
};

// Deterministic sampler: (seed, index) key a splitmix64 stream whose output
// words form the binary expansion of x MSB-first.  Raising P extends the
// expansion without disturbing the leading bits, so a P-bit sample is a
// prefix of the (P+64)-bit sample of the same (seed, index).
//
// Requires P >= 128; throws config_error otherwise.
UnitFraction sample_unit(std::uint64_t seed, std::uint64_t index, long precision_bits);

// {n * x}, exact.  Throws precision_error if bits(n) > P - guard.
UnitFraction frac_mul(const mpz_class& n, const UnitFraction& x,
                      const PrecisionBudget& budget = {});

// {2^k * x}, exact; same budget rule with bits(2^k) = k+1.
UnitFraction frac_shift(const UnitFraction& x, long k,
                        const PrecisionBudget& budget = {});

// Top 64 bits of {2^k * x} as a real in [0,1), without building the shifted
// mantissa.  This is the O(1) hot path for n_k = 2^e(k) sequences.
double frac_shift_top64(const UnitFraction& x, long k,
                        const PrecisionBudget& budget = {});

// splitmix64, used as the deterministic word stream behind sample_unit.
// Exposed for tests.
std::uint64_t splitmix64_next(std::uint64_t& state);
std::uint64_t mix64(std::uint64_t v);

}  // namespace lacuna
