#include "lacuna/unit_fraction.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace lacuna {

static_assert(GMP_NUMB_BITS == 64, "limb layout assumed 64-bit throughout");

UnitFraction::UnitFraction(mpz_class mantissa, long precision_bits)
    : mantissa_(std::move(mantissa)), precision_(precision_bits) {
    if (precision_ < 1) throw config_error("UnitFraction: precision must be >= 1");
    if (sgn(mantissa_) < 0)
        throw config_error("UnitFraction: mantissa must be nonnegative");
    // reduce mod 2^P so the invariant mantissa < 2^P always holds
    if (mpz_sizeinbase(mantissa_.get_mpz_t(), 2) > static_cast<std::size_t>(precision_))
        mpz_tdiv_r_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(),
                        static_cast<mp_bitcnt_t>(precision_));
}

std::uint64_t UnitFraction::read_bits64(long lo) const {
    if (lo <= -64) return 0;
    const mp_size_t nlimbs = mpz_size(mantissa_.get_mpz_t());
    const mp_limb_t* limbs = mpz_limbs_read(mantissa_.get_mpz_t());
    auto limb_at = [&](long i) -> std::uint64_t {
        return (i >= 0 && i < nlimbs) ? static_cast<std::uint64_t>(limbs[i]) : 0u;
    };
    if (lo < 0) {
        // window hangs below bit 0: low |lo| bits of the window are zero
        return limb_at(0) << static_cast<unsigned>(-lo);
    }
    const long li = lo / 64;
    const unsigned off = static_cast<unsigned>(lo % 64);
    std::uint64_t w = limb_at(li) >> off;
    if (off != 0) w |= limb_at(li + 1) << (64 - off);
    return w;
}

double UnitFraction::to_real() const {
    if (precision_ <= 64)
        return std::ldexp(static_cast<double>(read_bits64(0)),
                          static_cast<int>(-precision_));
    return std::ldexp(static_cast<double>(read_bits64(precision_ - 64)), -64);
}

std::uint64_t mix64(std::uint64_t v) {
    v ^= v >> 30;
    v *= 0xbf58476d1ce4e5b9ULL;
    v ^= v >> 27;
    v *= 0x94d049bb133111ebULL;
    v ^= v >> 31;
    return v;
}

std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    return mix64(state);
}

UnitFraction sample_unit(std::uint64_t seed, std::uint64_t index, long precision_bits) {
    if (precision_bits < 128)
        throw config_error("sample_unit: precision must be at least 128 bits, got " +
                           std::to_string(precision_bits));
    const long nwords = (precision_bits + 63) / 64;
    std::uint64_t state = mix64(seed ^ mix64(index + 0x9e3779b97f4a7c15ULL));

    // words are the expansion MSB-first: fill limbs from the top down
    std::vector<mp_limb_t> limbs(static_cast<std::size_t>(nwords));
    for (long j = 0; j < nwords; ++j)
        limbs[static_cast<std::size_t>(nwords - 1 - j)] = splitmix64_next(state);

    mpz_class m;
    mpz_import(m.get_mpz_t(), limbs.size(), -1 /*LSW first*/, sizeof(mp_limb_t),
               0, 0, limbs.data());
    // drop the surplus low bits so exactly P bits remain
    const long surplus = 64 * nwords - precision_bits;
    if (surplus > 0) mpz_tdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), surplus);
    return UnitFraction(std::move(m), precision_bits);
}

static void check_budget(long operand_bits, long precision_bits,
                         const PrecisionBudget& budget, const char* op) {
    if (operand_bits > budget.max_operand_bits(precision_bits))
        throw precision_error(std::string(op) + ": operand needs " +
                                  std::to_string(operand_bits + budget.guard_bits) +
                                  " bits of precision, have " +
                                  std::to_string(precision_bits),
                              operand_bits + budget.guard_bits);
}

UnitFraction frac_mul(const mpz_class& n, const UnitFraction& x,
                      const PrecisionBudget& budget) {
    if (sgn(n) <= 0) throw std::invalid_argument("frac_mul: n must be positive");
    const long nbits = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2));
    check_budget(nbits, x.precision_bits(), budget, "frac_mul");
    mpz_class m = n * x.mantissa();
    mpz_tdiv_r_2exp(m.get_mpz_t(), m.get_mpz_t(),
                    static_cast<mp_bitcnt_t>(x.precision_bits()));
    return UnitFraction(std::move(m), x.precision_bits());
}

UnitFraction frac_shift(const UnitFraction& x, long k, const PrecisionBudget& budget) {
    if (k < 0) throw std::invalid_argument("frac_shift: k must be >= 0");
    check_budget(k, x.precision_bits(), budget, "frac_shift");
    // (m * 2^k) mod 2^P  ==  (m mod 2^(P-k)) << k
    mpz_class m;
    mpz_tdiv_r_2exp(m.get_mpz_t(), x.mantissa().get_mpz_t(),
                    static_cast<mp_bitcnt_t>(x.precision_bits() - k));
    m <<= k;
    return UnitFraction(std::move(m), x.precision_bits());
}

double frac_shift_top64(const UnitFraction& x, long k, const PrecisionBudget& budget) {
    if (k < 0) throw std::invalid_argument("frac_shift_top64: k must be >= 0");
    check_budget(k, x.precision_bits(), budget, "frac_shift_top64");
    return std::ldexp(static_cast<double>(x.read_bits64(x.precision_bits() - k - 64)), -64);
}

}  // namespace lacuna
