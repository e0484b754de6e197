#pragma once

// Mean-zero 1-periodic functions in two exact flavors:
//
//   TrigPolynomial  f(x) = sum_j a_j cos(2 pi j x) + b_j sin(2 pi j x)
//   StepFunction    piecewise constant on [0,1) with rational breakpoints
//
// plus the correlations gamma_k = int_0^1 f(x) f(theta^k x) dx and the
// variance identity sigma^2 = ||f||^2 + 2 sum_k gamma_k that gives the
// identity-permutation LIL constant for n_k = theta^k.  Rational inputs keep
// every correlation an exact mpq; doubles only appear at evaluation time.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>
#include <gmpxx.h>

namespace lacuna {

// --------------------------------------------------------------------------
// TrigPolynomial
// --------------------------------------------------------------------------

class TrigPolynomial {
  public:
    TrigPolynomial() = default;
    // exact rational coefficients (index j-1 holds the degree-j coefficient)
    TrigPolynomial(std::vector<mpq_class> cos_coeffs, std::vector<mpq_class> sin_coeffs);
    // machine-real coefficients (e.g. Fourier data of an indicator)
    TrigPolynomial(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

    std::size_t degree() const { return cos_d_.size(); }
    bool exact() const { return exact_; }

    double cos_coeff(std::size_t j) const { return j >= 1 && j <= degree() ? cos_d_[j - 1] : 0.0; }
    double sin_coeff(std::size_t j) const { return j >= 1 && j <= degree() ? sin_d_[j - 1] : 0.0; }
    const mpq_class& cos_coeff_exact(std::size_t j) const { return cos_q_.at(j - 1); }
    const mpq_class& sin_coeff_exact(std::size_t j) const { return sin_q_.at(j - 1); }

    double eval(double x) const;

    // Parseval: ||f||^2 = sum (a_j^2 + b_j^2) / 2
    double l2_norm() const;
    mpq_class l2_norm_sq_exact() const;  // requires exact()

  private:
    std::vector<mpq_class> cos_q_, sin_q_;  // populated iff exact_
    std::vector<double> cos_d_, sin_d_;
    bool exact_ = true;
};

// --------------------------------------------------------------------------
// StepFunction
// --------------------------------------------------------------------------

class StepFunction {
  public:
    // breakpoints[0] must be 0; piece i takes values[i] on
    // [breakpoints[i], breakpoints[i+1]) and the last piece runs to 1.
    StepFunction(std::vector<mpq_class> breakpoints, std::vector<mpq_class> values);

    std::size_t pieces() const { return values_.size(); }
    const std::vector<mpq_class>& breakpoints() const { return breakpoints_; }
    const std::vector<mpq_class>& values() const { return values_; }

    mpq_class mean_exact() const;
    bool mean_zero() const { return mean_exact() == 0; }
    mpq_class variation_exact() const;  // total variation over [0,1] as a circle

    double eval(double x) const;              // binary search on the piece
    mpq_class eval_exact(const mpq_class& x) const;

    double l2_norm() const;
    mpq_class l2_norm_sq_exact() const;

    // F(y) = int_0^y f({t}) dt for y >= 0, exact (uses periodic extension)
    mpq_class antiderivative(const mpq_class& y) const;

  private:
    std::vector<mpq_class> breakpoints_;  // sorted, breakpoints_[0] == 0
    std::vector<mpq_class> values_;
    std::vector<mpq_class> cum_;  // cum_[i] = int_0^{breakpoints_[i]} f
    mpq_class total_;             // int_0^1 f
};

// 1_{[a,b)}({x}) - (b-a): mean zero, ||I||^2 = (b-a)(1-(b-a)) exactly.
StepFunction centered_indicator(const mpq_class& a, const mpq_class& b);

// Exact Fourier coefficients of centered_indicator(a,b) up to degree d:
//   cos_j = (sin(2 pi j b) - sin(2 pi j a)) / (pi j)
//   sin_j = (cos(2 pi j a) - cos(2 pi j b)) / (pi j)
TrigPolynomial indicator_fourier(const mpq_class& a, const mpq_class& b, std::size_t d);

// --------------------------------------------------------------------------
// Unified view
// --------------------------------------------------------------------------

using PeriodicFunction = std::variant<TrigPolynomial, StepFunction>;

double eval(const PeriodicFunction& f, double x);
double l2_norm(const PeriodicFunction& f);
std::optional<mpq_class> l2_norm_sq_exact(const PeriodicFunction& f);

// --------------------------------------------------------------------------
// Correlations and the variance identity
// --------------------------------------------------------------------------

// gamma = int_0^1 f(x) f(n x) dx, exact.  Integrates against the exact
// antiderivative of f, so the cost depends on pieces(f), not on n.  The
// documented budget n <= 2^24 is still enforced for interface compatibility.
mpq_class correlation_exact(const StepFunction& f, const mpz_class& n);

// Resonance form: sum over j with n*j <= d of (a_{nj} a_j + b_{nj} b_j)/2.
mpq_class correlation_trig_exact(const TrigPolynomial& f, std::uint64_t n);
double correlation_trig(const TrigPolynomial& f, std::uint64_t n);

struct SigmaResult {
    double sigma = 0.0;                  // sqrt(sigma^2) at truncation K
    std::optional<mpq_class> sigma_sq;   // exact when all inputs rational
    double last_term = 0.0;              // |2 gamma_K|, a bracketing radius
    std::vector<mpq_class> gammas;       // gamma_1..gamma_K (exact path only)
};

// sigma^2 = ||f||^2 + 2 sum_{k=1..K} int f(x) f(theta^k x) dx.
// Throws truncation_error if the truncated sigma^2 goes negative.
SigmaResult sigma_identity(const PeriodicFunction& f, std::uint64_t theta, unsigned k_terms);

struct SupSigmaResult {
    mpq_class a, b;      // maximizing interval on the grid
    double sigma_max = 0.0;
    mpq_class sigma_sq;  // exact sigma^2 of the maximizer
    std::uint64_t theta = 0;
    unsigned k_terms = 0;
    std::uint64_t grid_denom = 0;
    std::vector<mpq_class> gammas;  // gamma_k of the maximizer
};

// Maximize sigma(centered_indicator(a,b)) over grid pairs a = i/D, b = j/D,
// 0 <= i < j <= D.  All inner arithmetic exact; parallelized over i.
// If cache_path is nonempty and holds a result for the same (theta,K,D) key,
// the search is skipped; otherwise the result is written there.
SupSigmaResult sup_sigma_over_intervals(std::uint64_t theta, unsigned k_terms,
                                        std::uint64_t grid_denom,
                                        const std::string& cache_path = {},
                                        unsigned threads = 0);

// Cache text format, one entry per line:
//   theta a_p/a_q b_p/b_q k gamma_p/gamma_q
std::string format_correlation_cache(const SupSigmaResult& r);

}  // namespace lacuna
