#include "lacuna/periodic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "lacuna/errors.hpp"

namespace lacuna {

static constexpr double kTwoPi = 6.283185307179586476925286766559;

// --------------------------------------------------------------------------
// TrigPolynomial
// --------------------------------------------------------------------------

TrigPolynomial::TrigPolynomial(std::vector<mpq_class> cos_coeffs,
                               std::vector<mpq_class> sin_coeffs) {
    if (sin_coeffs.size() < cos_coeffs.size()) sin_coeffs.resize(cos_coeffs.size(), mpq_class(0));
    if (cos_coeffs.size() < sin_coeffs.size()) cos_coeffs.resize(sin_coeffs.size(), mpq_class(0));
    cos_q_ = std::move(cos_coeffs);
    sin_q_ = std::move(sin_coeffs);
    cos_d_.reserve(cos_q_.size());
    sin_d_.reserve(sin_q_.size());
    for (const auto& q : cos_q_) cos_d_.push_back(q.get_d());
    for (const auto& q : sin_q_) sin_d_.push_back(q.get_d());
    exact_ = true;
}

TrigPolynomial::TrigPolynomial(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs) {
    if (sin_coeffs.size() < cos_coeffs.size()) sin_coeffs.resize(cos_coeffs.size(), 0.0);
    if (cos_coeffs.size() < sin_coeffs.size()) cos_coeffs.resize(sin_coeffs.size(), 0.0);
    cos_d_ = std::move(cos_coeffs);
    sin_d_ = std::move(sin_coeffs);
    exact_ = false;
}

double TrigPolynomial::eval(double x) const {
    double s = 0.0;
    for (std::size_t j = 1; j <= degree(); ++j) {
        const double ang = kTwoPi * static_cast<double>(j) * x;
        if (cos_d_[j - 1] != 0.0) s += cos_d_[j - 1] * std::cos(ang);
        if (sin_d_[j - 1] != 0.0) s += sin_d_[j - 1] * std::sin(ang);
    }
    return s;
}

double TrigPolynomial::l2_norm() const {
    double s = 0.0;
    for (std::size_t i = 0; i < cos_d_.size(); ++i)
        s += cos_d_[i] * cos_d_[i] + sin_d_[i] * sin_d_[i];
    return std::sqrt(s / 2.0);
}

mpq_class TrigPolynomial::l2_norm_sq_exact() const {
    if (!exact_) throw std::logic_error("l2_norm_sq_exact: coefficients are not rational");
    mpq_class s = 0;
    for (std::size_t i = 0; i < cos_q_.size(); ++i)
        s += cos_q_[i] * cos_q_[i] + sin_q_[i] * sin_q_[i];
    return s / 2;
}

// --------------------------------------------------------------------------
// StepFunction
// --------------------------------------------------------------------------

StepFunction::StepFunction(std::vector<mpq_class> breakpoints, std::vector<mpq_class> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.empty() || breakpoints_.size() != values_.size())
        throw std::invalid_argument("StepFunction: need one value per breakpoint");
    if (breakpoints_[0] != 0)
        throw std::invalid_argument("StepFunction: first breakpoint must be 0");
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        if (breakpoints_[i] < 0 || breakpoints_[i] >= 1)
            throw std::invalid_argument("StepFunction: breakpoints must lie in [0,1)");
        if (i > 0 && breakpoints_[i] <= breakpoints_[i - 1])
            throw std::invalid_argument("StepFunction: breakpoints must be strictly increasing");
    }
    cum_.resize(pieces());
    mpq_class acc = 0;
    for (std::size_t i = 0; i < pieces(); ++i) {
        cum_[i] = acc;
        const mpq_class hi = (i + 1 < pieces()) ? breakpoints_[i + 1] : mpq_class(1);
        acc += values_[i] * (hi - breakpoints_[i]);
    }
    total_ = acc;
}

mpq_class StepFunction::mean_exact() const { return total_; }

mpq_class StepFunction::variation_exact() const {
    mpq_class var = 0;
    for (std::size_t i = 0; i < pieces(); ++i) {
        const mpq_class& prev = values_[(i + pieces() - 1) % pieces()];
        var += abs(values_[i] - prev);
    }
    return var;
}

double StepFunction::eval(double x) const {
    // piece index: last breakpoint <= x
    std::size_t lo = 0, hi = pieces();
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (breakpoints_[mid].get_d() <= x) lo = mid; else hi = mid;
    }
    return values_[lo].get_d();
}

mpq_class StepFunction::eval_exact(const mpq_class& x) const {
    if (x < 0 || x >= 1) throw std::invalid_argument("eval_exact: x must be in [0,1)");
    std::size_t lo = 0, hi = pieces();
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (breakpoints_[mid] <= x) lo = mid; else hi = mid;
    }
    return values_[lo];
}

double StepFunction::l2_norm() const { return std::sqrt(l2_norm_sq_exact().get_d()); }

mpq_class StepFunction::l2_norm_sq_exact() const {
    mpq_class s = 0;
    for (std::size_t i = 0; i < pieces(); ++i) {
        const mpq_class hi = (i + 1 < pieces()) ? breakpoints_[i + 1] : mpq_class(1);
        s += values_[i] * values_[i] * (hi - breakpoints_[i]);
    }
    return s;
}

mpq_class StepFunction::antiderivative(const mpq_class& y) const {
    if (y < 0) throw std::invalid_argument("antiderivative: y must be >= 0");
    mpz_class whole;
    mpz_fdiv_q(whole.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
    mpq_class frac = y - mpq_class(whole);
    // F over one period, at {y}
    std::size_t lo = 0, hi = pieces();
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (breakpoints_[mid] <= frac) lo = mid; else hi = mid;
    }
    return mpq_class(whole) * total_ + cum_[lo] + values_[lo] * (frac - breakpoints_[lo]);
}

StepFunction centered_indicator(const mpq_class& a, const mpq_class& b) {
    if (a < 0 || a >= b || b > 1)
        throw std::invalid_argument("centered_indicator: need 0 <= a < b <= 1");
    const mpq_class len = b - a;
    std::vector<mpq_class> bps, vals;
    if (a == 0 && b == 1) {
        bps = {mpq_class(0)};
        vals = {mpq_class(0)};
    } else if (a == 0) {
        bps = {mpq_class(0), b};
        vals = {1 - len, -len};
    } else if (b == 1) {
        bps = {mpq_class(0), a};
        vals = {-len, 1 - len};
    } else {
        bps = {mpq_class(0), a, b};
        vals = {-len, 1 - len, -len};
    }
    return StepFunction(std::move(bps), std::move(vals));
}

TrigPolynomial indicator_fourier(const mpq_class& a, const mpq_class& b, std::size_t d) {
    if (a < 0 || a >= b || b > 1)
        throw std::invalid_argument("indicator_fourier: need 0 <= a < b <= 1");
    if (d < 1) throw std::invalid_argument("indicator_fourier: d must be >= 1");
    std::vector<double> cs(d), sn(d);
    auto angle = [](const mpq_class& q, std::size_t j) {
        // 2 pi {j q} computed from the exact fractional part, so large j does
        // not degrade the argument reduction
        mpq_class jq = q * static_cast<unsigned long>(j);
        mpz_class whole;
        mpz_fdiv_q(whole.get_mpz_t(), jq.get_num_mpz_t(), jq.get_den_mpz_t());
        return kTwoPi * mpq_class(jq - mpq_class(whole)).get_d();
    };
    for (std::size_t j = 1; j <= d; ++j) {
        const double ta = angle(a, j), tb = angle(b, j);
        const double pj = 3.1415926535897932384626433832795 * static_cast<double>(j);
        cs[j - 1] = (std::sin(tb) - std::sin(ta)) / pj;
        sn[j - 1] = (std::cos(ta) - std::cos(tb)) / pj;
    }
    return TrigPolynomial(std::move(cs), std::move(sn));
}

// --------------------------------------------------------------------------
// Unified view
// --------------------------------------------------------------------------

double eval(const PeriodicFunction& f, double x) {
    return std::visit([&](const auto& g) { return g.eval(x); }, f);
}

double l2_norm(const PeriodicFunction& f) {
    return std::visit([](const auto& g) { return g.l2_norm(); }, f);
}

std::optional<mpq_class> l2_norm_sq_exact(const PeriodicFunction& f) {
    if (const auto* t = std::get_if<TrigPolynomial>(&f))
        return t->exact() ? std::optional<mpq_class>(t->l2_norm_sq_exact()) : std::nullopt;
    return std::get<StepFunction>(f).l2_norm_sq_exact();
}

// --------------------------------------------------------------------------
// Correlations
// --------------------------------------------------------------------------

mpq_class correlation_exact(const StepFunction& f, const mpz_class& n) {
    if (n < 1) throw std::invalid_argument("correlation_exact: n must be >= 1");
    if (mpz_sizeinbase(n.get_mpz_t(), 2) > 25 || n > (mpz_class(1) << 24))
        throw resource_error("correlation_exact: n exceeds the 2^24 budget");
    // int_0^1 f(x) f(nx) dx = sum_pieces v_i * (1/n) * (F(n*hi_i) - F(n*lo_i))
    const mpq_class nq(n);
    mpq_class acc = 0;
    for (std::size_t i = 0; i < f.pieces(); ++i) {
        const mpq_class hi = (i + 1 < f.pieces()) ? f.breakpoints()[i + 1] : mpq_class(1);
        acc += f.values()[i] *
               (f.antiderivative(nq * hi) - f.antiderivative(nq * f.breakpoints()[i]));
    }
    return acc / nq;
}

mpq_class correlation_trig_exact(const TrigPolynomial& f, std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("correlation_trig: n must be >= 1");
    if (!f.exact()) throw std::logic_error("correlation_trig_exact: coefficients not rational");
    mpq_class s = 0;
    for (std::size_t j = 1; j * n <= f.degree(); ++j)
        s += f.cos_coeff_exact(j * n) * f.cos_coeff_exact(j) +
             f.sin_coeff_exact(j * n) * f.sin_coeff_exact(j);
    return s / 2;
}

double correlation_trig(const TrigPolynomial& f, std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("correlation_trig: n must be >= 1");
    double s = 0.0;
    for (std::size_t j = 1; j * n <= f.degree(); ++j)
        s += f.cos_coeff(j * n) * f.cos_coeff(j) + f.sin_coeff(j * n) * f.sin_coeff(j);
    return s / 2.0;
}

SigmaResult sigma_identity(const PeriodicFunction& f, std::uint64_t theta, unsigned k_terms) {
    if (theta < 2) throw std::invalid_argument("sigma_identity: theta must be >= 2");
    if (k_terms < 1) throw std::invalid_argument("sigma_identity: K must be >= 1");
    SigmaResult out;

    if (const auto* tp = std::get_if<TrigPolynomial>(&f)) {
        // n = theta^k is only needed while n <= degree: beyond that every
        // gamma_k vanishes (no resonance), which also dodges overflow
        std::uint64_t n = 1;
        bool beyond = false;
        auto advance = [&] {
            if (!beyond && n > tp->degree() / theta) beyond = true;
            if (!beyond) n *= theta;
        };
        if (tp->exact()) {
            mpq_class s2 = tp->l2_norm_sq_exact();
            mpq_class last = 0;
            for (unsigned k = 1; k <= k_terms; ++k) {
                advance();
                last = beyond ? mpq_class(0) : correlation_trig_exact(*tp, n);
                out.gammas.push_back(last);
                s2 += 2 * last;
            }
            if (s2 < 0)
                throw truncation_error("sigma_identity: truncated sigma^2 negative, raise K");
            out.sigma_sq = s2;
            out.sigma = std::sqrt(s2.get_d());
            out.last_term = std::abs(2 * last.get_d());
            return out;
        }
        double s2 = tp->l2_norm();
        s2 *= s2;
        double last = 0.0;
        for (unsigned k = 1; k <= k_terms; ++k) {
            advance();
            last = beyond ? 0.0 : correlation_trig(*tp, n);
            s2 += 2 * last;
        }
        if (s2 < 0)
            throw truncation_error("sigma_identity: truncated sigma^2 negative, raise K");
        out.sigma = std::sqrt(s2);
        out.last_term = std::abs(2 * last);
        return out;
    }

    const auto& sf = std::get<StepFunction>(f);
    mpq_class s2 = sf.l2_norm_sq_exact();
    mpq_class last = 0;
    mpz_class n = 1;
    for (unsigned k = 1; k <= k_terms; ++k) {
        n *= theta;
        last = correlation_exact(sf, n);
        out.gammas.push_back(last);
        s2 += 2 * last;
    }
    if (s2 < 0)
        throw truncation_error("sigma_identity: truncated sigma^2 negative, raise K");
    out.sigma_sq = s2;
    out.sigma = std::sqrt(s2.get_d());
    out.last_term = std::abs(2 * last.get_d());
    return out;
}

// --------------------------------------------------------------------------
// Grid search for the discrepancy constant
// --------------------------------------------------------------------------

namespace {

using int128 = __int128;

// gamma numerator for I_{[i/D, j/D)} against n, over the fixed denominator
// n * D^2:  gamma = [D*(G(nb)-G(na)) - n*(j-i)^2] / (n*D^2)
// where G(y)*D = q*(j-i) + clamp(r-i, 0, j-i), y = p/D, q = p/D, r = p%D.
inline std::int64_t indicator_gamma_num(std::int64_t n, std::int64_t d_grid,
                                        std::int64_t i, std::int64_t j) {
    const std::int64_t len = j - i;
    auto g_scaled = [&](std::int64_t p) {  // D * G(p/D)
        const std::int64_t q = p / d_grid, r = p % d_grid;
        return q * len + std::clamp(r - i, std::int64_t{0}, len);
    };
    return d_grid * (g_scaled(n * j) - g_scaled(n * i)) - n * len * len;
}

struct GridBest {
    int128 num = -1;  // sigma^2 numerator over theta^K * D^2; -1 = unset
    std::int64_t i = 0, j = 0;
};

}  // namespace

SupSigmaResult sup_sigma_over_intervals(std::uint64_t theta, unsigned k_terms,
                                        std::uint64_t grid_denom,
                                        const std::string& cache_path, unsigned threads) {
    if (theta < 2) throw std::invalid_argument("sup_sigma: theta must be >= 2");
    if (k_terms < 1 || k_terms > 40) throw std::invalid_argument("sup_sigma: K out of range");
    if (grid_denom < 2 || grid_denom > (1u << 20))
        throw std::invalid_argument("sup_sigma: grid denominator out of range");
    // the per-term numerators scale like theta^K * D^2 and must fit in 64 bits
    {
        long double nk = 1.0L;
        for (unsigned k = 0; k < k_terms; ++k) nk *= static_cast<long double>(theta);
        const auto d = static_cast<long double>(grid_denom);
        if (nk * d * d > 2.0e18L)
            throw resource_error("sup_sigma: theta^K * D^2 exceeds the integer budget");
    }

    const std::string key = "sup_sigma theta=" + std::to_string(theta) +
                            " K=" + std::to_string(k_terms) +
                            " D=" + std::to_string(grid_denom);
    if (!cache_path.empty()) {
        std::ifstream in(cache_path);
        std::string first;
        if (in && std::getline(in, first) && first == "# " + key) {
            SupSigmaResult r;
            r.theta = theta;
            r.k_terms = k_terms;
            r.grid_denom = grid_denom;
            std::string line;
            while (std::getline(in, line)) {
                if (line.rfind("a=", 0) == 0) r.a = mpq_class(line.substr(2));
                else if (line.rfind("b=", 0) == 0) r.b = mpq_class(line.substr(2));
                else if (line.rfind("sigma_sq=", 0) == 0) r.sigma_sq = mpq_class(line.substr(9));
                else if (!line.empty() && line[0] != '#') {
                    std::istringstream ls(line);
                    std::string th, as, bs, ks, gs;
                    ls >> th >> as >> bs >> ks >> gs;
                    if (ls) r.gammas.emplace_back(gs);
                }
            }
            r.a.canonicalize();
            r.b.canonicalize();
            r.sigma_sq.canonicalize();
            for (auto& g : r.gammas) g.canonicalize();
            r.sigma_max = std::sqrt(r.sigma_sq.get_d());
            return r;
        }
    }

    const auto d_grid = static_cast<std::int64_t>(grid_denom);
    std::vector<std::int64_t> n_pow(k_terms + 1);
    n_pow[0] = 1;
    for (unsigned k = 1; k <= k_terms; ++k)
        n_pow[k] = n_pow[k - 1] * static_cast<std::int64_t>(theta);
    const std::int64_t n_top = n_pow[k_terms];

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<GridBest> best(threads);
    std::atomic<std::int64_t> next_i{0};

    auto worker = [&](unsigned wid) {
        GridBest local;
        for (;;) {
            const std::int64_t i = next_i.fetch_add(1);
            if (i >= d_grid) break;
            for (std::int64_t j = i + 1; j <= d_grid; ++j) {
                const std::int64_t len = j - i;
                // sigma^2 * (theta^K * D^2) = n_top*len*(D-len) + 2*sum_k theta^(K-k)*gamma_num_k
                int128 num = static_cast<int128>(n_top) * len * (d_grid - len);
                for (unsigned k = 1; k <= k_terms; ++k) {
                    const std::int64_t gn = indicator_gamma_num(n_pow[k], d_grid, i, j);
                    if (gn == 0) continue;
                    num += 2 * static_cast<int128>(n_top / n_pow[k]) * gn;
                }
                if (num > local.num ||
                    (num == local.num && (i < local.i || (i == local.i && j < local.j)))) {
                    local = {num, i, j};
                }
            }
        }
        best[wid] = local;
    };

    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();

    GridBest top;
    for (const auto& cand : best)
        if (cand.num > top.num ||
            (cand.num == top.num && (cand.i < top.i || (cand.i == top.i && cand.j < top.j))))
            top = cand;

    SupSigmaResult r;
    r.theta = theta;
    r.k_terms = k_terms;
    r.grid_denom = grid_denom;
    r.a = mpq_class(static_cast<long>(top.i), static_cast<long>(d_grid));
    r.b = mpq_class(static_cast<long>(top.j), static_cast<long>(d_grid));
    r.a.canonicalize();
    r.b.canonicalize();
    // recompute the winner through the general exact route; this also yields
    // the per-k correlation table
    const StepFunction ind = centered_indicator(r.a, r.b);
    SigmaResult sig = sigma_identity(ind, theta, k_terms);
    r.sigma_sq = *sig.sigma_sq;
    r.sigma_max = sig.sigma;
    r.gammas = std::move(sig.gammas);

    if (!cache_path.empty()) {
        std::ofstream out(cache_path, std::ios::trunc);
        if (out) {
            out << "# " << key << "\n";
            out << "a=" << r.a << "\nb=" << r.b << "\nsigma_sq=" << r.sigma_sq << "\n";
            out << format_correlation_cache(r);
        }
    }
    return r;
}

std::string format_correlation_cache(const SupSigmaResult& r) {
    std::ostringstream out;
    out << "# theta a b k gamma\n";
    for (std::size_t k = 0; k < r.gammas.size(); ++k)
        out << r.theta << " " << r.a << " " << r.b << " " << (k + 1) << " "
            << r.gammas[k] << "\n";
    return out.str();
}

}  // namespace lacuna
