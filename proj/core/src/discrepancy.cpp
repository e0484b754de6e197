#include "lacuna/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lacuna/errors.hpp"

namespace lacuna {

PointSet::PointSet(std::vector<double> points) : points_(std::move(points)) {
    for (double x : points_)
        if (!(x >= 0.0 && x < 1.0))
            throw std::invalid_argument("PointSet: points must lie in [0,1)");
    sorted_ = points_;
    std::sort(sorted_.begin(), sorted_.end());
}

double star_discrepancy(const PointSet& ps) {
    const auto& x = ps.sorted();
    const std::size_t n = x.size();
    if (n == 0) throw std::invalid_argument("star_discrepancy: empty point set");
    double best = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double xi = x[i - 1];
        best = std::max(best, static_cast<double>(i) / n - xi);
        best = std::max(best, xi - static_cast<double>(i - 1) / n);
    }
    return best;
}

double extreme_discrepancy(const PointSet& ps) {
    const auto& x = ps.sorted();
    const std::size_t n = x.size();
    if (n == 0) throw std::invalid_argument("extreme_discrepancy: empty point set");
    double hi = -2.0, lo = 2.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double d = static_cast<double>(i) / n - x[i - 1];
        hi = std::max(hi, d);
        lo = std::min(lo, d);
    }
    return 1.0 / static_cast<double>(n) + hi - lo;
}

DiscrepancyValue brute_force_discrepancy(const PointSet& ps) {
    const std::size_t n = ps.size();
    if (n == 0) throw std::invalid_argument("brute_force_discrepancy: empty point set");
    if (n > 14) throw resource_error("brute_force_discrepancy: N > 14");

    const auto& xs = ps.sorted();
    // candidate endpoints: value plus an epsilon flag ("just above value"),
    // so every way an interval can open or close around a point is tried
    struct End { double v; bool above; };
    std::vector<End> as, bs;
    as.push_back({0.0, false});
    for (double x : xs) {
        as.push_back({x, false});
        as.push_back({x, true});
        bs.push_back({x, false});
        bs.push_back({x, true});
    }
    bs.push_back({1.0, false});  // b -> 1^- limit: [a,1)

    auto count_in = [&](const End& a, const End& b) {
        // membership of point x in [a,b): left end includes x == a.v only when
        // not "above"; right end includes x == b.v only when "above"
        std::size_t c = 0;
        for (double x : xs) {
            const bool ge_a = x > a.v || (x == a.v && !a.above);
            const bool lt_b = x < b.v || (x == b.v && b.above);
            if (ge_a && lt_b) ++c;
        }
        return c;
    };

    DiscrepancyValue out;
    out.n = n;
    for (const auto& a : as)
        for (const auto& b : bs) {
            if (a.v > b.v || (a.v == b.v && (a.above || !b.above))) continue;  // need a < b
            const double len = b.v - a.v;  // epsilons vanish in the limit
            const double dev =
                std::abs(static_cast<double>(count_in(a, b)) / static_cast<double>(n) - len);
            out.extreme = std::max(out.extreme, dev);
            if (a.v == 0.0 && !a.above) out.star = std::max(out.star, dev);
        }
    return out;
}

DiscrepancyValue IncrementalDiscrepancy::evaluate() const {
    const std::size_t n = points_.size();
    if (n == 0) throw std::invalid_argument("IncrementalDiscrepancy: empty");
    DiscrepancyValue out;
    out.n = n;
    double star = 0.0, hi = -2.0, lo = 2.0;
    std::size_t i = 1;
    for (double xi : points_) {
        const double d = static_cast<double>(i) / n - xi;
        hi = std::max(hi, d);
        lo = std::min(lo, d);
        star = std::max(star, std::max(d, xi - static_cast<double>(i - 1) / n));
        ++i;
    }
    out.star = star;
    out.extreme = 1.0 / static_cast<double>(n) + hi - lo;
    return out;
}

std::vector<std::pair<std::size_t, DiscrepancyValue>> prefix_discrepancies(
    const std::function<double(std::size_t)>& point_at, std::size_t count,
    const std::vector<std::size_t>& checkpoints) {
    for (std::size_t i = 1; i < checkpoints.size(); ++i)
        if (checkpoints[i] <= checkpoints[i - 1])
            throw std::invalid_argument("prefix_discrepancies: checkpoints must increase");

    std::vector<std::pair<std::size_t, DiscrepancyValue>> out;
    IncrementalDiscrepancy inc;
    std::size_t next_cp = 0;
    for (std::size_t k = 1; k <= count; ++k) {
        inc.insert(point_at(k));
        while (next_cp < checkpoints.size() && checkpoints[next_cp] == k) {
            out.emplace_back(k, inc.evaluate());
            ++next_cp;
        }
    }
    return out;
}

std::vector<std::size_t> geometric_checkpoints(std::size_t n_max, double ratio) {
    if (n_max < 1) throw std::invalid_argument("geometric_checkpoints: n_max must be >= 1");
    if (ratio <= 1.0) throw std::invalid_argument("geometric_checkpoints: ratio must be > 1");
    std::vector<std::size_t> cps;
    double v = 1.0;
    while (true) {
        const auto n = static_cast<std::size_t>(std::llround(v));
        if (n >= n_max) break;
        if (cps.empty() || n > cps.back()) cps.push_back(n);
        v *= ratio;
    }
    cps.push_back(n_max);
    return cps;
}

}  // namespace lacuna
