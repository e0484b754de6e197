#pragma once

// Exact star and extreme discrepancy of finite point sets in [0,1).
//
// For the sorted set x_(1) <= ... <= x_(N):
//   D_N* = max_i max( i/N - x_(i),  x_(i) - (i-1)/N )
//   D_N  = 1/N + max_i( i/N - x_(i) ) - min_i( i/N - x_(i) )
// both equal to the half-open-interval suprema of the definitions.  A
// critical-interval brute-force oracle covers small N, and a checkpointed
// incremental evaluator serves the LIL experiments.

#include <cstddef>
#include <functional>
#include <set>
#include <vector>

namespace lacuna {

class PointSet {
  public:
    PointSet() = default;
    explicit PointSet(std::vector<double> points);

    std::size_t size() const { return points_.size(); }
    const std::vector<double>& points() const { return points_; }
    const std::vector<double>& sorted() const { return sorted_; }

  private:
    std::vector<double> points_;
    std::vector<double> sorted_;
};

struct DiscrepancyValue {
    double star = 0.0;
    double extreme = 0.0;
    std::size_t n = 0;
};

double star_discrepancy(const PointSet& ps);
double extreme_discrepancy(const PointSet& ps);

// Enumerates all critical intervals [a,b): endpoints at 0, at the points,
// just above the points, and in the limit b -> 1.  Exact up to double
// arithmetic; N <= 14 enforced.
DiscrepancyValue brute_force_discrepancy(const PointSet& ps);

// Feeds points one at a time into an incremental sorted multiset and
// evaluates both formulas at each checkpoint (strictly increasing N values).
// Checkpoints beyond the stream length are skipped.
std::vector<std::pair<std::size_t, DiscrepancyValue>> prefix_discrepancies(
    const std::function<double(std::size_t)>& point_at, std::size_t count,
    const std::vector<std::size_t>& checkpoints);

// Geometric checkpoint grid: unique rounded values of ratio^j capped at
// n_max, with n_max always included.
std::vector<std::size_t> geometric_checkpoints(std::size_t n_max, double ratio);

// Incremental helper shared by prefix_discrepancies and the LIL harness.
class IncrementalDiscrepancy {
  public:
    void insert(double x) { points_.insert(x); }
    std::size_t size() const { return points_.size(); }
    DiscrepancyValue evaluate() const;

  private:
    std::multiset<double> points_;
};

}  // namespace lacuna
