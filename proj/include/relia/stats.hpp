#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <vector>

#include "relia/error.hpp"

namespace relia {

/// Sample variance (n-1 denominator) of an Eigen column/vector expression.
template <typename Derived>
double sample_variance(const Eigen::MatrixBase<Derived>& v) {
    const auto n = v.size();
    if (n < 2) return 0.0;
    const double mean = v.derived().template cast<double>().mean();
    const double ss =
        (v.derived().template cast<double>().array() - mean).square().sum();
    return ss / static_cast<double>(n - 1);
}

struct FiveNumberSummary {
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
    double range() const { return max - min; }
};

/// Five-number summary with quartiles by linear interpolation between
/// order statistics (the common type-7 convention: h = (n-1)p). Min and
/// max are exact order statistics. Throws DataError on empty input.
FiveNumberSummary five_number_summary(std::vector<double> values);

/// Single type-7 quantile of already-sorted data, p in [0, 1].
inline double quantile_type7_sorted(const std::vector<double>& sorted, double p) {
    const auto n = sorted.size();
    if (n == 0) throw DataError("quantile of empty input");
    if (n == 1) return sorted.front();
    const double h = static_cast<double>(n - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= n) return sorted.back();
    return sorted[lo] + (h - std::floor(h)) * (sorted[lo + 1] - sorted[lo]);
}

struct MeanSe {
    double mean = 0;
    double se = 0;
};

/// Mean and standard error of per-replication accuracies.
///
/// Input rows are questions, columns replications, cells 0/1 correctness
/// indicators. Each column collapses to one accuracy; the result is the
/// mean of those accuracies and sd/sqrt(n) across replications (n-1
/// variance), matching reporting that varies only the replication.
/// Throws DegenerateInput with fewer than two replications.
MeanSe mean_and_standard_error(const Eigen::Ref<const Eigen::MatrixXd>& correctness);

/// Same metric when the per-replication accuracies are already in hand.
MeanSe mean_and_standard_error(const std::vector<double>& replication_accuracies);

}  // namespace relia
