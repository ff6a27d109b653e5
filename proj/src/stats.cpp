#include "relia/stats.hpp"

#include <Eigen/Dense>

namespace relia {

FiveNumberSummary five_number_summary(std::vector<double> values) {
    if (values.empty()) throw DataError("five-number summary of empty input");
    std::sort(values.begin(), values.end());
    FiveNumberSummary s;
    s.min = values.front();
    s.q1 = quantile_type7_sorted(values, 0.25);
    s.median = quantile_type7_sorted(values, 0.5);
    s.q3 = quantile_type7_sorted(values, 0.75);
    s.max = values.back();
    return s;
}

MeanSe mean_and_standard_error(const std::vector<double>& replication_accuracies) {
    const auto n = replication_accuracies.size();
    if (n < 2)
        throw DegenerateInput("standard error needs at least two replications, got " +
                              std::to_string(n));
    const Eigen::Map<const Eigen::VectorXd> v(replication_accuracies.data(),
                                              static_cast<Eigen::Index>(n));
    MeanSe out;
    out.mean = v.mean();
    out.se = std::sqrt(sample_variance(v) / static_cast<double>(n));
    return out;
}

MeanSe mean_and_standard_error(const Eigen::Ref<const Eigen::MatrixXd>& correctness) {
    if (correctness.rows() == 0) throw DegenerateInput("correctness matrix has no questions");
    std::vector<double> acc(static_cast<std::size_t>(correctness.cols()));
    for (Eigen::Index r = 0; r < correctness.cols(); ++r)
        acc[static_cast<std::size_t>(r)] = correctness.col(r).mean();
    return mean_and_standard_error(acc);
}

}  // namespace relia
