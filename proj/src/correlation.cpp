#include "relia/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relia/error.hpp"
#include "relia/stats.hpp"

namespace relia {

CorrelationMatrix correlation_matrix(const Eigen::Ref<const Eigen::MatrixXd>& items) {
    if (items.rows() < 2)
        throw DegenerateInput("correlation needs at least two observations, got " +
                              std::to_string(items.rows()));
    if (!items.allFinite()) throw NumericError("item matrix has non-finite values");

    CorrelationMatrix out;
    std::vector<int> keep;
    for (Eigen::Index c = 0; c < items.cols(); ++c) {
        if (sample_variance(items.col(c)) > 0.0)
            keep.push_back(static_cast<int>(c));
        else
            out.dropped_columns.push_back(static_cast<int>(c));
    }
    const int k = static_cast<int>(keep.size());
    if (k < 2)
        throw DegenerateInput("fewer than two non-constant columns: " +
                              std::to_string(k) + " of " + std::to_string(items.cols()));

    // Center and unit-scale the survivors once; the correlation is then a
    // plain inner product.
    const Eigen::Index n = items.rows();
    Eigen::MatrixXd z(n, k);
    for (int j = 0; j < k; ++j) {
        Eigen::VectorXd col = items.col(keep[j]);
        col.array() -= col.mean();
        z.col(j) = col / std::sqrt(col.squaredNorm());
    }

    out.values.resize(k, k);
    for (int i = 0; i < k; ++i) {
        out.values(i, i) = 1.0;
        for (int j = i + 1; j < k; ++j) {
            double r;
            if (items.col(keep[i]) == items.col(keep[j]))
                r = 1.0;  // bitwise-equal columns must hit 1 exactly
            else
                r = std::clamp(z.col(i).dot(z.col(j)), -1.0, 1.0);
            out.values(i, j) = r;
            out.values(j, i) = r;  // mirrored, not recomputed: exact symmetry
        }
    }
    return out;
}

}  // namespace relia
