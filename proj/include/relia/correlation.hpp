#pragma once

#include <Eigen/Core>

#include <vector>

namespace relia {

/// Pearson correlation matrix of the retained item columns.
///
/// dropped_columns lists the original column indices that were excluded
/// for having (numerically) zero sample variance; values is the k x k
/// matrix over the survivors, exactly symmetric with unit diagonal and
/// entries clamped to [-1, 1].
struct CorrelationMatrix {
    Eigen::MatrixXd values;
    std::vector<int> dropped_columns;
    int retained() const { return static_cast<int>(values.rows()); }
};

/// Correlates replication columns of an item matrix (rows are
/// observations). Columns that are exactly equal get an off-diagonal of
/// exactly 1 rather than a rounded product. Requires at least two rows;
/// throws DegenerateInput when fewer than two columns survive the
/// zero-variance drop.
CorrelationMatrix correlation_matrix(const Eigen::Ref<const Eigen::MatrixXd>& items);

}  // namespace relia
