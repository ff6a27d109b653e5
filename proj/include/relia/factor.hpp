#pragma once

#include <Eigen/Core>

#include "relia/correlation.hpp"

namespace relia {

/// One-factor decomposition of a correlation matrix: per-item loadings
/// lambda_i on the single common factor and uniquenesses theta_ii
/// (error variances) with lambda_i^2 + theta_ii <= 1 per item.
///
/// error_covariances holds the off-diagonal error terms theta_ij. It is
/// empty by default, meaning all zero: replications drawn independently
/// have uncorrelated errors, so the fit never estimates them. Callers
/// may still install a matrix before computing omega.
struct FactorSolution {
    Eigen::VectorXd loadings;
    Eigen::VectorXd uniquenesses;
    Eigen::MatrixXd error_covariances;  // empty == all zero
    bool converged = false;
    int iterations = 0;

    int size() const { return static_cast<int>(loadings.size()); }
};

/// Any loading negative after the global sign fix. Surfaced as a
/// diagnostic: zeroing such loadings would silently inflate omega.
bool has_negative_loading(const FactorSolution& sol);

/// Leading eigenpair estimate with its convergence evidence.
struct LeadingEigenpair {
    double value = 0;
    Eigen::VectorXd vector;
    double residual = 0;  // ||A v - value v||_2 at the returned pair
    int iterations = 0;
    bool converged = false;
};

/// Largest-magnitude eigenpair of a symmetric matrix by power
/// iteration.
///
/// Starts from the normalized all-ones vector so the extraction is
/// deterministic; when that start lies in the null space the iteration
/// restarts from canonical basis vectors, still deterministically.
/// Convergence means ||A v - e v||_2 <= tol * ||A||_F. A zero matrix
/// yields eigenvalue 0 with the start vector. With require_convergence
/// (the default) a run that exhausts max_iter throws NumericError with
/// the final residual in the message; otherwise the best pair so far is
/// returned with converged = false. Non-finite input always throws.
LeadingEigenpair leading_eigenpair(const Eigen::Ref<const Eigen::MatrixXd>& a,
                                   double tol = 1e-10, int max_iter = 1000,
                                   bool require_convergence = true);

/// Iterated principal-axis fit of the one-factor model.
///
/// Communalities h_i^2 start at the largest absolute off-diagonal of row
/// i (an inversion-free initialization; these correlation matrices are
/// routinely singular, so anything requiring R^-1 is off the table).
/// Each sweep places h^2 on the diagonal, extracts the leading eigenpair
/// (e1, v1) of the reduced matrix, sets lambda = sqrt(max(e1, 0)) * v1
/// and h^2 <- clamp(lambda^2, 0, 1), and stops when max |delta h^2| <
/// tol or after max_iter sweeps. Uniquenesses are 1 - lambda_i^2 with
/// lambda clamped into [-1, 1] first, and the global sign is flipped so
/// sum(lambda) >= 0. Convergence failure is reported through the flag,
/// not thrown; only non-finite input or k < 2 throws.
FactorSolution fit_one_factor(const Eigen::Ref<const Eigen::MatrixXd>& corr,
                              double tol = 1e-6, int max_iter = 200);

inline FactorSolution fit_one_factor(const CorrelationMatrix& corr,
                                     double tol = 1e-6, int max_iter = 200) {
    return fit_one_factor(corr.values, tol, max_iter);
}

}  // namespace relia
