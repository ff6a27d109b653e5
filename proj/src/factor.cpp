#include "relia/factor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relia/error.hpp"

namespace relia {

bool has_negative_loading(const FactorSolution& sol) {
    return (sol.loadings.array() < 0.0).any();
}

LeadingEigenpair leading_eigenpair(const Eigen::Ref<const Eigen::MatrixXd>& a,
                                   double tol, int max_iter,
                                   bool require_convergence) {
    if (a.rows() != a.cols())
        throw DataError("leading eigenpair of a non-square matrix (" +
                        std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + ")");
    if (!a.allFinite()) throw NumericError("matrix has non-finite values");

    const Eigen::Index k = a.rows();
    LeadingEigenpair best;
    best.vector = Eigen::VectorXd::Constant(k, 1.0 / std::sqrt(static_cast<double>(k)));

    const double scale = a.norm();  // Frobenius
    if (scale == 0.0) {
        best.converged = true;  // zero matrix: eigenvalue 0, start vector as-is
        return best;
    }

    Eigen::VectorXd v = best.vector;
    Eigen::VectorXd u = a * v;
    int next_restart = 0;
    best.residual = (u - best.value * v).norm();

    for (int it = 1; it <= max_iter; ++it) {
        const double un = u.norm();
        if (un == 0.0) {
            // Iterate fell into the null space; restart from the next
            // canonical basis vector (scale > 0 guarantees one works).
            if (next_restart >= k) break;
            v = Eigen::VectorXd::Unit(k, next_restart++);
            u = a * v;
            continue;
        }
        v = u / un;
        u = a * v;
        const double e = v.dot(u);
        const double residual = (u - e * v).norm();
        if (residual < best.residual) {
            best.value = e;
            best.vector = v;
            best.residual = residual;
        }
        best.iterations = it;
        if (residual <= tol * scale) {
            best.value = e;
            best.vector = v;
            best.residual = residual;
            best.converged = true;
            return best;
        }
    }

    if (require_convergence)
        throw NumericError("power iteration did not converge in " +
                           std::to_string(max_iter) + " iterations (residual " +
                           std::to_string(best.residual) + ")");
    return best;
}

FactorSolution fit_one_factor(const Eigen::Ref<const Eigen::MatrixXd>& corr,
                              double tol, int max_iter) {
    const Eigen::Index k = corr.rows();
    if (corr.cols() != k)
        throw DataError("correlation matrix is not square");
    if (k < 2)
        throw DegenerateInput("one-factor fit needs k >= 2 items, got " +
                              std::to_string(k));
    if (!corr.allFinite()) throw NumericError("correlation matrix has non-finite values");

    // Inversion-free communality start: largest |r| in each row.
    Eigen::VectorXd h2(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        double m = 0.0;
        for (Eigen::Index j = 0; j < k; ++j)
            if (j != i) m = std::max(m, std::abs(corr(i, j)));
        h2[i] = m;
    }

    FactorSolution sol;
    sol.loadings = Eigen::VectorXd::Zero(k);
    Eigen::MatrixXd reduced = corr;

    for (int it = 1; it <= max_iter; ++it) {
        reduced.diagonal() = h2;
        const LeadingEigenpair top =
            leading_eigenpair(reduced, 1e-10, 1000, /*require_convergence=*/false);
        sol.loadings = std::sqrt(std::max(top.value, 0.0)) * top.vector;
        const Eigen::VectorXd h2_new =
            sol.loadings.array().square().min(1.0).max(0.0);
        const double delta = (h2_new - h2).cwiseAbs().maxCoeff();
        h2 = h2_new;
        sol.iterations = it;
        if (delta < tol) {
            sol.converged = true;
            break;
        }
    }

    if (sol.loadings.sum() < 0.0) sol.loadings = -sol.loadings;
    sol.loadings = sol.loadings.array().min(1.0).max(-1.0);
    sol.uniquenesses = 1.0 - sol.loadings.array().square();
    return sol;
}

}  // namespace relia
