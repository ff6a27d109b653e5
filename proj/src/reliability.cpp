#include "relia/reliability.hpp"

#include <cmath>
#include <string>

#include "relia/correlation.hpp"
#include "relia/error.hpp"

namespace relia {

double mcdonalds_omega(const FactorSolution& sol, bool* clamped) {
    if (clamped) *clamped = false;
    if (sol.size() < 2)
        throw DegenerateInput("omega needs k >= 2 items, got " +
                              std::to_string(sol.size()));
    if (!sol.loadings.allFinite() || !sol.uniquenesses.allFinite())
        throw NumericError("factor solution has non-finite values");

    const double loading_sum_sq = std::pow(sol.loadings.sum(), 2);
    double error_sum = sol.uniquenesses.sum();
    if (sol.error_covariances.size() != 0) {
        if (!sol.error_covariances.allFinite())
            throw NumericError("error covariances have non-finite values");
        const auto& ec = sol.error_covariances;
        for (Eigen::Index i = 0; i < ec.rows(); ++i)
            for (Eigen::Index j = i + 1; j < ec.cols(); ++j)
                error_sum += 2.0 * ec(i, j);
    }

    const double denom = loading_sum_sq + error_sum;
    if (denom == 0.0)
        throw UndefinedReliability("omega denominator is zero (no loadings, no error)");
    const double raw = loading_sum_sq / denom;
    const double omega = std::clamp(raw, 0.0, 1.0);
    if (clamped && omega != raw) *clamped = true;
    return omega;
}

double cronbach_alpha(const Eigen::Ref<const Eigen::MatrixXd>& items) {
    const Eigen::Index k = items.cols();
    if (k < 2)
        throw DegenerateInput("alpha needs k >= 2 columns, got " + std::to_string(k));
    if (items.rows() < 2)
        throw DegenerateInput("alpha needs at least 2 rows, got " +
                              std::to_string(items.rows()));
    if (!items.allFinite()) throw NumericError("item matrix has non-finite values");

    double item_var_sum = 0.0;
    for (Eigen::Index c = 0; c < k; ++c) item_var_sum += sample_variance(items.col(c));
    const double total_var = sample_variance(items.rowwise().sum());
    if (total_var == 0.0)
        throw UndefinedReliability("total score variance is zero");
    return (static_cast<double>(k) / static_cast<double>(k - 1)) *
           (1.0 - item_var_sum / total_var);
}

std::string_view to_string(ReliabilityBand band) {
    switch (band) {
        case ReliabilityBand::Excellent: return "Excellent";
        case ReliabilityBand::Good: return "Good";
        case ReliabilityBand::Acceptable: return "Acceptable";
        case ReliabilityBand::Questionable: return "Questionable";
        case ReliabilityBand::Poor: return "Poor";
        case ReliabilityBand::Unacceptable: return "Unacceptable";
    }
    return "Unacceptable";
}

ReliabilityBand interpret_reliability(double value) {
    if (!std::isfinite(value)) throw NumericError("reliability value is not finite");
    if (value > 0.9) return ReliabilityBand::Excellent;
    if (value > 0.8) return ReliabilityBand::Good;
    if (value > 0.7) return ReliabilityBand::Acceptable;
    if (value > 0.6) return ReliabilityBand::Questionable;
    if (value > 0.5) return ReliabilityBand::Poor;
    return ReliabilityBand::Unacceptable;
}

ReliabilityReport omega_from_judgments(const JudgmentMatrix& matrix,
                                       const EncodingScheme& scheme,
                                       double tol, int max_iter) {
    const ValidationResult check = validate(matrix);
    if (!check.ok())
        throw DataError("judgment matrix failed validation: " +
                        std::string(to_string(check.defects.front().kind)) + " (" +
                        check.defects.front().detail + ")");
    if (matrix.questions() < 2)
        throw DataError("omega needs at least 2 questions, got " +
                        std::to_string(matrix.questions()));
    if (matrix.replications() < 2)
        throw DataError("omega needs at least 2 replications, got " +
                        std::to_string(matrix.replications()));

    ReliabilityReport report;
    report.diagnostics.encoding = item_encoding(scheme.mode);
    report.diagnostics.nonresponse_rate_per_column = nonresponse_rate_per_column(matrix);
    report.diagnostics.upper_bound = has_nonresponse(matrix);

    const ItemMatrix items = encode(matrix, scheme);

    if (all_columns_identical(matrix)) {
        // A judge that never wavers is perfectly reliable under any
        // encoding; no fitting, no rounding.
        report.omega = 1.0;
        report.diagnostics.identical_columns_shortcut = true;
    } else {
        const CorrelationMatrix corr = correlation_matrix(items.values);
        const FactorSolution sol = fit_one_factor(corr, tol, max_iter);

        report.diagnostics.dropped_columns = corr.dropped_columns;
        report.diagnostics.converged = sol.converged;
        report.diagnostics.iterations = sol.iterations;
        report.diagnostics.negative_loadings = has_negative_loading(sol);
        report.omega = mcdonalds_omega(sol, &report.diagnostics.omega_clamped);
    }

    try {
        report.alpha = cronbach_alpha(items.values);
    } catch (const UndefinedReliability&) {
        report.alpha.reset();  // zero total variance: alpha has no value here
    }
    return report;
}

}  // namespace relia
