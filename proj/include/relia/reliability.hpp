#pragma once

#include <Eigen/Core>

#include <optional>
#include <string_view>
#include <vector>

#include "relia/encoding.hpp"
#include "relia/factor.hpp"
#include "relia/judgment.hpp"
#include "relia/stats.hpp"

namespace relia {

/// McDonald's omega from a one-factor solution:
///
///   (sum lambda)^2 / ((sum lambda)^2 + sum theta_ii + 2 sum_{i<j} theta_ij)
///
/// With the default zero error covariances the denominator is just
/// (sum lambda)^2 + sum theta_ii. The value is clamped into [0, 1];
/// rank-deficient inputs plus sampling noise can push the raw ratio
/// slightly out of range, and `clamped` (when given) reports that it
/// happened so the excursion stays visible. Throws UndefinedReliability
/// when the denominator is zero.
double mcdonalds_omega(const FactorSolution& sol, bool* clamped = nullptr);

/// Cronbach's alpha over item columns:
///
///   alpha = k/(k-1) * (1 - sum_i var_i / var_total)
///
/// Sample variances use the n-1 denominator; var_total is the variance
/// of row sums. Alpha is reported unclamped -- a negative alpha is a
/// meaningful pathology indicator. Throws UndefinedReliability when the
/// total variance is zero.
double cronbach_alpha(const Eigen::Ref<const Eigen::MatrixXd>& items);

/// Interpretation bands for reliability coefficients. A value exactly
/// at a threshold takes the lower band (0.9 is Good, 0.5 is
/// Unacceptable).
enum class ReliabilityBand {
    Excellent, Good, Acceptable, Questionable, Poor, Unacceptable
};

std::string_view to_string(ReliabilityBand band);
ReliabilityBand interpret_reliability(double value);

struct ReliabilityDiagnostics {
    std::vector<int> dropped_columns;
    std::vector<double> nonresponse_rate_per_column;
    bool converged = true;
    int iterations = 0;
    bool omega_clamped = false;
    bool identical_columns_shortcut = false;
    bool negative_loadings = false;
    /// Set whenever NonResponse cells were present: distinct failed
    /// judgments collapse into one category, so the computed value is an
    /// upper bound on reliability.
    bool upper_bound = false;
    ItemEncoding encoding = ItemEncoding::IntegerCodes;
};

struct ReliabilityReport {
    double omega = 0;
    std::optional<double> alpha;  // absent when its denominator is zero
    std::optional<FiveNumberSummary> irr_summary;
    ReliabilityDiagnostics diagnostics;
};

/// Full pipeline from categorical judgments to omega: encode ->
/// correlate -> fit one factor -> omega, with alpha computed alongside
/// and all diagnostics populated.
///
/// When every replication column is identical as a category sequence
/// the result is omega = 1 exactly, no fitting involved: a judge that
/// never wavers is perfectly reliable under any encoding. Requires a
/// validated matrix with at least 2 questions and at least 2
/// replications; otherwise throws DataError (or propagates
/// DegenerateInput when too few usable columns remain).
ReliabilityReport omega_from_judgments(
    const JudgmentMatrix& matrix,
    const EncodingScheme& scheme = EncodingScheme::integer_codes(),
    double tol = 1e-6, int max_iter = 200);

}  // namespace relia
