#pragma once

#include <cstdint>
#include <vector>

#include "relia/encoding.hpp"
#include "relia/judgment.hpp"

namespace relia {

/// Synthetic judge with known ground-truth reliability, the oracle for
/// everything the estimation side computes.
struct SyntheticJudgeSpec {
    std::vector<double> loadings;  // one per replication, each in [0, 1]
    int n_questions = 0;
    int n_replications = 0;
    int n_categories = 5;          // letters used by the categorical model
    double non_response_rate = 0;  // in [0, 1]
    std::uint64_t seed = 0;

    static SyntheticJudgeSpec uniform(double loading, int n_questions,
                                      int n_replications);
};

/// Throws ConfigError when counts, loadings or rates are out of range.
void validate(const SyntheticJudgeSpec& spec);

/// One-factor continuous data: per question a standard-normal factor f,
/// per replication lambda_i * f + sqrt(1 - lambda_i^2) * noise. Column
/// variances are 1 in expectation, so the fitted omega should approach
/// analytic_omega(loadings) as n_questions grows. Deterministic given
/// the seed.
ItemMatrix generate_continuous(const SyntheticJudgeSpec& spec);

struct CategoricalSample {
    JudgmentMatrix matrix;
    std::vector<Category> true_categories;  // per question
};

/// Categorical analogue: per question a uniformly drawn true category;
/// per replication the true category with probability lambda_i, else a
/// uniformly random different one; each cell independently overwritten
/// with NonResponse at non_response_rate. The simplest one-parameter
/// stand-in for judge temperature -- an artifact construct, not a claim
/// about real judges. Deterministic given the seed.
CategoricalSample generate_categorical_sample(const SyntheticJudgeSpec& spec);

JudgmentMatrix generate_categorical(const SyntheticJudgeSpec& spec);

/// Ground-truth omega for a loading vector with theta_ii = 1 -
/// lambda_i^2: (sum lambda)^2 / ((sum lambda)^2 + sum(1 - lambda_i^2)).
/// Requires |lambda_i| <= 1; throws UndefinedReliability when all
/// loadings are zero.
double analytic_omega(const std::vector<double>& loadings);

}  // namespace relia
