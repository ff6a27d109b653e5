#include "relia/simulate.hpp"

#include <cmath>
#include <string>

#include "relia/error.hpp"
#include "relia/rng.hpp"

namespace relia {

SyntheticJudgeSpec SyntheticJudgeSpec::uniform(double loading, int n_questions,
                                               int n_replications) {
    SyntheticJudgeSpec spec;
    spec.loadings.assign(static_cast<std::size_t>(std::max(n_replications, 0)), loading);
    spec.n_questions = n_questions;
    spec.n_replications = n_replications;
    return spec;
}

void validate(const SyntheticJudgeSpec& spec) {
    if (spec.n_questions < 1)
        throw ConfigError("n_questions must be >= 1, got " +
                          std::to_string(spec.n_questions));
    if (spec.n_replications < 1)
        throw ConfigError("n_replications must be >= 1, got " +
                          std::to_string(spec.n_replications));
    if (static_cast<int>(spec.loadings.size()) != spec.n_replications)
        throw ConfigError("need one loading per replication: " +
                          std::to_string(spec.loadings.size()) + " loadings for " +
                          std::to_string(spec.n_replications) + " replications");
    for (double l : spec.loadings)
        if (!(l >= 0.0 && l <= 1.0))
            throw ConfigError("loading out of [0, 1]: " + std::to_string(l));
    if (spec.n_categories < 2 || spec.n_categories > 5)
        throw ConfigError("n_categories must be in [2, 5], got " +
                          std::to_string(spec.n_categories));
    if (!(spec.non_response_rate >= 0.0 && spec.non_response_rate <= 1.0))
        throw ConfigError("non_response_rate out of [0, 1]: " +
                          std::to_string(spec.non_response_rate));
}

ItemMatrix generate_continuous(const SyntheticJudgeSpec& spec) {
    validate(spec);
    Rng rng(spec.seed);
    ItemMatrix out;
    out.encoding = ItemEncoding::Continuous;
    out.values.resize(spec.n_questions, spec.n_replications);
    for (int q = 0; q < spec.n_questions; ++q) {
        const double f = rng.normal();
        for (int r = 0; r < spec.n_replications; ++r) {
            const double lambda = spec.loadings[static_cast<std::size_t>(r)];
            out.values(q, r) =
                lambda * f + std::sqrt(1.0 - lambda * lambda) * rng.normal();
        }
    }
    return out;
}

CategoricalSample generate_categorical_sample(const SyntheticJudgeSpec& spec) {
    validate(spec);
    Rng rng(spec.seed);
    CategoricalSample sample;
    sample.true_categories.reserve(static_cast<std::size_t>(spec.n_questions));

    std::vector<std::string> ids;
    std::vector<std::vector<Category>> rows;
    ids.reserve(static_cast<std::size_t>(spec.n_questions));
    rows.reserve(static_cast<std::size_t>(spec.n_questions));

    for (int q = 0; q < spec.n_questions; ++q) {
        const int truth = rng.uniform_int(spec.n_categories);
        sample.true_categories.push_back(static_cast<Category>(truth));
        std::vector<Category> row;
        row.reserve(static_cast<std::size_t>(spec.n_replications));
        for (int r = 0; r < spec.n_replications; ++r) {
            const double lambda = spec.loadings[static_cast<std::size_t>(r)];
            int drawn = truth;
            if (!rng.chance(lambda)) {
                // Uniform over the other categories: skip past the truth.
                const int offset = rng.uniform_int(spec.n_categories - 1);
                drawn = offset >= truth ? offset + 1 : offset;
            }
            Category cell = static_cast<Category>(drawn);
            if (rng.chance(spec.non_response_rate)) cell = Category::NonResponse;
            row.push_back(cell);
        }
        ids.push_back("q" + std::to_string(q + 1));
        rows.push_back(std::move(row));
    }

    JudgmentMeta meta;
    meta.benchmark = "synthetic";
    meta.judge = "synthetic";
    sample.matrix =
        JudgmentMatrix(std::move(ids), std::move(rows), spec.n_replications, meta);
    return sample;
}

JudgmentMatrix generate_categorical(const SyntheticJudgeSpec& spec) {
    return generate_categorical_sample(spec).matrix;
}

double analytic_omega(const std::vector<double>& loadings) {
    if (loadings.empty()) throw DegenerateInput("no loadings");
    double sum = 0.0, theta = 0.0;
    bool any_nonzero = false;
    for (double l : loadings) {
        if (!(std::abs(l) <= 1.0))
            throw ConfigError("loading out of [-1, 1]: " + std::to_string(l));
        if (l != 0.0) any_nonzero = true;
        sum += l;
        theta += 1.0 - l * l;
    }
    if (!any_nonzero)
        throw UndefinedReliability("all loadings zero: no common factor to measure");
    return sum * sum / (sum * sum + theta);
}

}  // namespace relia
