#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "relia/csv.hpp"
#include "relia/error.hpp"
#include "relia/factor.hpp"
#include "relia/reliability.hpp"
#include "relia/simulate.hpp"

using namespace relia;

namespace {

double fitted_omega(const ItemMatrix& items) {
    return mcdonalds_omega(fit_one_factor(correlation_matrix(items.values)));
}

double median_fitted_omega(double loading, int n_questions, int k, int seeds) {
    std::vector<double> values;
    for (int s = 0; s < seeds; ++s) {
        auto spec = SyntheticJudgeSpec::uniform(loading, n_questions, k);
        spec.seed = static_cast<std::uint64_t>(s + 1);
        values.push_back(fitted_omega(generate_continuous(spec)));
    }
    std::sort(values.begin(), values.end());
    return values[values.size() / 2];
}

}  // namespace

TEST_CASE("uniform specs repeat one loading across replications") {
    const auto spec = SyntheticJudgeSpec::uniform(0.7, 10, 4);
    CHECK_EQ(spec.loadings, std::vector<double>(4, 0.7));
    CHECK_EQ(spec.n_questions, 10);
    CHECK_EQ(spec.n_replications, 4);
    CHECK_NOTHROW(validate(spec));
}

TEST_CASE("spec validation rejects out-of-range parameters") {
    auto spec = SyntheticJudgeSpec::uniform(0.5, 10, 4);

    SUBCASE("no questions") {
        spec.n_questions = 0;
        CHECK_THROWS_AS(validate(spec), ConfigError);
    }
    SUBCASE("no replications") {
        spec.n_replications = 0;
        CHECK_THROWS_AS(validate(spec), ConfigError);
    }
    SUBCASE("loading count mismatch") {
        spec.loadings.pop_back();
        CHECK_THROWS_AS(validate(spec), ConfigError);
    }
    SUBCASE("loading out of range") {
        spec.loadings[0] = 1.5;
        CHECK_THROWS_AS(validate(spec), ConfigError);
        spec.loadings[0] = -0.1;
        CHECK_THROWS_AS(validate(spec), ConfigError);
    }
    SUBCASE("category count out of range") {
        spec.n_categories = 1;
        CHECK_THROWS_AS(validate(spec), ConfigError);
        spec.n_categories = 6;
        CHECK_THROWS_AS(validate(spec), ConfigError);
    }
    SUBCASE("non-response rate out of range") {
        spec.non_response_rate = 1.5;
        CHECK_THROWS_AS(validate(spec), ConfigError);
        spec.non_response_rate = -0.1;
        CHECK_THROWS_AS(validate(spec), ConfigError);
    }
}

TEST_CASE("continuous generation is a pure function of the spec") {
    auto spec = SyntheticJudgeSpec::uniform(0.6, 50, 5);
    spec.seed = 9;
    const auto a = generate_continuous(spec);
    const auto b = generate_continuous(spec);
    CHECK_EQ(a.values, b.values);
    CHECK_EQ(a.encoding, ItemEncoding::Continuous);
    CHECK_EQ(a.values.rows(), 50);
    CHECK_EQ(a.values.cols(), 5);

    spec.seed = 10;
    CHECK_NE(generate_continuous(spec).values, a.values);
}

TEST_CASE("unit loadings collapse every column onto the factor") {
    auto spec = SyntheticJudgeSpec::uniform(1.0, 20, 4);
    spec.seed = 3;
    const auto items = generate_continuous(spec);
    for (int c = 1; c < 4; ++c)
        CHECK_EQ(items.values.col(c), items.values.col(0));
}

TEST_CASE("zero loadings leave columns uncorrelated") {
    auto spec = SyntheticJudgeSpec::uniform(0.0, 8000, 2);
    spec.seed = 12;
    const auto corr = correlation_matrix(generate_continuous(spec).values);
    CHECK(std::abs(corr.values(0, 1)) < 0.05);
}

TEST_CASE("columns have unit variance and lambda-squared correlation") {
    auto spec = SyntheticJudgeSpec::uniform(0.8, 8000, 3);
    spec.seed = 5;
    const auto items = generate_continuous(spec);
    for (int c = 0; c < 3; ++c) {
        CHECK_EQ(sample_variance(items.values.col(c)),
                 doctest::Approx(1.0).epsilon(0.06));
    }
    const auto corr = correlation_matrix(items.values);
    CHECK_EQ(corr.values(0, 1), doctest::Approx(0.64).epsilon(0.06));
}

TEST_CASE("fitted omega approaches the analytic value as questions grow") {
    const double target = analytic_omega(std::vector<double>(20, 0.8));
    CHECK_EQ(target, doctest::Approx(0.9726443768996961).epsilon(1e-15));

    const struct { int n; double band; } stages[] = {
        {50, 0.10}, {200, 0.05}, {1000, 0.03}};
    for (const auto& stage : stages) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            auto spec = SyntheticJudgeSpec::uniform(0.8, stage.n, 20);
            spec.seed = seed;
            const double omega = fitted_omega(generate_continuous(spec));
            CHECK_EQ(omega, doctest::Approx(target).epsilon(stage.band));
        }
    }
}

TEST_CASE("median fitted omega is non-decreasing in the loading") {
    const double low = median_fitted_omega(0.2, 200, 10, 20);
    const double mid = median_fitted_omega(0.5, 200, 10, 20);
    const double high = median_fitted_omega(0.8, 200, 10, 20);
    CHECK(low <= mid);
    CHECK(mid <= high);
}

TEST_CASE("categorical generation is deterministic and well-labelled") {
    auto spec = SyntheticJudgeSpec::uniform(0.7, 12, 3);
    spec.seed = 44;
    const auto a = generate_categorical_sample(spec);
    const auto b = generate_categorical_sample(spec);
    CHECK(a.matrix == b.matrix);
    CHECK_EQ(a.true_categories, b.true_categories);
    CHECK_EQ(a.matrix.questions(), 12);
    CHECK_EQ(a.matrix.replications(), 3);
    CHECK_EQ(a.matrix.question_ids().front(), "q1");
    CHECK_EQ(a.matrix.question_ids().back(), "q12");
    CHECK_EQ(a.matrix.meta().benchmark, "synthetic");
    CHECK(validate(a.matrix).ok());
    CHECK(generate_categorical(spec) == a.matrix);
}

TEST_CASE("a perfectly loaded categorical judge echoes the truth") {
    auto spec = SyntheticJudgeSpec::uniform(1.0, 30, 5);
    spec.seed = 2;
    const auto sample = generate_categorical_sample(spec);
    CHECK(all_columns_identical(sample.matrix));
    for (int q = 0; q < 30; ++q)
        for (int r = 0; r < 5; ++r)
            CHECK_EQ(sample.matrix.at(q, r),
                     sample.true_categories[static_cast<std::size_t>(q)]);
    const auto report = omega_from_judgments(sample.matrix);
    CHECK_EQ(report.omega, 1.0);
}

TEST_CASE("a zero-loading judge never names the true category") {
    auto spec = SyntheticJudgeSpec::uniform(0.0, 2000, 2);
    spec.seed = 6;
    const auto sample = generate_categorical_sample(spec);
    int truth_hits = 0;
    int pair_matches = 0;
    for (int q = 0; q < 2000; ++q) {
        for (int r = 0; r < 2; ++r)
            if (sample.matrix.at(q, r) ==
                sample.true_categories[static_cast<std::size_t>(q)])
                ++truth_hits;
        if (sample.matrix.at(q, 0) == sample.matrix.at(q, 1)) ++pair_matches;
    }
    CHECK_EQ(truth_hits, 0);
    // Two wrong answers drawn uniformly from the 4 other letters agree
    // at rate 1/4.
    CHECK_EQ(pair_matches / 2000.0, doctest::Approx(0.25).epsilon(0.1));
}

TEST_CASE("non-response saturates at rate one") {
    auto spec = SyntheticJudgeSpec::uniform(0.9, 15, 4);
    spec.non_response_rate = 1.0;
    const auto m = generate_categorical(spec);
    for (int q = 0; q < 15; ++q)
        for (int r = 0; r < 4; ++r)
            CHECK_EQ(m.at(q, r), Category::NonResponse);
}

TEST_CASE("moderate non-response lands near its rate and flags upper bound") {
    auto spec = SyntheticJudgeSpec::uniform(0.8, 2000, 3);
    spec.non_response_rate = 0.2;
    spec.seed = 18;
    const auto m = generate_categorical(spec);
    const auto rates = nonresponse_rate_per_column(m);
    for (double rate : rates) CHECK_EQ(rate, doctest::Approx(0.2).epsilon(0.15));
    const auto report = omega_from_judgments(m);
    CHECK(report.diagnostics.upper_bound);
}

TEST_CASE("categorical truth respects the category count") {
    auto spec = SyntheticJudgeSpec::uniform(0.5, 500, 2);
    spec.n_categories = 3;
    spec.seed = 7;
    const auto sample = generate_categorical_sample(spec);
    for (int q = 0; q < 500; ++q) {
        CHECK(static_cast<int>(sample.true_categories[
                  static_cast<std::size_t>(q)]) < 3);
        for (int r = 0; r < 2; ++r)
            CHECK(static_cast<int>(sample.matrix.at(q, r)) < 3);
    }
}

TEST_CASE("analytic omega closed forms") {
    CHECK_EQ(analytic_omega({1, 1, 1}), 1.0);
    CHECK_EQ(analytic_omega(std::vector<double>(3, 0.8)),
             doctest::Approx(0.8421052631578947).epsilon(1e-15));
    CHECK_EQ(analytic_omega(std::vector<double>(20, 0.8)),
             doctest::Approx(0.9726443768996961).epsilon(1e-15));
}

TEST_CASE("analytic omega matches the factor-solution formula") {
    FactorSolution sol;
    sol.loadings = Eigen::VectorXd::Constant(5, 0.6);
    sol.uniquenesses = Eigen::VectorXd::Constant(5, 1 - 0.36);
    CHECK_EQ(analytic_omega(std::vector<double>(5, 0.6)),
             doctest::Approx(mcdonalds_omega(sol)).epsilon(1e-15));
}

TEST_CASE("analytic omega rejects impossible loadings") {
    CHECK_THROWS_AS(analytic_omega({}), DegenerateInput);
    CHECK_THROWS_AS(analytic_omega({0.5, 1.2}), ConfigError);
    CHECK_THROWS_AS(analytic_omega({0, 0, 0}), UndefinedReliability);
}

TEST_CASE("simulated judgments survive the CSV round trip unchanged") {
    auto spec = SyntheticJudgeSpec::uniform(0.6, 25, 4);
    spec.non_response_rate = 0.1;
    spec.seed = 77;
    const auto m = generate_categorical(spec);
    std::ostringstream out;
    write_judgment_csv(out, m);
    std::istringstream in(out.str());
    const auto back = read_judgment_csv(in);
    CHECK(back == m);
    CHECK_EQ(omega_from_judgments(back).omega, omega_from_judgments(m).omega);
}
