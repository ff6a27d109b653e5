// Acceptance gate: ten end-to-end guarantees, one line of output each.
// Exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "relia/agreement.hpp"
#include "relia/backend.hpp"
#include "relia/correlation.hpp"
#include "relia/factor.hpp"
#include "relia/harness.hpp"
#include "relia/parse.hpp"
#include "relia/prompt.hpp"
#include "relia/reliability.hpp"
#include "relia/rng.hpp"
#include "relia/run_store.hpp"
#include "relia/simulate.hpp"
#include "relia/stats.hpp"

#include "fixture_inputs.hpp"

using namespace relia;
namespace fs = std::filesystem;

namespace {

const fs::path kFixturesDir = RELIA_FIXTURES_DIR;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format_seconds(double s) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.2fs", s);
    return buffer;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// ---------------------------------------------------------------------------
// 1. A judge whose verdicts never vary across replications must measure as
//    perfectly reliable: omega = 1 within 1e-9 for every question kind and
//    every scripted judge flavor, end to end through the harness. Under 5 s.
bool criterion_deterministic_judges(std::string& detail) {
    const auto start = Clock::now();

    const std::vector<BenchmarkQuestion> questions{
        testfix::single_turn_question(), testfix::context_question(),
        testfix::two_turn_question()};

    MockJudgeConfig constant;
    constant.mode = MockJudgeConfig::Mode::Constant;
    constant.constant_letter = Category::D;
    MockJudgeConfig prompt_hash;
    prompt_hash.mode = MockJudgeConfig::Mode::PromptHash;
    prompt_hash.personality = 7;
    MockJudgeConfig noisy;
    noisy.mode = MockJudgeConfig::Mode::Noisy;
    noisy.accuracy = 0.6;
    noisy.refusal_rate = 0.2;
    noisy.personality = 3;

    RunConfig config;
    config.replications = 100;
    config.seed_base = 42;

    for (const auto& [label, judge_config] :
         {std::pair<const char*, MockJudgeConfig>{"constant", constant},
          {"prompt-hash", prompt_hash},
          {"noisy", noisy}}) {
        MockJudgeBackend backend(label, judge_config);
        std::vector<std::string> ids;
        std::vector<std::vector<Category>> rows;
        for (const BenchmarkQuestion& q : questions) {
            const QuestionRun run =
                run_replications(backend, q, testfix::response_set_for(q), config,
                                 kEpsilonTemperature);
            std::vector<Category> row;
            for (const CellOutcome& cell : run.cells) row.push_back(cell.category);
            ids.push_back(q.id);
            rows.push_back(std::move(row));
        }
        const ReliabilityReport report =
            omega_from_judgments(JudgmentMatrix::from_rows(ids, rows));
        if (std::abs(report.omega - 1.0) > 1e-9) {
            detail = std::string(label) + " judge gave omega = " +
                     std::to_string(report.omega);
            return false;
        }
    }

    const double elapsed = seconds_since(start);
    detail = "constant, prompt-hash and noisy judges, 3 question kinds x 100 "
             "replications, " +
             format_seconds(elapsed);
    return elapsed < 5.0;
}

// ---------------------------------------------------------------------------
// 2. Fitted omega recovers the analytic value on one-factor continuous data
//    (uniform loading 0.8, 20 replications, 1000 questions) within +/-0.03
//    for at least 18 of 20 seeds. Under 30 s.
bool criterion_omega_recovery(std::string& detail) {
    const auto start = Clock::now();
    const double target = analytic_omega(std::vector<double>(20, 0.8));

    int hits = 0;
    for (int seed = 0; seed < 20; ++seed) {
        SyntheticJudgeSpec spec = SyntheticJudgeSpec::uniform(0.8, 1000, 20);
        spec.seed = 2000 + static_cast<std::uint64_t>(seed);
        const ItemMatrix items = generate_continuous(spec);
        const FactorSolution sol = fit_one_factor(correlation_matrix(items.values));
        if (std::abs(mcdonalds_omega(sol) - target) <= 0.03) ++hits;
    }

    const double elapsed = seconds_since(start);
    detail = std::to_string(hits) + "/20 seeds within 0.03 of analytic " +
             std::to_string(target).substr(0, 6) + ", " + format_seconds(elapsed);
    return hits >= 18 && elapsed < 30.0;
}

// ---------------------------------------------------------------------------
// 3. The rank-deficient regime (100 replications over only 5 questions)
//    completes with finite omega in [0, 1] and a convergence diagnostic;
//    no crash, no non-finite output. Under 60 s.
bool criterion_rank_deficiency(std::string& detail) {
    const auto start = Clock::now();
    std::string fits;
    for (std::uint64_t seed : {7u, 8u, 9u}) {
        SyntheticJudgeSpec spec = SyntheticJudgeSpec::uniform(0.8, 5, 100);
        spec.seed = seed;
        const ReliabilityReport report =
            omega_from_judgments(generate_categorical(spec));
        if (!std::isfinite(report.omega) || report.omega < 0.0 ||
            report.omega > 1.0) {
            detail = "seed " + std::to_string(seed) + " gave omega = " +
                     std::to_string(report.omega);
            return false;
        }
        if (!fits.empty()) fits += ", ";
        fits += "omega " + std::to_string(report.omega).substr(0, 5) +
                (report.diagnostics.converged ? " (converged)" : " (not converged)");
    }
    const double elapsed = seconds_since(start);
    detail = fits + ", " + format_seconds(elapsed);
    return elapsed < 60.0;
}

// ---------------------------------------------------------------------------
// 4. Under equal loadings (tau-equivalence) alpha and omega agree within
//    0.02 at 1000 questions.
bool criterion_alpha_omega_concordance(std::string& detail) {
    double worst = 0;
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        SyntheticJudgeSpec spec = SyntheticJudgeSpec::uniform(0.8, 1000, 20);
        spec.seed = seed;
        const ItemMatrix items = generate_continuous(spec);
        const double alpha = cronbach_alpha(items.values);
        const double omega =
            mcdonalds_omega(fit_one_factor(correlation_matrix(items.values)));
        worst = std::max(worst, std::abs(alpha - omega));
    }
    detail = "max |alpha - omega| = " + std::to_string(worst) + " over 3 seeds";
    return worst <= 0.02;
}

// ---------------------------------------------------------------------------
// 5. Mean-pairwise agreement equals an independent brute-force enumeration
//    over all rater pairs, exactly, on 100 random panels.
bool criterion_agreement_oracle(std::string& detail) {
    Rng rng(505);
    for (int panel_index = 0; panel_index < 100; ++panel_index) {
        const int raters = 2 + rng.uniform_int(4);     // 2..5
        const int questions = 3 + rng.uniform_int(28);  // 3..30

        std::vector<std::string> labels, ids;
        for (int r = 0; r < raters; ++r) labels.push_back("r" + std::to_string(r));
        for (int q = 0; q < questions; ++q) ids.push_back("q" + std::to_string(q));
        std::vector<std::vector<Category>> judgments(labels.size());
        for (auto& row : judgments)
            for (int q = 0; q < questions; ++q)
                row.push_back(all_categories[static_cast<std::size_t>(
                    rng.uniform_int(kCategoryCount))]);

        const RaterPanel panel(labels, ids, judgments);

        long total_matches = 0;
        int pairs = 0;
        for (int a = 0; a < raters; ++a)
            for (int b = a + 1; b < raters; ++b) {
                ++pairs;
                for (int q = 0; q < questions; ++q)
                    if (panel.at(a, q) == panel.at(b, q)) ++total_matches;
            }
        const double expected = static_cast<double>(total_matches) /
                                (static_cast<double>(pairs) * questions);

        const double got = inter_rater_agreement(panel);
        if (got != expected) {
            detail = "panel " + std::to_string(panel_index) + ": got " +
                     std::to_string(got) + ", brute force " +
                     std::to_string(expected);
            return false;
        }
    }
    detail = "100 panels, 2-5 raters x 3-30 questions x 6 categories, exact";
    return true;
}

// ---------------------------------------------------------------------------
// 6. A three-judge temperature sweep at moderate noise shows the documented
//    instability of raw agreement: the five-number summary of per-replication
//    IRR spans at least 0.3, in at least 18 of 20 seeds.
bool criterion_agreement_instability(std::string& detail) {
    constexpr int kQuestions = 12;
    constexpr int kReplications = 25;
    constexpr double kAccuracyFloor = 0.55;  // accuracy at temperature 1

    int satisfied = 0;
    double min_range = 1.0;
    for (int s = 0; s < 20; ++s) {
        // Shared ground truth: every judge aims at the same best letter.
        Rng truth_rng(mix_seed(6000, static_cast<std::uint64_t>(s)));
        std::vector<Category> truth;
        for (int q = 0; q < kQuestions; ++q)
            truth.push_back(letter_categories[static_cast<std::size_t>(
                truth_rng.uniform_int(5))]);

        std::vector<std::string> ids;
        for (int q = 0; q < kQuestions; ++q) ids.push_back("q" + std::to_string(q));

        std::vector<double> pooled;
        int temp_index = 0;
        for (double t : {kEpsilonTemperature, 0.5, 1.0}) {
            const double accuracy =
                t <= kEpsilonTemperature ? 1.0 : 1.0 - t * (1.0 - kAccuracyFloor);
            std::vector<JudgmentMatrix> matrices;
            for (int j = 0; j < 3; ++j) {
                Rng rng(mix_seed(static_cast<std::uint64_t>(1000 * s + 10 * temp_index + j),
                                 4242));
                std::vector<std::vector<Category>> rows(
                    static_cast<std::size_t>(kQuestions));
                for (int q = 0; q < kQuestions; ++q)
                    for (int r = 0; r < kReplications; ++r) {
                        Category c = truth[static_cast<std::size_t>(q)];
                        if (!rng.chance(accuracy)) {
                            const int other = rng.uniform_int(4);
                            const int shifted =
                                other >= static_cast<int>(c) ? other + 1 : other;
                            c = static_cast<Category>(shifted);
                        }
                        rows[static_cast<std::size_t>(q)].push_back(c);
                    }
                matrices.push_back(JudgmentMatrix::from_rows(ids, rows));
            }
            for (double value : per_replication_agreement(matrices))
                pooled.push_back(value);
            ++temp_index;
        }

        const double range = five_number_summary(pooled).range();
        min_range = std::min(min_range, range);
        if (range >= 0.3) ++satisfied;
    }

    detail = std::to_string(satisfied) + "/20 seeds with IRR range >= 0.3 "
             "(smallest " +
             std::to_string(min_range).substr(0, 5) + ")";
    return satisfied >= 18;
}

// ---------------------------------------------------------------------------
// 7. Generated prompts byte-match the golden files for every template kind.
bool criterion_prompt_goldens(std::string& detail) {
    const auto qs = testfix::single_turn_question();
    const auto qc = testfix::context_question();
    const auto qt = testfix::two_turn_question();

    const std::vector<std::pair<std::string, std::string>> cases{
        {"response_single_turn.txt", build_response_prompt(qs)},
        {"response_with_context.txt", build_response_prompt(qc)},
        {"response_two_turn.txt", build_response_prompt(qt)},
        {"judgment_single_turn.txt",
         build_judgment_prompt(qs, testfix::response_set_for(qs))},
        {"judgment_with_context.txt",
         build_judgment_prompt(qc, testfix::response_set_for(qc))},
        {"judgment_two_turn.txt",
         build_judgment_prompt(qt, testfix::response_set_for(qt))},
    };
    for (const auto& [name, generated] : cases) {
        if (generated != read_file(kFixturesDir / "prompts" / name)) {
            detail = "mismatch against " + name;
            return false;
        }
    }
    detail = "6 golden files, byte-identical";
    return true;
}

// ---------------------------------------------------------------------------
// 8. The 20 parser fixtures map to their expected categories in both parse
//    modes; refusals map to NONRESPONSE.
bool criterion_parser_fixtures(std::string& detail) {
    std::ifstream in(kFixturesDir / "parse_cases.jsonl");
    if (!in) throw DataError("cannot open parse_cases.jsonl");

    int cases = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++cases;
        const auto j = nlohmann::json::parse(line);
        const std::string name = j.at("name").get<std::string>();
        const std::string completion = j.at("completion").get<std::string>();
        const auto lenient = category_from_string(j.at("lenient").get<std::string>());
        const auto strict = category_from_string(j.at("strict").get<std::string>());
        if (!lenient || !strict) throw DataError("bad expectation in " + name);
        if (parse_best_response(completion, ParseMode::Lenient) != *lenient ||
            parse_best_response(completion, ParseMode::Strict) != *strict) {
            detail = "fixture '" + name + "' parsed wrong";
            return false;
        }
    }
    detail = std::to_string(cases) + " fixtures, lenient and strict";
    return cases == 20;
}

// ---------------------------------------------------------------------------
// 9. On exact one-factor correlation matrices with loadings in [0.3, 0.95],
//    the fit recovers loadings within 1e-4 and reconstructs the matrix with
//    infinity-norm residual below 1e-6.
bool criterion_factor_reconstruction(std::string& detail) {
    Rng rng(909);
    double worst_loading = 0, worst_residual = 0;
    for (int trial = 0; trial < 25; ++trial) {
        const int k = 3 + rng.uniform_int(10);  // 3..12 items
        Eigen::VectorXd loadings(k);
        for (int i = 0; i < k; ++i) loadings(i) = 0.3 + 0.65 * rng.uniform01();

        Eigen::MatrixXd corr = loadings * loadings.transpose();
        corr.diagonal().setOnes();

        const FactorSolution sol = fit_one_factor(corr, 1e-9, 500);
        worst_loading = std::max(worst_loading,
                                 (sol.loadings - loadings).cwiseAbs().maxCoeff());

        Eigen::MatrixXd reconstructed = sol.loadings * sol.loadings.transpose();
        reconstructed.diagonal() =
            sol.loadings.array().square() + sol.uniquenesses.array();
        worst_residual = std::max(
            worst_residual, (corr - reconstructed).cwiseAbs().maxCoeff());
    }
    detail = "25 matrices: max loading error " + std::to_string(worst_loading) +
             ", max residual " + std::to_string(worst_residual);
    return worst_loading <= 1e-4 && worst_residual < 1e-6;
}

// ---------------------------------------------------------------------------
// 10. Accuracy-as-judged from a synthetic store matches hand-computed mean
//     and standard error to 1e-12, including the near-zero-SE regime.
bool criterion_accuracy_metric(std::string& detail) {
    const auto group_for = [](const std::vector<std::vector<bool>>& correct) {
        CellGroup group;
        group.judge = "acc";
        group.temperature = 1.0;
        for (std::size_t q = 0; q < correct.size(); ++q)
            for (std::size_t r = 0; r < correct[q].size(); ++r) {
                StoreCell cell;
                cell.judge = "acc";
                cell.temperature = 1.0;
                cell.question_id = "q" + std::to_string(q);
                cell.replication = static_cast<int>(r);
                cell.category = correct[q][r] ? Category::A : Category::B;
                cell.correct = correct[q][r];
                group.cells.push_back(cell);
            }
        return group;
    };
    const auto hand = [](const std::vector<double>& accuracies) {
        const double n = static_cast<double>(accuracies.size());
        double mean = 0;
        for (double a : accuracies) mean += a;
        mean /= n;
        double ss = 0;
        for (double a : accuracies) ss += (a - mean) * (a - mean);
        return MeanSe{mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
    };

    // Replication accuracies 0, 1/2, 1: mean 1/2, se 1/(2 sqrt 3).
    {
        const auto group = group_for({{false, true, true}, {false, false, true}});
        const MeanSe got = mean_and_standard_error(correctness_from_cells(group));
        const MeanSe want = hand({0.0, 0.5, 1.0});
        if (std::abs(got.mean - want.mean) > 1e-12 ||
            std::abs(got.se - want.se) > 1e-12) {
            detail = "coarse store: got mean " + std::to_string(got.mean) +
                     ", se " + std::to_string(got.se);
            return false;
        }
    }

    // Small replication noise: 25 questions x 10 replications, one wrong
    // cell in every other replication. SE must be tiny but exact.
    {
        std::vector<std::vector<bool>> correct(
            25, std::vector<bool>(10, true));
        std::vector<double> accuracies;
        for (int r = 0; r < 10; ++r) {
            if (r % 2 == 1) correct[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)] = false;
            accuracies.push_back(r % 2 == 1 ? 24.0 / 25.0 : 1.0);
        }
        const auto group = group_for(correct);
        const MeanSe got = mean_and_standard_error(correctness_from_cells(group));
        const MeanSe want = hand(accuracies);
        if (std::abs(got.mean - want.mean) > 1e-12 ||
            std::abs(got.se - want.se) > 1e-12 || !(got.se < 0.01)) {
            detail = "fine store: got mean " + std::to_string(got.mean) + ", se " +
                     std::to_string(got.se);
            return false;
        }
    }

    detail = "store-derived mean/se equal hand computation to 1e-12";
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        bool (*run)(std::string&);
    };
    const Criterion criteria[] = {
        {"C1  deterministic judges give omega = 1", criterion_deterministic_judges},
        {"C2  omega recovery against the analytic value", criterion_omega_recovery},
        {"C3  rank-deficiency stress stays finite and clamped",
         criterion_rank_deficiency},
        {"C4  alpha/omega concordance under equal loadings",
         criterion_alpha_omega_concordance},
        {"C5  agreement matches brute force exactly", criterion_agreement_oracle},
        {"C6  three-judge sweep shows agreement instability",
         criterion_agreement_instability},
        {"C7  prompts byte-match their golden files", criterion_prompt_goldens},
        {"C8  parser fixtures map to expected categories",
         criterion_parser_fixtures},
        {"C9  factor model reconstructs exact inputs",
         criterion_factor_reconstruction},
        {"C10 accuracy metric matches hand computation", criterion_accuracy_metric},
    };

    int failed = 0;
    for (const Criterion& criterion : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", criterion.name,
                    detail.empty() ? "" : " -- ", detail.c_str());
        if (!ok) ++failed;
    }
    std::printf("%d of 10 criteria passed\n", 10 - failed);
    return failed == 0 ? 0 : 1;
}
