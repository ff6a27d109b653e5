#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <memory>
#include <vector>

#include "relia/backend.hpp"
#include "relia/parse.hpp"
#include "relia/prompt.hpp"
#include "relia/run_store.hpp"

namespace relia {

/// Machine epsilon stands in for temperature 0: backends may reject an
/// exact zero, and an epsilon of randomness is the closest admissible
/// request to "no randomness".
inline constexpr double kEpsilonTemperature =
    std::numeric_limits<double>::epsilon();

inline std::vector<double> default_temperatures() {
    return {1.0, 0.75, 0.5, 0.25, kEpsilonTemperature};
}

/// The experimental protocol: how many replications per cell, which
/// temperatures, the fixed top-k, and how seeds are derived
/// (seed_base + replication index; only the replication varies).
struct RunConfig {
    int replications = 100;
    std::vector<double> temperatures = default_temperatures();
    int top_k = 50;
    std::uint64_t seed_base = 0;
    std::vector<std::string> judges;
    ParseMode parse_mode = ParseMode::Lenient;
};

/// Throws ConfigError on replications < 1, temperatures <= 0, top_k < 1.
void validate(const RunConfig& config);

struct CellOutcome {
    std::uint64_t seed = 0;
    Category category = Category::NonResponse;
    std::string raw_completion;
    bool transport_ok = true;
};

struct QuestionRun {
    std::string question_id;
    std::vector<int> replications;   // which indices ran, ascending
    std::vector<CellOutcome> cells;  // aligned with `replications`
};

/// Replicated judgment of one question at one temperature: replication
/// i uses seed seed_base + i against the byte-identical prompt, and
/// each completion parses to a category. A backend that keeps failing
/// yields NonResponse with transport_ok = false for that replication
/// (retries are the backend's business); generation continues.
///
/// When `replications` is given, only those indices run -- that is how
/// a resumed sweep fills just the missing cells. Default: all of
/// 0..config.replications-1.
QuestionRun run_replications(JudgeBackend& backend, const BenchmarkQuestion& q,
                             const ResponseSet& rs, const RunConfig& config,
                             double temperature,
                             const std::vector<int>* replications = nullptr);

/// Everything cmd-sweep needs: the protocol plus file locations,
/// backends and presentation-order seed.
struct SweepConfig {
    RunConfig run;
    std::filesystem::path questions_path;
    std::filesystem::path responses_path;
    std::filesystem::path store_path;
    std::uint64_t order_seed = 0;
    int jobs = 1;
    struct Judge {
        std::string label;
        std::string backend;  // "mock" | "replay" | "http"
        MockJudgeConfig mock;
        std::filesystem::path replay_path;
        HttpJudgeBackend::Options http;
    };
    std::vector<Judge> judge_specs;
};

SweepConfig load_sweep_config(const std::filesystem::path& path);

/// Questions / responses files (JSON arrays, see README for the schema).
std::vector<BenchmarkQuestion> load_questions(const std::filesystem::path& path);
std::vector<ResponseSet> load_responses(const std::filesystem::path& path,
                                        std::uint64_t order_seed);

struct SweepPlan {
    std::vector<BenchmarkQuestion> questions;
    std::vector<ResponseSet> responses;  // aligned with questions
    std::vector<std::unique_ptr<JudgeBackend>> backends;
};

/// Fail-fast validation: loads and cross-checks both input files and
/// constructs every backend before a single generation happens.
SweepPlan prepare_sweep(const SweepConfig& config);

struct SweepStats {
    int cells_written = 0;
    int cells_skipped = 0;
};

/// Runs the judge x temperature x question grid, appending each cell to
/// the store as it completes. Cells already present in the store are
/// skipped, so rerunning after an interruption finishes the grid
/// without duplicates. With jobs > 1 the replications of a question run
/// concurrently; results land in replication order regardless.
SweepStats run_sweep(const SweepConfig& config, SweepPlan& plan);

}  // namespace relia
