#include "relia/harness.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>
#include <utility>

#include <nlohmann/json.hpp>

#include "relia/error.hpp"

namespace relia {

void validate(const RunConfig& config) {
    if (config.replications < 1)
        throw ConfigError("replications must be >= 1, got " +
                          std::to_string(config.replications));
    for (double t : config.temperatures)
        if (!(t > 0.0))
            throw ConfigError("temperatures must be > 0 (epsilon stands in for 0), got " +
                              std::to_string(t));
    if (config.top_k < 1)
        throw ConfigError("top_k must be >= 1, got " + std::to_string(config.top_k));
}

QuestionRun run_replications(JudgeBackend& backend, const BenchmarkQuestion& q,
                             const ResponseSet& rs, const RunConfig& config,
                             double temperature,
                             const std::vector<int>* replications) {
    validate(config);
    if (!(temperature > 0.0))
        throw ConfigError("temperature must be > 0, got " + std::to_string(temperature));

    QuestionRun run;
    run.question_id = q.id;
    if (replications) {
        run.replications = *replications;
        std::sort(run.replications.begin(), run.replications.end());
        for (int i : run.replications)
            if (i < 0 || i >= config.replications)
                throw ConfigError("replication index out of range: " + std::to_string(i));
    } else {
        run.replications.resize(static_cast<std::size_t>(config.replications));
        std::iota(run.replications.begin(), run.replications.end(), 0);
    }

    // One prompt for every replication; only the seed varies.
    const std::string prompt = build_judgment_prompt(q, rs);
    run.cells.reserve(run.replications.size());
    for (int i : run.replications) {
        CellOutcome cell;
        cell.seed = config.seed_base + static_cast<std::uint64_t>(i);
        GenerationRequest request{prompt, cell.seed, temperature, config.top_k};
        try {
            cell.raw_completion = backend.generate(request);
            cell.category = parse_best_response(cell.raw_completion, config.parse_mode);
        } catch (const BackendError& e) {
            cell.category = Category::NonResponse;
            cell.raw_completion = e.what();  // audit trail for the failure
            cell.transport_ok = false;
        }
        run.cells.push_back(std::move(cell));
    }
    return run;
}

namespace {

nlohmann::json parse_json_file(const std::filesystem::path& path,
                               const char* what) {
    std::ifstream in(path);
    if (!in) throw DataError(std::string("cannot open ") + what + " file: " +
                             path.string());
    const nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded())
        throw DataError(std::string(what) + " file is not valid JSON: " +
                        path.string());
    return j;
}

std::filesystem::path resolve_relative(const std::filesystem::path& base_dir,
                                       std::filesystem::path p) {
    if (p.empty() || p.is_absolute()) return p;
    return base_dir / p;
}

}  // namespace

std::vector<BenchmarkQuestion> load_questions(const std::filesystem::path& path) {
    const nlohmann::json j = parse_json_file(path, "questions");
    if (!j.is_array()) throw DataError("questions file must be a JSON array");

    std::vector<BenchmarkQuestion> questions;
    std::set<std::string> seen;
    for (const auto& entry : j) {
        if (!entry.is_object())
            throw DataError("questions entries must be objects");
        BenchmarkQuestion q;
        try {
            q.id = entry.at("id").get<std::string>();
            q.kind = question_kind_from_string(entry.at("kind").get<std::string>());
            q.question = entry.at("question").get<std::string>();
            q.benchmark = entry.value("benchmark", std::string());
            q.context = entry.value("context", std::string());
            q.turn1_question = entry.value("turn1_question", std::string());
            q.turn1_response = entry.value("turn1_response", std::string());
        } catch (const nlohmann::json::exception& e) {
            throw DataError("malformed question entry: " + std::string(e.what()));
        }
        validate(q);
        if (!seen.insert(q.id).second)
            throw DataError("duplicate question id: " + q.id);
        questions.push_back(std::move(q));
    }
    return questions;
}

std::vector<ResponseSet> load_responses(const std::filesystem::path& path,
                                        std::uint64_t order_seed) {
    const nlohmann::json j = parse_json_file(path, "responses");
    if (!j.is_array()) throw DataError("responses file must be a JSON array");

    std::vector<ResponseSet> sets;
    std::set<std::string> seen;
    for (const auto& entry : j) {
        if (!entry.is_object())
            throw DataError("responses entries must be objects");
        std::string id;
        std::array<std::string, 5> responses;
        try {
            id = entry.at("question_id").get<std::string>();
            const auto& list = entry.at("responses");
            if (!list.is_array() || list.size() != 5)
                throw DataError("question " + id + " needs exactly 5 responses, got " +
                                std::to_string(list.size()));
            for (std::size_t i = 0; i < 5; ++i)
                responses[i] = list.at(i).get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw DataError("malformed response entry: " + std::string(e.what()));
        }
        if (!seen.insert(id).second)
            throw DataError("duplicate response set for question: " + id);
        sets.push_back(make_response_set(std::move(id), std::move(responses),
                                         order_seed));
    }
    return sets;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
    const nlohmann::json j = parse_json_file(path, "sweep config");
    if (!j.is_object()) throw ConfigError("sweep config must be a JSON object");
    const std::filesystem::path base_dir = path.parent_path();

    SweepConfig config;
    try {
        config.questions_path = resolve_relative(
            base_dir, j.at("questions").get<std::string>());
        config.responses_path = resolve_relative(
            base_dir, j.at("responses").get<std::string>());
        config.store_path = resolve_relative(base_dir, j.at("store").get<std::string>());
        config.order_seed = j.value("order_seed", std::uint64_t{0});
        config.jobs = j.value("jobs", 1);
        config.run.replications = j.value("replications", 100);
        config.run.top_k = j.value("top_k", 50);
        config.run.seed_base = j.value("seed_base", std::uint64_t{0});
        config.run.parse_mode = j.value("parse_mode", std::string("lenient")) ==
                                        "strict"
                                    ? ParseMode::Strict
                                    : ParseMode::Lenient;
        if (j.contains("temperatures")) {
            config.run.temperatures.clear();
            for (const auto& t : j.at("temperatures")) {
                const double value = t.get<double>();
                // Requested 0 means "as deterministic as the API allows".
                config.run.temperatures.push_back(
                    value == 0.0 ? kEpsilonTemperature : value);
            }
        }

        if (!j.contains("judges") || !j.at("judges").is_array() ||
            j.at("judges").empty())
            throw ConfigError("sweep config needs a non-empty judges array");
        for (const auto& spec : j.at("judges")) {
            SweepConfig::Judge judge;
            judge.label = spec.at("label").get<std::string>();
            judge.backend = spec.at("backend").get<std::string>();
            if (judge.backend == "mock") {
                const std::string mode = spec.value("mode", std::string("constant"));
                if (mode == "constant")
                    judge.mock.mode = MockJudgeConfig::Mode::Constant;
                else if (mode == "prompt_hash")
                    judge.mock.mode = MockJudgeConfig::Mode::PromptHash;
                else if (mode == "noisy")
                    judge.mock.mode = MockJudgeConfig::Mode::Noisy;
                else
                    throw ConfigError("unknown mock mode: " + mode);
                if (spec.contains("constant_letter")) {
                    const auto letter = category_from_string(
                        spec.at("constant_letter").get<std::string>());
                    if (!letter)
                        throw ConfigError("bad constant_letter for judge " +
                                          judge.label);
                    judge.mock.constant_letter = *letter;
                }
                judge.mock.accuracy = spec.value("accuracy", 1.0);
                judge.mock.refusal_rate = spec.value("refusal_rate", 0.0);
                judge.mock.personality = spec.value("personality", std::uint64_t{0});
            } else if (judge.backend == "replay") {
                judge.replay_path = resolve_relative(
                    base_dir, spec.at("replay_path").get<std::string>());
            } else if (judge.backend == "http") {
                judge.http.base_url = spec.value("base_url", std::string());
                judge.http.model = spec.value("model", std::string("default"));
                judge.http.max_attempts = spec.value("max_attempts", 3);
                judge.http.backoff_initial_ms = spec.value("backoff_initial_ms", 250);
                judge.http.timeout_seconds = spec.value("timeout_seconds", 120);
                judge.http.debug_log = spec.value("debug_log", false);
            } else {
                throw ConfigError("unknown backend for judge " + judge.label + ": " +
                                  judge.backend + " (expected mock, replay or http)");
            }
            config.run.judges.push_back(judge.label);
            config.judge_specs.push_back(std::move(judge));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed sweep config: " + std::string(e.what()));
    }
    return config;
}

SweepPlan prepare_sweep(const SweepConfig& config) {
    validate(config.run);
    if (config.jobs < 1)
        throw ConfigError("jobs must be >= 1, got " + std::to_string(config.jobs));
    if (config.store_path.empty()) throw ConfigError("sweep config has no store path");

    std::set<std::string> labels;
    for (const auto& judge : config.judge_specs)
        if (judge.label.empty() || !labels.insert(judge.label).second)
            throw ConfigError("judge labels must be unique and non-empty");

    SweepPlan plan;
    plan.questions = load_questions(config.questions_path);
    std::vector<ResponseSet> sets =
        load_responses(config.responses_path, config.order_seed);

    // Pair every question with its response set; anything unmatched on
    // either side is a config mistake worth stopping for.
    plan.responses.reserve(plan.questions.size());
    std::set<std::string> used;
    for (const BenchmarkQuestion& q : plan.questions) {
        const auto it = std::find_if(sets.begin(), sets.end(), [&](const ResponseSet& rs) {
            return rs.question_id == q.id;
        });
        if (it == sets.end())
            throw ConfigError("no response set for question " + q.id);
        plan.responses.push_back(*it);
        used.insert(q.id);
    }
    for (const ResponseSet& rs : sets)
        if (!used.count(rs.question_id))
            throw ConfigError("response set for unknown question " + rs.question_id);

    for (const auto& judge : config.judge_specs) {
        if (judge.backend == "mock")
            plan.backends.push_back(
                std::make_unique<MockJudgeBackend>(judge.label, judge.mock));
        else if (judge.backend == "replay")
            plan.backends.push_back(std::make_unique<ReplayBackend>(
                ReplayBackend::from_jsonl(judge.label, judge.replay_path)));
        else
            plan.backends.push_back(
                std::make_unique<HttpJudgeBackend>(judge.label, judge.http));
    }
    return plan;
}

namespace {

/// Runs one (backend, question, temperature) cell set, splitting the
/// missing replications across `jobs` threads. Outcomes are reassembled
/// in replication order, so the persisted result is independent of
/// scheduling.
QuestionRun run_question_cells(JudgeBackend& backend, const BenchmarkQuestion& q,
                               const ResponseSet& rs, const RunConfig& config,
                               double temperature, const std::vector<int>& missing,
                               int jobs) {
    const int workers =
        std::min<int>(jobs, static_cast<int>(missing.size()));
    if (workers <= 1)
        return run_replications(backend, q, rs, config, temperature, &missing);

    std::vector<std::vector<int>> shares(static_cast<std::size_t>(workers));
    for (std::size_t i = 0; i < missing.size(); ++i)
        shares[i % static_cast<std::size_t>(workers)].push_back(missing[i]);

    std::vector<QuestionRun> partial(static_cast<std::size_t>(workers));
    std::vector<std::thread> threads;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        threads.emplace_back([&, w] {
            try {
                partial[static_cast<std::size_t>(w)] = run_replications(
                    backend, q, rs, config, temperature,
                    &shares[static_cast<std::size_t>(w)]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);

    QuestionRun merged;
    merged.question_id = q.id;
    std::map<int, CellOutcome> by_replication;
    for (auto& part : partial)
        for (std::size_t i = 0; i < part.replications.size(); ++i)
            by_replication[part.replications[i]] = std::move(part.cells[i]);
    for (auto& [rep, cell] : by_replication) {
        merged.replications.push_back(rep);
        merged.cells.push_back(std::move(cell));
    }
    return merged;
}

}  // namespace

SweepStats run_sweep(const SweepConfig& config, SweepPlan& plan) {
    const std::set<StoreKey> done = existing_keys(config.store_path);
    RunStoreWriter writer(config.store_path);

    SweepStats stats;
    for (std::size_t b = 0; b < plan.backends.size(); ++b) {
        const std::string& label = config.judge_specs[b].label;
        for (double temperature : config.run.temperatures) {
            for (std::size_t qi = 0; qi < plan.questions.size(); ++qi) {
                const BenchmarkQuestion& q = plan.questions[qi];
                std::vector<int> missing;
                for (int i = 0; i < config.run.replications; ++i) {
                    if (done.count({label, temperature, q.id, i}))
                        ++stats.cells_skipped;
                    else
                        missing.push_back(i);
                }
                if (missing.empty()) continue;

                const QuestionRun run = run_question_cells(
                    *plan.backends[b], q, plan.responses[qi], config.run,
                    temperature, missing, config.jobs);
                for (std::size_t i = 0; i < run.cells.size(); ++i) {
                    StoreCell cell;
                    cell.judge = label;
                    cell.temperature = temperature;
                    cell.question_id = q.id;
                    cell.replication = run.replications[i];
                    cell.seed = run.cells[i].seed;
                    cell.category = run.cells[i].category;
                    cell.raw_completion = run.cells[i].raw_completion;
                    cell.transport_ok = run.cells[i].transport_ok;
                    writer.append(cell);
                    ++stats.cells_written;
                }
            }
        }
    }
    return stats;
}

}  // namespace relia
