#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "relia/category.hpp"

namespace relia {

struct GenerationRequest {
    std::string prompt;
    std::uint64_t seed = 0;
    double temperature = 1.0;
    int top_k = 50;
};

/// A judge model. Mock and replay backends are deterministic functions
/// of (prompt, seed, temperature, top_k); the HTTP backend makes no
/// determinism promise. Transport failures surface as BackendError.
class JudgeBackend {
public:
    virtual ~JudgeBackend() = default;
    virtual std::string name() const = 0;
    virtual std::string generate(const GenerationRequest& request) = 0;
};

/// Scripted judge for tests and offline sweeps.
///
/// Constant always answers the configured letter. PromptHash derives
/// the letter from the prompt alone, so each question gets a fixed
/// verdict that never varies across seeds or temperatures. Noisy picks
/// the PromptHash letter with probability 1 - temperature * (1 -
/// accuracy), otherwise a uniformly random other letter, and refuses
/// (emits unparseable text) at refusal_rate * temperature; at machine
/// epsilon temperature it is indistinguishable from PromptHash.
/// `personality` shifts the hash so distinct mock judges disagree about
/// which letter is "right".
struct MockJudgeConfig {
    enum class Mode { Constant, PromptHash, Noisy };
    Mode mode = Mode::Constant;
    Category constant_letter = Category::A;
    double accuracy = 1.0;
    double refusal_rate = 0.0;
    std::uint64_t personality = 0;
};

class MockJudgeBackend : public JudgeBackend {
public:
    MockJudgeBackend(std::string name, MockJudgeConfig config)
        : name_(std::move(name)), config_(config) {}

    std::string name() const override { return name_; }
    std::string generate(const GenerationRequest& request) override;

private:
    std::string name_;
    MockJudgeConfig config_;
};

/// Replays recorded completions keyed by seed (the one request field
/// that varies within a sweep cell). Missing keys are transport
/// failures, so a truncated recording degrades exactly like a dead
/// backend instead of inventing data.
class ReplayBackend : public JudgeBackend {
public:
    ReplayBackend(std::string name, std::map<std::uint64_t, std::string> by_seed)
        : name_(std::move(name)), by_seed_(std::move(by_seed)) {}

    /// Loads a JSONL file of {"seed": ..., "completion": ...} objects.
    static ReplayBackend from_jsonl(std::string name,
                                    const std::filesystem::path& path);

    std::string name() const override { return name_; }
    std::string generate(const GenerationRequest& request) override;

private:
    std::string name_;
    std::map<std::uint64_t, std::string> by_seed_;
};

/// Chat-completions HTTP judge.
///
/// POSTs {model, messages, temperature, top_k, seed} to
/// <base>/v1/chat/completions with the prompt as a single user message.
/// Base URL and bearer token come from JUDGE_API_BASE / JUDGE_API_TOKEN
/// unless given explicitly. Transient failures retry up to 3 attempts
/// with exponential backoff before raising BackendError. With debug
/// logging on, request and response bodies go to stderr with the token
/// redacted.
class HttpJudgeBackend : public JudgeBackend {
public:
    struct Options {
        std::string base_url;   // empty: read JUDGE_API_BASE
        std::string api_token;  // empty: read JUDGE_API_TOKEN
        std::string model = "default";
        int max_attempts = 3;
        int backoff_initial_ms = 250;
        int timeout_seconds = 120;
        bool debug_log = false;
    };

    /// Throws BackendError when no base URL can be resolved.
    HttpJudgeBackend(std::string name, Options options);

    std::string name() const override { return name_; }
    std::string generate(const GenerationRequest& request) override;

private:
    std::string name_;
    Options options_;
    std::mutex mutex_;  // one in-flight request at a time
};

/// "Bearer <token>" -> "Bearer ***" in a log line; leaves everything
/// else alone.
std::string redact_bearer_tokens(std::string text);

}  // namespace relia
