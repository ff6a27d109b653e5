#include "relia/backend.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "relia/error.hpp"
#include "relia/rng.hpp"

namespace relia {
namespace {

std::string verdict_text(Category letter) {
    std::string out = "Best Response: [[";
    out += to_string(letter);
    out += "]]\nThis response is the most accurate, useful and relevant of the five.";
    return out;
}

constexpr char kRefusalText[] =
    "I cannot determine a best answer among these responses.";

Category preferred_letter(const std::string& prompt, std::uint64_t personality) {
    const std::uint64_t h = mix_seed(personality, fnv1a64(prompt));
    return static_cast<Category>(h % 5);
}

}  // namespace

std::string MockJudgeBackend::generate(const GenerationRequest& request) {
    switch (config_.mode) {
        case MockJudgeConfig::Mode::Constant:
            return verdict_text(config_.constant_letter);
        case MockJudgeConfig::Mode::PromptHash:
            return verdict_text(preferred_letter(request.prompt, config_.personality));
        case MockJudgeConfig::Mode::Noisy:
            break;
    }

    const Category preferred = preferred_letter(request.prompt, config_.personality);
    // At the epsilon stand-in for temperature 0 the judge is exactly its
    // noiseless self: no refusal or flip draws at all.
    if (request.temperature <= std::numeric_limits<double>::epsilon())
        return verdict_text(preferred);

    Rng rng(mix_seed(mix_seed(request.seed, fnv1a64(request.prompt)),
                     config_.personality));
    if (rng.chance(config_.refusal_rate * request.temperature))
        return kRefusalText;
    if (rng.chance(1.0 - request.temperature * (1.0 - config_.accuracy)))
        return verdict_text(preferred);
    const int other = rng.uniform_int(4);
    const int shifted = other >= static_cast<int>(preferred) ? other + 1 : other;
    return verdict_text(static_cast<Category>(shifted));
}

ReplayBackend ReplayBackend::from_jsonl(std::string name,
                                        const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open replay file: " + path.string());
    std::map<std::uint64_t, std::string> by_seed;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("seed") ||
            !j.contains("completion") || !j["completion"].is_string())
            throw DataError("replay file " + path.string() + " line " +
                            std::to_string(line_no) + " is not a seed/completion object");
        by_seed[j["seed"].get<std::uint64_t>()] = j["completion"].get<std::string>();
    }
    return ReplayBackend(std::move(name), std::move(by_seed));
}

std::string ReplayBackend::generate(const GenerationRequest& request) {
    const auto it = by_seed_.find(request.seed);
    if (it == by_seed_.end())
        throw BackendError("replay backend " + name_ +
                           " has no recorded completion for seed " +
                           std::to_string(request.seed));
    return it->second;
}

std::string redact_bearer_tokens(std::string text) {
    constexpr std::string_view kBearer = "Bearer ";
    std::size_t pos = 0;
    while ((pos = text.find(kBearer, pos)) != std::string::npos) {
        std::size_t start = pos + kBearer.size();
        std::size_t end = start;
        while (end < text.size() && text[end] != ' ' && text[end] != '"' &&
               text[end] != '\'' && text[end] != '\n' && text[end] != '\r')
            ++end;
        if (end > start) text.replace(start, end - start, "***");
        pos = start;
    }
    return text;
}

namespace {

std::string env_or(const char* name, std::string fallback) {
    const char* value = std::getenv(name);
    return value && *value ? std::string(value) : std::move(fallback);
}

}  // namespace

HttpJudgeBackend::HttpJudgeBackend(std::string name, Options options)
    : name_(std::move(name)), options_(std::move(options)) {
    if (options_.base_url.empty())
        options_.base_url = env_or("JUDGE_API_BASE", "");
    if (options_.api_token.empty())
        options_.api_token = env_or("JUDGE_API_TOKEN", "");
    if (options_.base_url.empty())
        throw BackendError(
            "no judge API base URL: pass one or set JUDGE_API_BASE");
    while (!options_.base_url.empty() && options_.base_url.back() == '/')
        options_.base_url.pop_back();
}

std::string HttpJudgeBackend::generate(const GenerationRequest& request) {
    std::lock_guard<std::mutex> lock(mutex_);

    nlohmann::json body{
        {"model", options_.model},
        {"messages",
         nlohmann::json::array(
             {nlohmann::json{{"role", "user"}, {"content", request.prompt}}})},
        {"temperature", request.temperature},
        {"top_k", request.top_k},
        {"seed", request.seed},
    };
    const std::string payload = body.dump();

    std::string last_error;
    for (int attempt = 1; attempt <= options_.max_attempts; ++attempt) {
        if (attempt > 1) {
            const auto backoff = std::chrono::milliseconds(
                options_.backoff_initial_ms << (attempt - 2));
            std::this_thread::sleep_for(backoff);
        }

        httplib::Client client(options_.base_url);
        client.set_connection_timeout(options_.timeout_seconds);
        client.set_read_timeout(options_.timeout_seconds);
        if (!options_.api_token.empty())
            client.set_bearer_token_auth(options_.api_token);

        if (options_.debug_log)
            std::cerr << "[" << name_ << "] POST " << options_.base_url
                      << "/v1/chat/completions " << redact_bearer_tokens(payload)
                      << "\n";

        auto result =
            client.Post("/v1/chat/completions", payload, "application/json");
        if (!result) {
            last_error = "transport error: " + httplib::to_string(result.error());
            continue;
        }
        if (options_.debug_log)
            std::cerr << "[" << name_ << "] HTTP " << result->status << " "
                      << redact_bearer_tokens(result->body) << "\n";

        if (result->status == 200) {
            nlohmann::json reply = nlohmann::json::parse(result->body, nullptr, false);
            if (reply.is_discarded())
                throw BackendError("judge API returned unparseable JSON");
            try {
                return reply.at("choices").at(0).at("message").at("content")
                    .get<std::string>();
            } catch (const nlohmann::json::exception&) {
                throw BackendError(
                    "judge API response lacks choices[0].message.content");
            }
        }
        if (result->status == 429 || result->status >= 500) {
            last_error = "HTTP " + std::to_string(result->status);
            continue;  // transient; retry with backoff
        }
        throw BackendError("judge API rejected the request: HTTP " +
                           std::to_string(result->status));
    }
    throw BackendError("judge API unreachable after " +
                       std::to_string(options_.max_attempts) + " attempts (" +
                       last_error + ")");
}

}  // namespace relia
