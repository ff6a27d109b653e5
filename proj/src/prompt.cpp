#include "relia/prompt.hpp"

#include <algorithm>
#include <numeric>

#include "relia/error.hpp"
#include "relia/rng.hpp"

namespace relia {
namespace {

constexpr char kResponsePreamble[] =
    "Include step-by-step reasoning in answering the following question:";

constexpr char kJudgePreambleSingle[] =
    "You are a fair and objective judge tasked with selecting the strongest of "
    "the following responses to the provided question. Base your judgment upon "
    "the accuracy, utility, and relevance of each. Do not consider length of "
    "response, positioning of response or title of response in your judgment. "
    "Output the letter of the best response followed by an explanation, and "
    "strictly follow the following format: \"Best Response: [[letter]]\".";

constexpr char kJudgePreambleTwoTurn[] =
    "You are a fair and objective judge tasked with selecting the strongest of "
    "the following responses to the second provided question (\"Question 2\"). "
    "Question 1 is only provided for context. Base your judgment upon the "
    "accuracy, utility, and relevance of each. Do not consider length of "
    "response, positioning of response or title of response in your judgment. "
    "Output the letter of the best response followed by an explanation, and "
    "strictly follow the following format: \"Best Response: [[letter]]\".";

constexpr char kSlotLetters[5] = {'A', 'B', 'C', 'D', 'E'};

void append_responses(std::string& out, const ResponseSet& rs) {
    out += "\nResponses:";
    for (int slot = 0; slot < 5; ++slot) {
        out += "\n[";
        out += kSlotLetters[slot];
        out += "]: ";
        out += rs.responses[static_cast<std::size_t>(rs.presentation_order[
            static_cast<std::size_t>(slot)])];
    }
}

}  // namespace

std::string to_string(QuestionKind k) {
    switch (k) {
        case QuestionKind::SingleTurn: return "single_turn";
        case QuestionKind::SingleTurnWithContext: return "single_turn_with_context";
        case QuestionKind::TwoTurn: return "two_turn";
    }
    return "single_turn";
}

QuestionKind question_kind_from_string(const std::string& s) {
    if (s == "single_turn") return QuestionKind::SingleTurn;
    if (s == "single_turn_with_context") return QuestionKind::SingleTurnWithContext;
    if (s == "two_turn") return QuestionKind::TwoTurn;
    throw ConfigError("unknown question kind: " + s);
}

void validate(const BenchmarkQuestion& q) {
    if (q.id.empty()) throw ConfigError("question has no id");
    if (q.question.empty()) throw ConfigError("question " + q.id + " has no text");
    const bool has_context = !q.context.empty();
    const bool has_turn1 = !q.turn1_question.empty() || !q.turn1_response.empty();
    switch (q.kind) {
        case QuestionKind::SingleTurn:
            if (has_context || has_turn1)
                throw ConfigError("single-turn question " + q.id +
                                  " must not carry context or turn-1 fields");
            break;
        case QuestionKind::SingleTurnWithContext:
            if (!has_context)
                throw ConfigError("question " + q.id + " requires context");
            if (has_turn1)
                throw ConfigError("question " + q.id +
                                  " must not carry turn-1 fields");
            break;
        case QuestionKind::TwoTurn:
            if (q.turn1_question.empty() || q.turn1_response.empty())
                throw ConfigError("two-turn question " + q.id +
                                  " requires turn-1 question and response");
            if (has_context)
                throw ConfigError("question " + q.id + " must not carry context");
            break;
    }
}

bool is_valid_presentation_order(const std::array<int, 5>& order) {
    std::array<bool, 5> seen{};
    for (int v : order) {
        if (v < 0 || v >= 5 || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = true;
    }
    return true;
}

ResponseSet make_response_set(std::string question_id,
                              std::array<std::string, 5> responses,
                              std::uint64_t order_seed) {
    ResponseSet rs;
    rs.question_id = std::move(question_id);
    rs.responses = std::move(responses);
    std::iota(rs.presentation_order.begin(), rs.presentation_order.end(), 0);
    // Keyed by the question id, not by call order: the same question gets
    // the same permutation no matter when or how often sets are built.
    Rng rng(mix_seed(order_seed, fnv1a64(rs.question_id)));
    rng.shuffle(rs.presentation_order.begin(), rs.presentation_order.end());
    return rs;
}

std::string build_response_prompt(const BenchmarkQuestion& q) {
    validate(q);
    std::string out = kResponsePreamble;
    switch (q.kind) {
        case QuestionKind::SingleTurn:
            out += "\n" + q.question;
            break;
        case QuestionKind::SingleTurnWithContext:
            out += "\nContext: " + q.context;
            out += "\nQuestion: " + q.question;
            out += "\nAnswer:";
            break;
        case QuestionKind::TwoTurn:
            out += "\n" + q.turn1_question;
            out += "\n" + q.turn1_response;
            out += "\n" + q.question;
            break;
    }
    return out;
}

std::string build_judgment_prompt(const BenchmarkQuestion& q, const ResponseSet& rs) {
    validate(q);
    if (rs.question_id != q.id)
        throw ConfigError("response set for question " + rs.question_id +
                          " used with question " + q.id);
    if (!is_valid_presentation_order(rs.presentation_order))
        throw ConfigError("presentation order for question " + q.id +
                          " is not a permutation of 0..4");

    std::string out;
    if (q.kind == QuestionKind::TwoTurn) {
        out = kJudgePreambleTwoTurn;
        out += "\nQuestion 1: " + q.turn1_question;
        out += "\nQuestion 2: " + q.question;
    } else {
        out = kJudgePreambleSingle;
        if (q.kind == QuestionKind::SingleTurnWithContext)
            out += "\nContext: " + q.context;
        out += "\nQuestion: " + q.question;
    }
    append_responses(out, rs);
    return out;
}

}  // namespace relia
