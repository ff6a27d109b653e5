#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace relia {

enum class QuestionKind { SingleTurn, SingleTurnWithContext, TwoTurn };

std::string to_string(QuestionKind k);
QuestionKind question_kind_from_string(const std::string& s);

/// A benchmark question in one of three shapes: plain single-turn,
/// single-turn with supporting context, or the final turn of a two-turn
/// dialogue (with the first turn's question and response carried along
/// for context).
struct BenchmarkQuestion {
    std::string id;
    QuestionKind kind = QuestionKind::SingleTurn;
    std::string question;
    std::string benchmark;       // grouping label for report tables
    std::string context;         // SingleTurnWithContext only
    std::string turn1_question;  // TwoTurn only
    std::string turn1_response;  // TwoTurn only
};

/// Throws ConfigError unless exactly the fields demanded by the kind
/// are present: context iff SingleTurnWithContext, turn-1 fields iff
/// TwoTurn.
void validate(const BenchmarkQuestion& q);

/// Five candidate responses to one question plus the fixed order in
/// which they are shown as options [A]..[E]. presentation_order[slot]
/// is the index into responses displayed at that slot; it is assigned
/// once per question and must never change across replications or
/// temperatures (shuffling per replication would re-randomize exactly
/// the position effects the fixed order is meant to neutralize).
struct ResponseSet {
    std::string question_id;
    std::array<std::string, 5> responses;
    std::array<int, 5> presentation_order{0, 1, 2, 3, 4};
};

bool is_valid_presentation_order(const std::array<int, 5>& order);

/// Derives the per-question presentation order from the shuffle seed:
/// distinct questions get independent permutations, the same question
/// always the same one.
ResponseSet make_response_set(std::string question_id,
                              std::array<std::string, 5> responses,
                              std::uint64_t order_seed);

/// Answer-generation prompt for the question's kind. Byte-stable:
/// identical input produces identical bytes. Throws ConfigError when
/// the question fails validation.
std::string build_response_prompt(const BenchmarkQuestion& q);

/// Judgment prompt asking for the strongest of the five responses in
/// the "Best Response: [[letter]]" output format. Two-turn questions
/// get the variant that marks question 1 as context only. Responses
/// appear at slots [A]..[E] per rs.presentation_order. Throws
/// ConfigError when rs does not belong to q or the order is invalid.
std::string build_judgment_prompt(const BenchmarkQuestion& q,
                                  const ResponseSet& rs);

}  // namespace relia
