#pragma once

#include <string>

#include "relia/prompt.hpp"

// Inputs behind the golden prompt files under fixtures/prompts/.  The files
// are frozen builder output for exactly these values; tests rebuild the
// prompts and compare byte-for-byte.  Changing anything here (or in the
// prompt templates) is a deliberate act that requires regenerating the
// golden files to match.
namespace relia::testfix {

inline BenchmarkQuestion single_turn_question() {
    BenchmarkQuestion q;
    q.id = "demo-single";
    q.kind = QuestionKind::SingleTurn;
    q.question =
        "A train leaves the station at 09:00 travelling at 60 km/h. "
        "How far has it travelled by 09:45?";
    q.benchmark = "demo";
    return q;
}

inline BenchmarkQuestion context_question() {
    BenchmarkQuestion q;
    q.id = "demo-context";
    q.kind = QuestionKind::SingleTurnWithContext;
    q.context =
        "The Amazon rainforest spans nine countries, though around sixty "
        "percent of it lies within Brazil.";
    q.question =
        "Which country contains the largest share of the Amazon rainforest?";
    q.benchmark = "demo";
    return q;
}

inline BenchmarkQuestion two_turn_question() {
    BenchmarkQuestion q;
    q.id = "demo-two-turn";
    q.kind = QuestionKind::TwoTurn;
    q.turn1_question = "Compose a short blog post about a recent trip to Hawaii.";
    q.turn1_response =
        "Aloha! Last month I swapped my desk for the black-sand beaches of "
        "Punalu'u, and the island changed how I think about mornings.";
    q.question =
        "Rewrite your previous response. Begin every sentence with the "
        "letter A.";
    q.benchmark = "demo";
    return q;
}

// Fixed, hand-chosen presentation orders so the golden files also pin the
// slot mapping: order[slot] is the index into responses shown at that slot.
inline ResponseSet response_set_for(const BenchmarkQuestion& q) {
    ResponseSet rs;
    rs.question_id = q.id;
    if (q.id == "demo-single") {
        rs.responses = {"The answer is 45 km.",
                        "It has travelled 60 km.",
                        "Exactly 30 km.",
                        "About 45 kilometres, since 45 minutes is three "
                        "quarters of an hour.",
                        "The train is still at the station."};
        rs.presentation_order = {0, 1, 2, 3, 4};
    } else if (q.id == "demo-context") {
        rs.responses = {"Brazil.",
                        "Peru contains the largest share.",
                        "The passage says Brazil holds around sixty percent, "
                        "so Brazil.",
                        "Nine countries share it equally.",
                        "Colombia."};
        rs.presentation_order = {2, 0, 4, 1, 3};
    } else {
        rs.responses = {"Aloha again! A second look at my trip...",
                        "Arriving in Hawaii, I immediately headed for the "
                        "beach. Awestruck, I stayed until sunset.",
                        "As requested: Aloha! Absolutely every morning began "
                        "with black sand underfoot.",
                        "I cannot rewrite the post.",
                        "Hawaii was great."};
        rs.presentation_order = {4, 3, 2, 1, 0};
    }
    return rs;
}

}  // namespace relia::testfix
