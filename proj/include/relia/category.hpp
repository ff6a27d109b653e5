#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace relia {

/// Judgment category. NonResponse is a first-class category (a verdict
/// from which no best-response letter could be parsed), never a missing
/// value: it participates in encoding, modes and agreement like any
/// letter.
enum class Category : std::uint8_t { A = 0, B, C, D, E, NonResponse };

inline constexpr int kCategoryCount = 6;

inline constexpr std::array<Category, kCategoryCount> all_categories{
    Category::A, Category::B, Category::C, Category::D,
    Category::E, Category::NonResponse};

/// Letter categories only (excludes NonResponse).
inline constexpr std::array<Category, 5> letter_categories{
    Category::A, Category::B, Category::C, Category::D, Category::E};

constexpr std::string_view to_string(Category c) {
    switch (c) {
        case Category::A: return "A";
        case Category::B: return "B";
        case Category::C: return "C";
        case Category::D: return "D";
        case Category::E: return "E";
        case Category::NonResponse: return "NONRESPONSE";
    }
    return "NONRESPONSE";
}

/// Parses a category name as used in the judgment CSV and run store.
/// Case-insensitive; returns nullopt for anything else.
std::optional<Category> category_from_string(std::string_view s);

/// Letter -> category; accepts 'a'..'e' in either case.
constexpr std::optional<Category> category_from_letter(char c) {
    switch (c) {
        case 'A': case 'a': return Category::A;
        case 'B': case 'b': return Category::B;
        case 'C': case 'c': return Category::C;
        case 'D': case 'd': return Category::D;
        case 'E': case 'e': return Category::E;
        default: return std::nullopt;
    }
}

/// Default numeric code: A..E -> 1..5, NonResponse -> 0. Zero sits below
/// every letter so a failed judgment is maximally distinct from any
/// letter under the integer encoding.
constexpr double integer_code(Category c) {
    return c == Category::NonResponse
               ? 0.0
               : static_cast<double>(static_cast<int>(c) + 1);
}

}  // namespace relia
