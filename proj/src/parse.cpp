#include "relia/parse.hpp"

#include <cctype>
#include <optional>

namespace relia {
namespace {

constexpr std::string_view kMarker = "Best Response:";

bool iequal(char a, char b) {
    return std::tolower(static_cast<unsigned char>(a)) ==
           std::tolower(static_cast<unsigned char>(b));
}

std::size_t find_marker_ci(std::string_view text, std::size_t from) {
    if (text.size() < kMarker.size()) return std::string_view::npos;
    for (std::size_t i = from; i + kMarker.size() <= text.size(); ++i) {
        bool match = true;
        for (std::size_t j = 0; j < kMarker.size() && match; ++j)
            match = iequal(text[i + j], kMarker[j]);
        if (match) return i;
    }
    return std::string_view::npos;
}

std::size_t skip_spaces(std::string_view text, std::size_t i) {
    while (i < text.size() &&
           std::isspace(static_cast<unsigned char>(text[i])))
        ++i;
    return i;
}

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

/// Letter at position i wrapped in `depth` brackets, e.g. depth 2 for
/// [[C]]. Whitespace inside the brackets is tolerated.
std::optional<Category> bracketed_letter(std::string_view text, std::size_t i,
                                         int depth) {
    for (int d = 0; d < depth; ++d, ++i)
        if (i >= text.size() || text[i] != '[') return std::nullopt;
    i = skip_spaces(text, i);
    if (i >= text.size()) return std::nullopt;
    const auto letter = category_from_letter(text[i]);
    if (!letter) return std::nullopt;
    i = skip_spaces(text, i + 1);
    for (int d = 0; d < depth; ++d, ++i)
        if (i >= text.size() || text[i] != ']') return std::nullopt;
    return letter;
}

std::optional<Category> letter_after_marker(std::string_view text, std::size_t i) {
    i = skip_spaces(text, i);
    if (i >= text.size()) return std::nullopt;
    if (auto c = bracketed_letter(text, i, 2)) return c;
    if (auto c = bracketed_letter(text, i, 1)) return c;
    const auto bare = category_from_letter(text[i]);
    // A bare letter only counts when it stands alone; "Clearly" is not C.
    if (bare && (i + 1 >= text.size() || !is_word_char(text[i + 1]))) return bare;
    return std::nullopt;
}

std::string_view trimmed(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

Category parse_best_response(std::string_view completion, ParseMode mode) {
    if (mode == ParseMode::Strict) {
        // Exact format only: the marker verbatim, one space, [[X]] upper-case.
        for (std::size_t i = completion.find(kMarker); i != std::string_view::npos;
             i = completion.find(kMarker, i + 1)) {
            const std::size_t p = i + kMarker.size();
            if (p + 6 <= completion.size() && completion[p] == ' ' &&
                completion[p + 1] == '[' && completion[p + 2] == '[' &&
                completion[p + 3] >= 'A' && completion[p + 3] <= 'E' &&
                completion[p + 4] == ']' && completion[p + 5] == ']')
                return *category_from_letter(completion[p + 3]);
        }
        return Category::NonResponse;
    }

    for (std::size_t i = find_marker_ci(completion, 0); i != std::string_view::npos;
         i = find_marker_ci(completion, i + 1)) {
        if (auto c = letter_after_marker(completion, i + kMarker.size())) return *c;
    }

    // A completion that is nothing but a category name parses as itself,
    // which also makes the parser idempotent on its own output names.
    if (auto c = category_from_string(trimmed(completion))) return *c;
    return Category::NonResponse;
}

}  // namespace relia
