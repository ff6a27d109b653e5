#pragma once

#include <string_view>

#include "relia/category.hpp"

namespace relia {

/// Lenient (default): the "Best Response:" marker is matched
/// case-insensitively and the letter may be double-bracketed,
/// single-bracketed or bare, in either case; a completion that is
/// nothing but such a letter also counts. Strict demands the exact
/// marker and an upper-case double-bracketed letter, for fidelity
/// studies of how often judges obey the format.
enum class ParseMode { Lenient, Strict };

/// Extracts the chosen letter from a judge completion. Total: anything
/// unparseable is NonResponse, never an error.
Category parse_best_response(std::string_view completion,
                             ParseMode mode = ParseMode::Lenient);

}  // namespace relia
