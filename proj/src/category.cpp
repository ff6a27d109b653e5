#include "relia/category.hpp"

#include <algorithm>
#include <cctype>

namespace relia {

std::optional<Category> category_from_string(std::string_view s) {
    if (s.size() == 1) return category_from_letter(s.front());
    std::string upper(s);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (upper == "NONRESPONSE") return Category::NonResponse;
    return std::nullopt;
}

}  // namespace relia
