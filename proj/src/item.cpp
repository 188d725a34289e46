#include "bordermdl/item.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include <fmt/format.h>

namespace bordermdl {

Category category_from_index(int index) {
    if (index < 1 || index > kCategoryCount) {
        throw std::out_of_range(fmt::format("category index {} outside 1..4", index));
    }
    return static_cast<Category>(index);
}

std::string_view category_name(Category c) noexcept {
    switch (c) {
        case Category::NoWaiting: return "no waiting";
        case Category::SlightDelay: return "slight delay";
        case Category::Delay: return "delay";
        case Category::HeavyDelay: return "heavy delay";
    }
    return "unknown";
}

std::string to_string(const Item& item) {
    return fmt::format("{}:{}", item.attribute, index_of(item.category));
}

std::string to_string(const Itemset& items) {
    std::string out;
    for (const auto& item : items) {
        if (!out.empty()) out += ',';
        out += to_string(item);
    }
    return out;
}

Item parse_item(std::string_view text) {
    const auto colon = text.rfind(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 == text.size()) {
        throw std::invalid_argument(fmt::format("malformed item '{}'", text));
    }
    int index = 0;
    const auto digits = text.substr(colon + 1);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
        throw std::invalid_argument(fmt::format("malformed category in item '{}'", text));
    }
    try {
        return Item{std::string(text.substr(0, colon)), category_from_index(index)};
    } catch (const std::out_of_range& e) {
        throw std::invalid_argument(e.what());
    }
}

Itemset parse_itemset(std::string_view text, char separator) {
    Itemset items;
    while (!text.empty()) {
        const auto pos = text.find(separator);
        items.push_back(parse_item(text.substr(0, pos)));
        if (pos == std::string_view::npos) break;
        text.remove_prefix(pos + 1);
    }
    return canonicalize(std::move(items));
}

Itemset canonicalize(Itemset items) {
    std::sort(items.begin(), items.end());
    for (std::size_t i = 1; i < items.size(); ++i) {
        if (items[i].attribute == items[i - 1].attribute) {
            throw std::invalid_argument(
                fmt::format("itemset holds two items for attribute '{}'", items[i].attribute));
        }
    }
    return items;
}

bool is_subset(const Itemset& needle, const Itemset& haystack) {
    return std::includes(haystack.begin(), haystack.end(), needle.begin(), needle.end());
}

}  // namespace bordermdl
