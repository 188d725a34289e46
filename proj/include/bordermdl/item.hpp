#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bordermdl {

/// Wait-time category. The numeric value is the category index written to
/// transaction files.
enum class Category : std::uint8_t {
    NoWaiting = 1,
    SlightDelay = 2,
    Delay = 3,
    HeavyDelay = 4,
};

inline constexpr int kCategoryCount = 4;

constexpr int index_of(Category c) noexcept { return static_cast<int>(c); }

/// Throws std::out_of_range unless 1 <= index <= 4.
Category category_from_index(int index);

std::string_view category_name(Category c) noexcept;

/// An attribute-qualified item such as "LQ:2". Items on different attributes
/// are distinct even when the category matches.
struct Item {
    std::string attribute;
    Category category = Category::NoWaiting;

    friend auto operator<=>(const Item&, const Item&) = default;
    friend bool operator==(const Item&, const Item&) = default;
};

/// Sorted ascending by (attribute, category), no duplicates.
using Itemset = std::vector<Item>;

std::string to_string(const Item& item);

/// "attr:cat,attr:cat"
std::string to_string(const Itemset& items);

/// Inverse of to_string(const Item&). Throws std::invalid_argument.
Item parse_item(std::string_view text);

/// Parses a separator-joined list of items and returns it canonicalized.
Itemset parse_itemset(std::string_view text, char separator = ',');

/// Sorts and checks the one-item-per-attribute rule. Throws
/// std::invalid_argument on a repeated attribute.
Itemset canonicalize(Itemset items);

/// True when every element of `needle` occurs in `haystack`. Both sorted.
bool is_subset(const Itemset& needle, const Itemset& haystack);

}  // namespace bordermdl
