#include "bordermdl/mining.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "weighted_rows.hpp"

namespace bordermdl {

SupportThreshold::SupportThreshold(bool is_fraction, double value, std::size_t minimum, Comparison cmp)
    : is_fraction_(is_fraction), value_(value), minimum_(minimum), comparison_(cmp) {}

SupportThreshold SupportThreshold::absolute(std::size_t count, Comparison cmp) {
    if (count < 1) throw std::invalid_argument("absolute support threshold must be >= 1");
    return SupportThreshold(false, static_cast<double>(count), 1, cmp);
}

SupportThreshold SupportThreshold::fraction(double value, std::size_t minimum, Comparison cmp) {
    if (!(value > 0.0 && value <= 1.0)) {
        throw std::invalid_argument(fmt::format("support fraction {} outside (0, 1]", value));
    }
    return SupportThreshold(true, value, std::max<std::size_t>(minimum, 1), cmp);
}

SupportThreshold SupportThreshold::parse(const std::string& text, std::size_t minimum) {
    if (text.find_first_of(".eE") == std::string::npos) {
        std::size_t count = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), count);
        if (ec != std::errc{} || ptr != text.data() + text.size()) {
            throw std::invalid_argument(fmt::format("bad support threshold '{}'", text));
        }
        return absolute(count);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument(fmt::format("bad support threshold '{}'", text));
    }
    return fraction(value, minimum);
}

std::size_t SupportThreshold::resolve(std::size_t database_size) const {
    if (!is_fraction_) return static_cast<std::size_t>(value_);
    const auto scaled = static_cast<std::size_t>(std::ceil(value_ * static_cast<double>(database_size) - 1e-9));
    return std::max(minimum_, scaled);
}

bool SupportThreshold::admits(std::size_t support, std::size_t database_size) const {
    const std::size_t t = resolve(database_size);
    return comparison_ == Comparison::AtLeast ? support >= t : support > t;
}

std::string SupportThreshold::describe() const {
    const char* cmp = comparison_ == Comparison::AtLeast ? ">=" : ">";
    if (is_fraction_) return fmt::format("support {} max({}, ceil({} * n))", cmp, minimum_, value_);
    return fmt::format("support {} {}", cmp, static_cast<std::size_t>(value_));
}

bool candidate_order(const FrequentItemset& a, const FrequentItemset& b) {
    if (a.items.size() != b.items.size()) return a.items.size() > b.items.size();
    if (a.support != b.support) return a.support > b.support;
    return a.items < b.items;
}

std::size_t support(const Itemset& items, std::span<const Transaction> transactions) {
    std::size_t n = 0;
    for (const auto& txn : transactions) {
        if (is_subset(items, item_set(txn))) ++n;
    }
    return n;
}

std::vector<FrequentItemset> frequent_itemsets(std::span<const Transaction> transactions,
                                               const SupportThreshold& threshold) {
    const detail::WeightedRows db(transactions);
    const std::size_t n = db.total;

    auto count = [&](const Itemset& items) {
        std::size_t s = 0;
        for (const auto& [row, weight] : db.rows) {
            if (is_subset(items, row)) s += weight;
        }
        return s;
    };

    // Level 1.
    std::map<Item, std::size_t> singles;
    for (const auto& [row, weight] : db.rows) {
        for (const auto& item : row) singles[item] += weight;
    }
    std::vector<Itemset> level;
    for (const auto& [item, s] : singles) {
        if (threshold.admits(s, n)) level.push_back({item});
    }

    std::vector<FrequentItemset> result;
    while (level.size() >= 2) {
        const std::set<Itemset> previous(level.begin(), level.end());
        std::vector<Itemset> next;
        for (std::size_t i = 0; i < level.size(); ++i) {
            for (std::size_t j = i + 1; j < level.size(); ++j) {
                const auto& a = level[i];
                const auto& b = level[j];
                // `level` is sorted, so once prefixes diverge no later j matches.
                if (!std::equal(a.begin(), a.end() - 1, b.begin(), b.end() - 1)) break;
                if (a.back().attribute == b.back().attribute) continue;

                Itemset candidate = a;
                candidate.push_back(b.back());
                bool closed = true;
                for (std::size_t drop = 0; drop + 2 < candidate.size() && closed; ++drop) {
                    Itemset subset;
                    subset.reserve(candidate.size() - 1);
                    for (std::size_t k = 0; k < candidate.size(); ++k) {
                        if (k != drop) subset.push_back(candidate[k]);
                    }
                    closed = previous.contains(subset);
                }
                if (!closed) continue;

                const std::size_t s = count(candidate);
                if (threshold.admits(s, n)) {
                    result.push_back({candidate, s});
                    next.push_back(std::move(candidate));
                }
            }
        }
        std::sort(next.begin(), next.end());
        level = std::move(next);
    }

    std::sort(result.begin(), result.end(), candidate_order);
    return result;
}

}  // namespace bordermdl
