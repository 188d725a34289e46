#pragma once

// Test-only reference implementations. Nothing here calls into the library's
// mining or codec code paths; they share only the plain data types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bordermdl/ingest.hpp"
#include "bordermdl/item.hpp"

namespace oracle {

using namespace bordermdl;

inline Transaction row(int hour, std::vector<std::pair<std::string, int>> cells) {
    Transaction t{Timestamp{std::chrono::sys_days{std::chrono::year{2016} / 9 / 5}} + std::chrono::hours{hour}, {}};
    for (auto& [attr, cat] : cells) t.items.push_back(Item{attr, static_cast<Category>(cat)});
    return t;
}

/// The 6-row illustrative database: four rows {PB:1, LQ:2, RB:1} followed by
/// two rows {PB:1, LQ:2, RB:2}.
inline std::vector<Transaction> illustrative_database() {
    std::vector<Transaction> db;
    for (int h = 0; h < 4; ++h) db.push_back(row(h, {{"PB", 1}, {"LQ", 2}, {"RB", 1}}));
    for (int h = 4; h < 6; ++h) db.push_back(row(h, {{"PB", 1}, {"LQ", 2}, {"RB", 2}}));
    return db;
}

/// Random database with one item per attribute per row, starting at hour 0.
inline std::vector<Transaction> random_database(std::mt19937_64& rng, int max_rows, int attributes, int categories) {
    const int rows = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_rows));
    static const char* names[] = {"A", "B", "C", "D", "E"};
    std::vector<Transaction> db;
    for (int r = 0; r < rows; ++r) {
        std::vector<std::pair<std::string, int>> cells;
        for (int a = 0; a < attributes; ++a) {
            cells.emplace_back(names[a], 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(categories)));
        }
        db.push_back(row(r, cells));
    }
    return db;
}

inline std::set<Item> row_items(const Transaction& t) { return {t.items.begin(), t.items.end()}; }

/// Every itemset (size >= 2, one item per attribute) over the items present
/// in `db`, with its support, found by exhaustive enumeration.
inline std::map<Itemset, std::size_t> all_itemsets(const std::vector<Transaction>& db) {
    std::map<std::string, std::set<Category>> values;
    for (const auto& t : db) {
        for (const auto& i : t.items) values[i.attribute].insert(i.category);
    }
    std::vector<std::pair<std::string, std::vector<Category>>> axes;
    for (auto& [a, cats] : values) axes.emplace_back(a, std::vector<Category>(cats.begin(), cats.end()));

    std::map<Itemset, std::size_t> out;
    // Mixed-radix counter: digit 0 = attribute absent.
    std::vector<std::size_t> digit(axes.size(), 0);
    while (true) {
        Itemset s;
        for (std::size_t a = 0; a < axes.size(); ++a) {
            if (digit[a] > 0) s.push_back(Item{axes[a].first, axes[a].second[digit[a] - 1]});
        }
        if (s.size() >= 2) {
            std::sort(s.begin(), s.end());
            std::size_t support = 0;
            for (const auto& t : db) {
                const auto items = row_items(t);
                if (std::all_of(s.begin(), s.end(), [&](const Item& i) { return items.count(i) > 0; })) ++support;
            }
            out[s] = support;
        }
        std::size_t a = 0;
        while (a < axes.size() && ++digit[a] > axes[a].second.size()) digit[a++] = 0;
        if (a == axes.size()) break;
    }
    return out;
}

inline std::map<Itemset, std::size_t> frequent_by_enumeration(const std::vector<Transaction>& db, std::size_t threshold) {
    std::map<Itemset, std::size_t> out;
    for (auto& [s, support] : all_itemsets(db)) {
        if (support >= threshold) out[s] = support;
    }
    return out;
}

struct RefPattern {
    Itemset items;
    std::size_t support;
};

/// Total two-part length of `db` under singletons + `extra`, evaluated from
/// first principles: order patterns (size desc, support desc, lexicographic),
/// cover each row greedily, count usages, sum -log2 shares and the raw
/// singleton term.
inline double reference_total_length(const std::vector<Transaction>& db, std::vector<RefPattern> extra) {
    std::map<Item, std::size_t> r;
    std::size_t c = 0;
    for (const auto& t : db) {
        for (const auto& i : t.items) {
            ++r[i];
            ++c;
        }
    }
    std::vector<RefPattern> table = std::move(extra);
    for (auto& [item, n] : r) table.push_back({{item}, n});
    std::sort(table.begin(), table.end(), [](const RefPattern& a, const RefPattern& b) {
        if (a.items.size() != b.items.size()) return a.items.size() > b.items.size();
        if (a.support != b.support) return a.support > b.support;
        return a.items < b.items;
    });

    std::vector<std::size_t> usage(table.size(), 0);
    std::vector<std::vector<std::size_t>> covers;
    for (const auto& t : db) {
        auto left = row_items(t);
        std::vector<std::size_t> cover;
        for (std::size_t p = 0; p < table.size(); ++p) {
            const auto& items = table[p].items;
            if (std::all_of(items.begin(), items.end(), [&](const Item& i) { return left.count(i) > 0; })) {
                for (const auto& i : items) left.erase(i);
                cover.push_back(p);
                ++usage[p];
            }
        }
        covers.push_back(cover);
    }
    double total_usage = 0;
    for (auto u : usage) total_usage += static_cast<double>(u);
    auto code = [&](std::size_t p) { return -std::log2(static_cast<double>(usage[p]) / total_usage); };

    double bits = 0.0;
    for (const auto& cover : covers) {
        for (auto p : cover) bits += code(p);
    }
    for (std::size_t p = 0; p < table.size(); ++p) {
        if (usage[p] > 0) bits += code(p);
    }
    for (auto& [item, n] : r) bits -= static_cast<double>(n) * std::log2(static_cast<double>(n) / static_cast<double>(c));
    return bits;
}

/// Minimum total length over every subset of `candidates`.
inline double exhaustive_best_length(const std::vector<Transaction>& db, const std::vector<RefPattern>& candidates) {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = candidates.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<RefPattern> chosen;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::uint64_t{1} << i)) chosen.push_back(candidates[i]);
        }
        best = std::min(best, reference_total_length(db, chosen));
    }
    return best;
}

}  // namespace oracle
