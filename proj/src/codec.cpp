#include "bordermdl/codec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "weighted_rows.hpp"

namespace bordermdl {

namespace {

void recount(PatternTable& table, const detail::WeightedRows& db) {
    std::vector<std::size_t> usage(table.size(), 0);
    for (const auto& [row, weight] : db.rows) {
        for (const auto part : cover_transaction(row, table).parts) usage[part] += weight;
    }
    for (std::size_t i = 0; i < usage.size(); ++i) table.set_usage(i, usage[i]);
}

double row_length(const Itemset& row, const PatternTable& table) {
    double bits = 0.0;
    for (const auto part : cover_transaction(row, table).parts) bits += pattern_code_length(table[part], table);
    return bits;
}

double database_length(const detail::WeightedRows& db, const PatternTable& table) {
    double bits = 0.0;
    for (const auto& [row, weight] : db.rows) bits += static_cast<double>(weight) * row_length(row, table);
    return bits;
}

}  // namespace

bool cover_order(const Pattern& a, const Pattern& b) {
    if (a.items.size() != b.items.size()) return a.items.size() > b.items.size();
    if (a.support != b.support) return a.support > b.support;
    return a.items < b.items;
}

UnknownItemError::UnknownItemError(const Item& item)
    : std::invalid_argument(fmt::format("item '{}' has no singleton in the pattern table", to_string(item))),
      item_(item) {}

PatternTable PatternTable::from_patterns(std::vector<Pattern> patterns) {
    PatternTable table;
    for (auto& p : patterns) {
        p.items = canonicalize(std::move(p.items));
        if (p.items.empty()) throw std::invalid_argument("empty pattern");
        if (p.is_singleton()) {
            if (p.support == 0) {
                throw std::invalid_argument(fmt::format("singleton '{}' has zero count", to_string(p.items)));
            }
            if (!table.singleton_counts_.emplace(p.items.front(), p.support).second) {
                throw std::invalid_argument(fmt::format("duplicate pattern '{}'", to_string(p.items)));
            }
            table.total_singleton_count_ += p.support;
        }
    }
    std::sort(patterns.begin(), patterns.end(), cover_order);
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        if (i > 0 && patterns[i].items == patterns[i - 1].items) {
            throw std::invalid_argument(fmt::format("duplicate pattern '{}'", to_string(patterns[i].items)));
        }
        for (const auto& item : patterns[i].items) {
            if (!table.singleton_counts_.contains(item)) throw UnknownItemError(item);
        }
    }
    table.patterns_ = std::move(patterns);
    return table;
}

std::size_t PatternTable::total_usage() const noexcept {
    return std::accumulate(patterns_.begin(), patterns_.end(), std::size_t{0},
                           [](std::size_t acc, const Pattern& p) { return acc + p.usage; });
}

std::optional<std::size_t> PatternTable::find(const Itemset& items) const {
    for (std::size_t i = 0; i < patterns_.size(); ++i) {
        if (patterns_[i].items == items) return i;
    }
    return std::nullopt;
}

std::size_t PatternTable::insert(Pattern pattern) {
    if (pattern.items.empty()) throw std::invalid_argument("empty pattern");
    pattern.items = canonicalize(std::move(pattern.items));
    for (const auto& item : pattern.items) {
        if (!singleton_counts_.contains(item)) throw UnknownItemError(item);
    }
    if (find(pattern.items)) {
        throw std::invalid_argument(fmt::format("pattern '{}' already in table", to_string(pattern.items)));
    }
    const auto pos = std::upper_bound(patterns_.begin(), patterns_.end(), pattern, cover_order);
    const auto index = static_cast<std::size_t>(pos - patterns_.begin());
    patterns_.insert(pos, std::move(pattern));
    return index;
}

void PatternTable::erase(std::size_t index) {
    if (patterns_.at(index).is_singleton()) throw std::invalid_argument("singleton patterns cannot be removed");
    patterns_.erase(patterns_.begin() + static_cast<std::ptrdiff_t>(index));
}

std::vector<Pattern> PatternTable::prune_unused() {
    std::vector<Pattern> removed;
    std::erase_if(patterns_, [&](const Pattern& p) {
        if (p.is_singleton() || p.usage > 0) return false;
        removed.push_back(p);
        return true;
    });
    return removed;
}

PatternTable init_pattern_table(std::span<const Transaction> transactions) {
    if (transactions.empty()) throw std::invalid_argument("cannot build a pattern table for an empty database");
    PatternTable table;
    for (const auto& txn : transactions) {
        for (const auto& item : txn.items) {
            ++table.singleton_counts_[item];
            ++table.total_singleton_count_;
        }
    }
    for (const auto& [item, count] : table.singleton_counts_) {
        table.patterns_.push_back(Pattern{{item}, count, count});
    }
    std::sort(table.patterns_.begin(), table.patterns_.end(), cover_order);
    return table;
}

Cover cover_transaction(const Itemset& items, const PatternTable& table) {
    for (const auto& item : items) {
        if (!table.singleton_counts().contains(item)) throw UnknownItemError(item);
    }
    Cover cover;
    Itemset uncovered = items;
    std::size_t covered = 0;
    for (std::size_t i = 0; i < table.size() && !uncovered.empty(); ++i) {
        const auto& p = table[i].items;
        if (!is_subset(p, uncovered)) continue;
        cover.parts.push_back(i);
        covered += p.size();
        Itemset rest;
        rest.reserve(uncovered.size() - p.size());
        std::set_difference(uncovered.begin(), uncovered.end(), p.begin(), p.end(), std::back_inserter(rest));
        uncovered = std::move(rest);
    }
    // Singletons for every item guarantee an exact cover.
    if (!uncovered.empty() || covered != items.size()) {
        throw std::logic_error(fmt::format("no exact cover for '{}'", to_string(items)));
    }
    return cover;
}

Cover cover_transaction(const Transaction& txn, const PatternTable& table) {
    return cover_transaction(item_set(txn), table);
}

PatternTable recompute_usages(PatternTable table, std::span<const Transaction> transactions) {
    recount(table, detail::WeightedRows(transactions));
    return table;
}

double pattern_code_length(const Pattern& pattern, const PatternTable& table) {
    if (pattern.usage == 0) {
        throw std::domain_error(fmt::format("pattern '{}' has zero usage and no code", to_string(pattern.items)));
    }
    const auto total = static_cast<double>(table.total_usage());
    return -std::log2(static_cast<double>(pattern.usage) / total);
}

double transaction_code_length(const Transaction& txn, const PatternTable& table) {
    return row_length(item_set(txn), table);
}

double database_length(std::span<const Transaction> transactions, const PatternTable& table) {
    double bits = 0.0;
    for (const auto& txn : transactions) bits += transaction_code_length(txn, table);
    return bits;
}

double table_length(const PatternTable& table) {
    double bits = 0.0;
    for (const auto& p : table.patterns()) {
        if (p.usage > 0) bits += pattern_code_length(p, table);
    }
    const auto c = static_cast<double>(table.total_singleton_count());
    for (const auto& [item, count] : table.singleton_counts()) {
        const auto r = static_cast<double>(count);
        bits -= r * std::log2(r / c);
    }
    return bits;
}

double total_length(std::span<const Transaction> transactions, const PatternTable& table) {
    return database_length(transactions, table) + table_length(table);
}

CompressionResult compress(std::span<const Transaction> transactions, const SupportThreshold& threshold) {
    const detail::WeightedRows db(transactions);

    CompressionResult result;
    result.table = init_pattern_table(transactions);
    result.initial_length = database_length(db, result.table) + table_length(result.table);
    double best = result.initial_length;

    result.candidates = frequent_itemsets(transactions, threshold);
    result.log.reserve(result.candidates.size());
    for (const auto& candidate : result.candidates) {
        PatternTable trial = result.table;
        trial.insert(Pattern{candidate.items, candidate.support, 0});
        recount(trial, db);
        const double length = database_length(db, trial) + table_length(trial);

        AcceptanceRecord record{candidate.items, candidate.support, length, length < best, {}};
        if (record.accepted) {
            for (auto& p : trial.prune_unused()) record.pruned.push_back(std::move(p.items));
            result.table = std::move(trial);
            best = length;
        }
        result.log.push_back(std::move(record));
    }
    result.final_length = best;
    return result;
}

}  // namespace bordermdl
