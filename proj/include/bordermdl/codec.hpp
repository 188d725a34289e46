#pragma once

// Dictionary-based compression of a transaction database under a two-part
// MDL code: L(DT|PT) + L(PT), all lengths in bits.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "bordermdl/ingest.hpp"
#include "bordermdl/item.hpp"
#include "bordermdl/mining.hpp"

namespace bordermdl {

struct Pattern {
    Itemset items;
    /// Database support of the itemset; fixes the pattern's cover position.
    std::size_t support = 0;
    /// Number of transaction covers that use this pattern.
    std::size_t usage = 0;

    bool is_singleton() const noexcept { return items.size() == 1; }

    friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// Cover order: larger patterns first, then higher support, then
/// lexicographic on items.
bool cover_order(const Pattern& a, const Pattern& b);

/// Thrown when a transaction holds an item the table has no singleton for.
class UnknownItemError : public std::invalid_argument {
public:
    explicit UnknownItemError(const Item& item);
    const Item& item() const noexcept { return item_; }

private:
    Item item_;
};

/// The code dictionary. Patterns are kept in cover order; every database item
/// has a singleton pattern, which is never removed.
class PatternTable {
public:
    PatternTable() = default;

    /// Rebuilds a table from stored patterns (e.g. a reloaded table file).
    /// Singleton supports are taken as the raw item counts r_i.
    static PatternTable from_patterns(std::vector<Pattern> patterns);

    const std::vector<Pattern>& patterns() const noexcept { return patterns_; }
    const Pattern& operator[](std::size_t i) const { return patterns_.at(i); }
    std::size_t size() const noexcept { return patterns_.size(); }

    /// r_i per database item.
    const std::map<Item, std::size_t>& singleton_counts() const noexcept { return singleton_counts_; }
    /// c = sum of r_i.
    std::size_t total_singleton_count() const noexcept { return total_singleton_count_; }
    /// Sum of usages over all patterns (zero-usage patterns add nothing).
    std::size_t total_usage() const noexcept;

    std::optional<std::size_t> find(const Itemset& items) const;

    /// Inserts at its cover-order position and returns that position. Throws
    /// std::invalid_argument if the itemset is already present, is empty, or
    /// holds an item without a singleton.
    std::size_t insert(Pattern pattern);

    /// Throws std::invalid_argument for singletons.
    void erase(std::size_t index);

    void set_usage(std::size_t index, std::size_t usage) { patterns_.at(index).usage = usage; }

    /// Drops non-singleton patterns whose usage is zero; returns them.
    std::vector<Pattern> prune_unused();

private:
    friend PatternTable init_pattern_table(std::span<const Transaction> transactions);

    std::vector<Pattern> patterns_;
    std::map<Item, std::size_t> singleton_counts_;
    std::size_t total_singleton_count_ = 0;
};

/// Disjoint exact cover of one transaction, as positions into the table.
struct Cover {
    std::vector<std::size_t> parts;
};

/// Singleton-only table with usage = r_i for each item. Throws
/// std::invalid_argument for an empty database.
PatternTable init_pattern_table(std::span<const Transaction> transactions);

/// Greedy cover: scan patterns in table order and take each one whose items
/// are all still uncovered. Throws UnknownItemError for items with no
/// singleton.
Cover cover_transaction(const Itemset& items, const PatternTable& table);
Cover cover_transaction(const Transaction& txn, const PatternTable& table);

/// Returns `table` with every usage recounted from fresh covers.
PatternTable recompute_usages(PatternTable table, std::span<const Transaction> transactions);

/// -log2(usage / total usage). Throws std::domain_error for zero usage.
double pattern_code_length(const Pattern& pattern, const PatternTable& table);

/// Sum of code lengths of the patterns covering the transaction.
double transaction_code_length(const Transaction& txn, const PatternTable& table);

double database_length(std::span<const Transaction> transactions, const PatternTable& table);

/// Code lengths of the in-use patterns plus sum over items of -r_i log2(r_i / c).
double table_length(const PatternTable& table);

double total_length(std::span<const Transaction> transactions, const PatternTable& table);

struct AcceptanceRecord {
    Itemset candidate;
    std::size_t support = 0;
    double length = 0.0;  // total length with the candidate inserted
    bool accepted = false;
    std::vector<Itemset> pruned;  // patterns dropped after an acceptance
};

struct CompressionResult {
    PatternTable table;
    double initial_length = 0.0;
    double final_length = 0.0;
    std::vector<FrequentItemset> candidates;
    std::vector<AcceptanceRecord> log;
};

/// Greedy MDL compression. Starts from the singleton table, mines the
/// candidate set once, then tries each candidate in candidate order: insert,
/// recount usages, keep it only if the total length strictly drops.
CompressionResult compress(std::span<const Transaction> transactions, const SupportThreshold& threshold);

}  // namespace bordermdl
