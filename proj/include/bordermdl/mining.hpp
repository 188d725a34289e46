#pragma once

// Apriori frequent-itemset mining over categorical transactions.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bordermdl/ingest.hpp"
#include "bordermdl/item.hpp"

namespace bordermdl {

/// Minimum support, either an absolute row count or a fraction of the
/// database size. A fraction resolves to max(minimum, ceil(fraction * n)).
class SupportThreshold {
public:
    enum class Comparison { AtLeast, GreaterThan };

    static SupportThreshold absolute(std::size_t count, Comparison cmp = Comparison::AtLeast);
    static SupportThreshold fraction(double value, std::size_t minimum = 1, Comparison cmp = Comparison::AtLeast);
    /// 5% of the database, never below 2.
    static SupportThreshold default_threshold() { return fraction(0.05, 2); }

    /// Parses "12" as absolute and "0.05" / "1.0" as a fraction.
    static SupportThreshold parse(const std::string& text, std::size_t minimum = 1);

    std::size_t resolve(std::size_t database_size) const;
    bool admits(std::size_t support, std::size_t database_size) const;

    bool is_fraction() const noexcept { return is_fraction_; }
    double value() const noexcept { return value_; }
    std::size_t minimum() const noexcept { return minimum_; }
    Comparison comparison() const noexcept { return comparison_; }
    std::string describe() const;

private:
    SupportThreshold(bool is_fraction, double value, std::size_t minimum, Comparison cmp);

    bool is_fraction_;
    double value_;
    std::size_t minimum_;
    Comparison comparison_;
};

struct FrequentItemset {
    Itemset items;
    std::size_t support = 0;

    friend bool operator==(const FrequentItemset&, const FrequentItemset&) = default;
};

/// Candidate trial order: larger itemsets first, then higher support, then
/// lexicographic on items.
bool candidate_order(const FrequentItemset& a, const FrequentItemset& b);

/// Number of transactions containing every item of `items` (canonical).
std::size_t support(const Itemset& items, std::span<const Transaction> transactions);

/// All itemsets with two or more items that the threshold admits, in
/// candidate order. Candidates of size k are joined from frequent (k-1)-sets
/// sharing a (k-2)-prefix and pruned by downward closure before counting.
std::vector<FrequentItemset> frequent_itemsets(std::span<const Transaction> transactions,
                                               const SupportThreshold& threshold);

}  // namespace bordermdl
