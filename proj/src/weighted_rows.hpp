#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "bordermdl/ingest.hpp"

namespace bordermdl::detail {

/// Distinct canonical rows with their multiplicities. Hourly categorical data
/// has few distinct rows, so counting and covering run per distinct row.
struct WeightedRows {
    std::vector<std::pair<Itemset, std::size_t>> rows;
    std::size_t total = 0;

    explicit WeightedRows(std::span<const Transaction> transactions) {
        std::map<Itemset, std::size_t> counts;
        for (const auto& txn : transactions) ++counts[item_set(txn)];
        rows.assign(counts.begin(), counts.end());
        total = transactions.size();
    }
};

}  // namespace bordermdl::detail
