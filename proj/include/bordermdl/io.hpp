#pragma once

// Text artifact formats shared by the CLI stages.
//
//   transactions   timestamp,<attr>,<attr>...        one row per hour
//   itemsets       attr:cat,attr:cat<TAB>support
//   pattern table  attr:cat,...<TAB>usage<TAB>code_length_bits<TAB>support
//   acceptance log candidate<TAB>support<TAB>length_bits<TAB>decision<TAB>pruned
//   scores         timestamp,<attr>...,score_bits,rank,cover

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bordermdl/anomaly.hpp"
#include "bordermdl/codec.hpp"
#include "bordermdl/ingest.hpp"
#include "bordermdl/mining.hpp"

namespace bordermdl::io {

class FormatError : public std::runtime_error {
public:
    FormatError(std::size_t line, const std::string& message);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

inline constexpr const char* kTableHeader = "# bordermdl-pattern-table v1";
inline constexpr const char* kLogHeader = "# bordermdl-acceptance-log v1";

struct TransactionFile {
    std::vector<std::string> attributes;
    std::vector<Transaction> transactions;
};

void write_transactions(std::ostream& out, std::span<const std::string> attributes,
                        std::span<const Transaction> transactions);
TransactionFile read_transactions(std::istream& in);

void write_itemsets(std::ostream& out, std::span<const FrequentItemset> itemsets);
std::vector<FrequentItemset> read_itemsets(std::istream& in);

/// Patterns in cover order. Zero-usage patterns carry "-" as code length.
void write_pattern_table(std::ostream& out, const PatternTable& table);
/// Reloads a table written by write_pattern_table; usages are taken as
/// stored, nothing is recomputed.
PatternTable read_pattern_table(std::istream& in);

void write_acceptance_log(std::ostream& out, const CompressionResult& result);

/// Rows in rank order. Cover parts are joined with '|', items within a part
/// with '+'.
void write_scores(std::ostream& out, std::span<const std::string> attributes,
                  std::span<const ScoredTransaction> scored);
std::vector<ScoredTransaction> read_scores(std::istream& in);

/// Shortest decimal that reads back to the same double.
std::string format_bits(double bits);

}  // namespace bordermdl::io
