#pragma once

// Ranking transactions by code length under a finished pattern table.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "bordermdl/codec.hpp"
#include "bordermdl/ingest.hpp"

namespace bordermdl {

struct ScoredTransaction {
    Transaction transaction;
    std::vector<Itemset> cover;
    double score = 0.0;  // bits
    std::size_t rank = 0;  // 1-based
};

struct HourHistogram {
    std::array<std::size_t, 24> bins{};

    std::size_t total() const noexcept;
};

/// Scores every transaction, sorts by descending score (earlier timestamp
/// first on ties) and assigns ranks 1..n.
std::vector<ScoredTransaction> score_all(std::span<const Transaction> transactions, const PatternTable& table);

/// The first ceil(fraction * n) ranked entries. Throws std::invalid_argument
/// unless 0 < fraction <= 1 and `scored` is nonempty.
std::vector<ScoredTransaction> top_fraction(std::span<const ScoredTransaction> scored, double fraction);

HourHistogram hour_frequency(std::span<const ScoredTransaction> selected);

struct ReportOptions {
    std::size_t top_k = 3;
    double top_fraction = 0.05;
};

/// Writes the versioned text report: top-k table, top-fraction listing and a
/// 24-row hour-of-day histogram. Throws std::invalid_argument if top_k
/// exceeds the number of scored rows.
void write_report(std::ostream& out, std::span<const ScoredTransaction> scored,
                  std::span<const ScoredTransaction> selected, const HourHistogram& histogram,
                  const ReportOptions& options);

inline constexpr const char* kReportHeader = "# bordermdl-report v1";

}  // namespace bordermdl
