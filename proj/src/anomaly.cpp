#include "bordermdl/anomaly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace bordermdl {

std::size_t HourHistogram::total() const noexcept { return std::accumulate(bins.begin(), bins.end(), std::size_t{0}); }

std::vector<ScoredTransaction> score_all(std::span<const Transaction> transactions, const PatternTable& table) {
    std::vector<ScoredTransaction> scored;
    scored.reserve(transactions.size());
    for (const auto& txn : transactions) {
        ScoredTransaction s{txn, {}, 0.0, 0};
        for (const auto part : cover_transaction(txn, table).parts) {
            s.cover.push_back(table[part].items);
            s.score += pattern_code_length(table[part], table);
        }
        scored.push_back(std::move(s));
    }
    std::stable_sort(scored.begin(), scored.end(), [](const ScoredTransaction& a, const ScoredTransaction& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.transaction.timestamp < b.transaction.timestamp;
    });
    for (std::size_t i = 0; i < scored.size(); ++i) scored[i].rank = i + 1;
    return scored;
}

std::vector<ScoredTransaction> top_fraction(std::span<const ScoredTransaction> scored, double fraction) {
    if (scored.empty()) throw std::invalid_argument("no scored transactions");
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw std::invalid_argument(fmt::format("top fraction {} outside (0, 1]", fraction));
    }
    const auto n = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(scored.size()) - 1e-9));
    const auto take = std::min(n, scored.size());
    return {scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take)};
}

HourHistogram hour_frequency(std::span<const ScoredTransaction> selected) {
    HourHistogram h;
    for (const auto& s : selected) ++h.bins[static_cast<std::size_t>(hour_of_day(s.transaction.timestamp))];
    return h;
}

namespace {

std::string cover_text(const std::vector<Itemset>& cover) {
    std::string out;
    for (const auto& part : cover) {
        if (!out.empty()) out += " | ";
        out += to_string(part);
    }
    return out;
}

void write_rows(std::ostream& out, std::span<const ScoredTransaction> rows, std::span<const std::string> attributes) {
    fmt::print(out, "rank\ttimestamp");
    for (const auto& a : attributes) fmt::print(out, "\t{}", a);
    fmt::print(out, "\tscore_bits\tcover\n");
    for (const auto& s : rows) {
        fmt::print(out, "{}\t{}", s.rank, format_timestamp(s.transaction.timestamp));
        for (const auto& item : s.transaction.items) fmt::print(out, "\t{}", index_of(item.category));
        fmt::print(out, "\t{:.6f}\t{}\n", s.score, cover_text(s.cover));
    }
}

}  // namespace

void write_report(std::ostream& out, std::span<const ScoredTransaction> scored,
                  std::span<const ScoredTransaction> selected, const HourHistogram& histogram,
                  const ReportOptions& options) {
    if (options.top_k > scored.size()) {
        throw std::invalid_argument(fmt::format("top_k {} exceeds {} scored rows", options.top_k, scored.size()));
    }
    std::vector<std::string> attributes;
    if (!scored.empty()) {
        for (const auto& item : scored.front().transaction.items) attributes.push_back(item.attribute);
    }

    fmt::print(out, "{}\n", kReportHeader);
    fmt::print(out, "rows\t{}\n", scored.size());
    fmt::print(out, "attributes\t{}\n", fmt::join(attributes, ","));
    fmt::print(out, "top_k\t{}\n", options.top_k);
    fmt::print(out, "top_fraction\t{}\tselected\t{}\n", options.top_fraction, selected.size());

    fmt::print(out, "\n[top_k]\n");
    write_rows(out, scored.first(options.top_k), attributes);

    fmt::print(out, "\n[top_fraction]\n");
    write_rows(out, selected, attributes);

    fmt::print(out, "\n[hour_histogram]\nhour\tcount\n");
    for (std::size_t h = 0; h < histogram.bins.size(); ++h) fmt::print(out, "{}\t{}\n", h, histogram.bins[h]);
}

}  // namespace bordermdl
