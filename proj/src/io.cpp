#include "bordermdl/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace bordermdl::io {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    while (true) {
        const auto pos = line.find(sep);
        out.push_back(line.substr(0, pos));
        if (pos == std::string_view::npos) break;
        line.remove_prefix(pos + 1);
    }
    return out;
}

std::string_view chomp(const std::string& line) {
    std::string_view v = line;
    if (!v.empty() && v.back() == '\r') v.remove_suffix(1);
    return v;
}

template <typename T>
T parse_number(std::string_view text, std::size_t line, const char* what) {
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw FormatError(line, fmt::format("bad {} '{}'", what, text));
    }
    return value;
}

Timestamp parse_time(std::string_view text, std::size_t line) {
    const auto ts = parse_timestamp(text);
    if (!ts) throw FormatError(line, fmt::format("bad timestamp '{}'", text));
    return *ts;
}

Itemset parse_items(std::string_view text, char sep, std::size_t line) {
    try {
        return parse_itemset(text, sep);
    } catch (const std::invalid_argument& e) {
        throw FormatError(line, e.what());
    }
}

std::string join_cover(const std::vector<Itemset>& cover) {
    std::string out;
    for (const auto& part : cover) {
        if (!out.empty()) out += '|';
        std::string items;
        for (const auto& item : part) {
            if (!items.empty()) items += '+';
            items += to_string(item);
        }
        out += items;
    }
    return out;
}

/// Next non-comment, non-blank line.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        const auto v = chomp(line);
        if (v.empty() || v.front() == '#') continue;
        return true;
    }
    return false;
}

}  // namespace

FormatError::FormatError(std::size_t line, const std::string& message)
    : std::runtime_error(fmt::format("line {}: {}", line, message)), line_(line) {}

std::string format_bits(double bits) { return fmt::format("{}", bits); }

void write_transactions(std::ostream& out, std::span<const std::string> attributes,
                        std::span<const Transaction> transactions) {
    fmt::print(out, "timestamp,{}\n", fmt::join(attributes, ","));
    for (const auto& txn : transactions) {
        fmt::print(out, "{}", format_timestamp(txn.timestamp));
        for (const auto& item : txn.items) fmt::print(out, ",{}", index_of(item.category));
        fmt::print(out, "\n");
    }
}

TransactionFile read_transactions(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!next_line(in, line, line_no)) throw FormatError(0, "transaction file has no header");
    const auto header = split(chomp(line), ',');
    if (header.size() < 2 || header.front() != "timestamp") {
        throw FormatError(line_no, "transaction header must be 'timestamp,<attribute>...'");
    }
    TransactionFile file;
    for (std::size_t i = 1; i < header.size(); ++i) file.attributes.emplace_back(header[i]);

    while (next_line(in, line, line_no)) {
        const auto fields = split(chomp(line), ',');
        if (fields.size() != header.size()) {
            throw FormatError(line_no, fmt::format("expected {} fields, found {}", header.size(), fields.size()));
        }
        Transaction txn{parse_time(fields[0], line_no), {}};
        for (std::size_t i = 1; i < fields.size(); ++i) {
            const int index = parse_number<int>(fields[i], line_no, "category");
            if (index < 1 || index > kCategoryCount) {
                throw FormatError(line_no, fmt::format("category {} outside 1..4", index));
            }
            txn.items.push_back(Item{file.attributes[i - 1], category_from_index(index)});
        }
        file.transactions.push_back(std::move(txn));
    }
    return file;
}

void write_itemsets(std::ostream& out, std::span<const FrequentItemset> itemsets) {
    for (const auto& f : itemsets) fmt::print(out, "{}\t{}\n", to_string(f.items), f.support);
}

std::vector<FrequentItemset> read_itemsets(std::istream& in) {
    std::vector<FrequentItemset> result;
    std::string line;
    std::size_t line_no = 0;
    while (next_line(in, line, line_no)) {
        const auto fields = split(chomp(line), '\t');
        if (fields.size() != 2) throw FormatError(line_no, "itemset line must be '<items>\\t<support>'");
        result.push_back({parse_items(fields[0], ',', line_no), parse_number<std::size_t>(fields[1], line_no, "support")});
    }
    return result;
}

void write_pattern_table(std::ostream& out, const PatternTable& table) {
    fmt::print(out, "{}\n# pattern\tusage\tcode_length_bits\tsupport\n", kTableHeader);
    for (const auto& p : table.patterns()) {
        const std::string bits = p.usage > 0 ? format_bits(pattern_code_length(p, table)) : "-";
        fmt::print(out, "{}\t{}\t{}\t{}\n", to_string(p.items), p.usage, bits, p.support);
    }
}

PatternTable read_pattern_table(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line) || chomp(line) != kTableHeader) {
        throw FormatError(1, fmt::format("pattern table must start with '{}'", kTableHeader));
    }
    line_no = 1;
    std::vector<Pattern> patterns;
    while (next_line(in, line, line_no)) {
        const auto fields = split(chomp(line), '\t');
        if (fields.size() != 4) throw FormatError(line_no, "pattern line must have 4 tab-separated fields");
        Pattern p;
        p.items = parse_items(fields[0], ',', line_no);
        p.usage = parse_number<std::size_t>(fields[1], line_no, "usage");
        p.support = parse_number<std::size_t>(fields[3], line_no, "support");
        patterns.push_back(std::move(p));
    }
    try {
        return PatternTable::from_patterns(std::move(patterns));
    } catch (const std::invalid_argument& e) {
        throw FormatError(line_no, e.what());
    }
}

void write_acceptance_log(std::ostream& out, const CompressionResult& result) {
    fmt::print(out, "{}\n", kLogHeader);
    fmt::print(out, "# initial_length_bits\t{}\n", format_bits(result.initial_length));
    fmt::print(out, "# final_length_bits\t{}\n", format_bits(result.final_length));
    fmt::print(out, "candidate\tsupport\tlength_bits\tdecision\tpruned\n");
    for (const auto& r : result.log) {
        std::vector<std::string> pruned;
        for (const auto& p : r.pruned) pruned.push_back(to_string(p));
        fmt::print(out, "{}\t{}\t{}\t{}\t{}\n", to_string(r.candidate), r.support, format_bits(r.length),
                   r.accepted ? "accepted" : "rejected", fmt::join(pruned, "|"));
    }
}

void write_scores(std::ostream& out, std::span<const std::string> attributes,
                  std::span<const ScoredTransaction> scored) {
    fmt::print(out, "timestamp,{},score_bits,rank,cover\n", fmt::join(attributes, ","));
    for (const auto& s : scored) {
        fmt::print(out, "{}", format_timestamp(s.transaction.timestamp));
        for (const auto& item : s.transaction.items) fmt::print(out, ",{}", index_of(item.category));
        fmt::print(out, ",{},{},{}\n", format_bits(s.score), s.rank, join_cover(s.cover));
    }
}

std::vector<ScoredTransaction> read_scores(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!next_line(in, line, line_no)) throw FormatError(0, "score file has no header");
    const auto header = split(chomp(line), ',');
    if (header.size() < 5 || header.front() != "timestamp" || header[header.size() - 3] != "score_bits" ||
        header[header.size() - 2] != "rank" || header.back() != "cover") {
        throw FormatError(line_no, "score header must be 'timestamp,<attribute>...,score_bits,rank,cover'");
    }
    const std::size_t attrs = header.size() - 4;
    const std::vector<std::string> names(header.begin() + 1, header.begin() + 1 + static_cast<std::ptrdiff_t>(attrs));
    const std::size_t columns = header.size();

    std::vector<ScoredTransaction> result;
    while (next_line(in, line, line_no)) {
        const auto fields = split(chomp(line), ',');
        if (fields.size() != columns) {
            throw FormatError(line_no, fmt::format("expected {} fields, found {}", columns, fields.size()));
        }
        ScoredTransaction s;
        s.transaction.timestamp = parse_time(fields[0], line_no);
        for (std::size_t i = 0; i < attrs; ++i) {
            const int index = parse_number<int>(fields[i + 1], line_no, "category");
            if (index < 1 || index > kCategoryCount) {
                throw FormatError(line_no, fmt::format("category {} outside 1..4", index));
            }
            s.transaction.items.push_back(Item{names[i], category_from_index(index)});
        }
        s.score = parse_number<double>(fields[attrs + 1], line_no, "score");
        s.rank = parse_number<std::size_t>(fields[attrs + 2], line_no, "rank");
        if (!fields[attrs + 3].empty()) {
            for (const auto part : split(fields[attrs + 3], '|')) s.cover.push_back(parse_items(part, '+', line_no));
        }
        result.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < result.size(); ++i) {
        if (result[i].rank != i + 1) throw FormatError(0, "score rows are not in rank order 1..n");
    }
    return result;
}

}  // namespace bordermdl::io
