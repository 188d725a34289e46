#include "bordermdl/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "bordermdl/codec.hpp"
#include "bordermdl/io.hpp"

namespace bordermdl {

namespace {

using nlohmann::json;

template <typename Fn>
auto in_stage(Stage stage, Fn&& fn) {
    try {
        return fn();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(stage, e.what());
    }
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    return out;
}

}  // namespace

std::string_view to_string(Stage s) noexcept {
    switch (s) {
        case Stage::Ingest: return "ingest";
        case Stage::Mine: return "mine";
        case Stage::Compress: return "compress";
        case Stage::Score: return "score";
        case Stage::Report: return "report";
    }
    return "unknown";
}

int exit_code(Stage s) noexcept { return 10 * (static_cast<int>(s) + 1); }

StageError::StageError(Stage stage, const std::string& message)
    : std::runtime_error(fmt::format("{} stage: {}", to_string(stage), message)), stage_(stage) {}

void RunConfig::validate() const {
    if (attributes.empty()) throw std::invalid_argument("attribute list is empty");
    if (!(top_fraction > 0.0 && top_fraction <= 1.0)) {
        throw std::invalid_argument(fmt::format("top_fraction {} outside (0, 1]", top_fraction));
    }
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(fmt::format("cannot read config '{}'", path.string()));
    const json j = json::parse(in);

    RunConfig c;
    if (j.contains("input")) c.input = j.at("input").get<std::string>();
    if (j.contains("attributes")) c.attributes = j.at("attributes").get<std::vector<std::string>>();
    if (j.contains("direction")) c.direction = parse_direction(j.at("direction").get<std::string>());
    if (j.contains("vehicle_class")) c.vehicle_class = parse_vehicle_class(j.at("vehicle_class").get<std::string>());
    if (j.contains("support")) {
        const auto& s = j.at("support");
        const std::size_t minimum = j.value("support_minimum", std::size_t{2});
        c.threshold = s.is_string() ? SupportThreshold::parse(s.get<std::string>(), minimum)
                      : s.is_number_integer() ? SupportThreshold::absolute(s.get<std::size_t>())
                                              : SupportThreshold::fraction(s.get<double>(), minimum);
    }
    if (j.contains("support_comparison")) {
        const auto cmp = j.at("support_comparison").get<std::string>();
        if (cmp != "at_least" && cmp != "greater_than") {
            throw std::invalid_argument(fmt::format("unknown support_comparison '{}'", cmp));
        }
        const auto mode = cmp == "at_least" ? SupportThreshold::Comparison::AtLeast
                                            : SupportThreshold::Comparison::GreaterThan;
        c.threshold = c.threshold.is_fraction()
                          ? SupportThreshold::fraction(c.threshold.value(), c.threshold.minimum(), mode)
                          : SupportThreshold::absolute(static_cast<std::size_t>(c.threshold.value()), mode);
    }
    if (j.contains("top_fraction")) c.top_fraction = j.at("top_fraction").get<double>();
    if (j.contains("top_k")) c.top_k = j.at("top_k").get<std::size_t>();
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("log_level")) c.log_level = j.at("log_level").get<std::string>();
    if (j.contains("delimiter")) {
        const auto d = j.at("delimiter").get<std::string>();
        if (d.size() != 1) throw std::invalid_argument("delimiter must be a single character");
        c.delimiter = d.front();
    }
    c.validate();
    return c;
}

std::string config_to_json(const RunConfig& c) {
    json j;
    j["input"] = c.input.string();
    j["attributes"] = c.attributes;
    j["direction"] = std::string(to_string(c.direction));
    j["vehicle_class"] = std::string(to_string(c.vehicle_class));
    if (c.threshold.is_fraction()) {
        j["support"] = c.threshold.value();
        j["support_minimum"] = c.threshold.minimum();
    } else {
        j["support"] = static_cast<std::size_t>(c.threshold.value());
    }
    j["support_comparison"] =
        c.threshold.comparison() == SupportThreshold::Comparison::AtLeast ? "at_least" : "greater_than";
    j["top_fraction"] = c.top_fraction;
    j["top_k"] = c.top_k;
    j["output_dir"] = c.output_dir.string();
    j["log_level"] = c.log_level;
    j["delimiter"] = std::string(1, c.delimiter);
    return j.dump(2) + "\n";
}

PipelineSummary run_pipeline(const RunConfig& config) {
    PipelineSummary summary;
    const auto& dir = config.output_dir;
    spdlog::set_level(spdlog::level::from_str(config.log_level));

    auto built = in_stage(Stage::Ingest, [&] {
        config.validate();
        std::filesystem::create_directories(dir);
        open_output(dir / artifact::kConfig) << config_to_json(config);

        std::ifstream in(config.input);
        if (!in) throw IngestError(fmt::format("cannot read input '{}'", config.input.string()));
        RecordSchema schema;
        schema.delimiter = config.delimiter;
        const auto parsed = parse_records(in, schema);
        for (const auto& d : parsed.diagnostics) spdlog::warn("{}:{}: {}", config.input.string(), d.line, d.message);
        summary.rejected_records = parsed.rejected_rows;

        auto result = build_transactions(aggregate_hourly(parsed.records), config.attributes, config.direction,
                                         config.vehicle_class);
        for (const auto& d : result.diagnostics) spdlog::warn("{}", d.message);
        if (result.transactions.empty()) throw IngestError("no complete hourly transactions");
        auto out = open_output(dir / artifact::kTransactions);
        io::write_transactions(out, config.attributes, result.transactions);
        return result;
    });
    const auto& transactions = built.transactions;
    summary.rows = transactions.size();
    summary.excluded_hours = built.excluded_hours;
    spdlog::info("ingest: {} transactions, {} hour(s) excluded", summary.rows, summary.excluded_hours);

    in_stage(Stage::Mine, [&] {
        const auto itemsets = frequent_itemsets(transactions, config.threshold);
        auto out = open_output(dir / artifact::kItemsets);
        io::write_itemsets(out, itemsets);
        spdlog::info("mine: {} frequent itemsets at {} (resolved {})", itemsets.size(), config.threshold.describe(),
                     config.threshold.resolve(transactions.size()));
    });

    const auto compressed = in_stage(Stage::Compress, [&] {
        auto result = compress(transactions, config.threshold);
        auto table_out = open_output(dir / artifact::kPatternTable);
        io::write_pattern_table(table_out, result.table);
        auto log_out = open_output(dir / artifact::kAcceptanceLog);
        io::write_acceptance_log(log_out, result);
        return result;
    });
    summary.candidates = compressed.log.size();
    summary.accepted = static_cast<std::size_t>(
        std::count_if(compressed.log.begin(), compressed.log.end(), [](const auto& r) { return r.accepted; }));
    summary.initial_length = compressed.initial_length;
    summary.final_length = compressed.final_length;

    const auto scored = in_stage(Stage::Score, [&] {
        auto result = score_all(transactions, compressed.table);
        auto out = open_output(dir / artifact::kScores);
        io::write_scores(out, config.attributes, result);
        return result;
    });
    if (!scored.empty()) summary.top = scored.front();

    in_stage(Stage::Report, [&] {
        ReportOptions options{config.top_k, config.top_fraction};
        if (options.top_k > scored.size()) {
            spdlog::warn("top_k {} exceeds {} rows; reporting all rows", options.top_k, scored.size());
            options.top_k = scored.size();
        }
        const auto selected = top_fraction(scored, config.top_fraction);
        auto out = open_output(dir / artifact::kReport);
        write_report(out, scored, selected, hour_frequency(selected), options);
    });
    return summary;
}

std::string format_summary(const PipelineSummary& s) {
    std::ostringstream out;
    out << fmt::format("rows               {}\n", s.rows);
    out << fmt::format("excluded hours     {}\n", s.excluded_hours);
    out << fmt::format("rejected records   {}\n", s.rejected_records);
    out << fmt::format("candidates tried   {}\n", s.candidates);
    out << fmt::format("accepted patterns  {}\n", s.accepted);
    out << fmt::format("L0 (bits)          {:.6f}\n", s.initial_length);
    out << fmt::format("final L (bits)     {:.6f}\n", s.final_length);
    out << fmt::format("ratio L/L0         {:.6f}\n", s.compression_ratio());
    if (s.top) {
        std::vector<std::string> items;
        for (const auto& item : s.top->transaction.items) items.push_back(to_string(item));
        out << fmt::format("top anomaly        {} [{}] {:.6f} bits\n", format_timestamp(s.top->transaction.timestamp),
                           fmt::join(items, " "), s.top->score);
    }
    return out.str();
}

}  // namespace bordermdl
