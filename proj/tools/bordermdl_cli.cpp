// bordermdl: MDL pattern-table anomaly ranking for multi-site wait times.

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "bordermdl/anomaly.hpp"
#include "bordermdl/codec.hpp"
#include "bordermdl/ingest.hpp"
#include "bordermdl/io.hpp"
#include "bordermdl/mining.hpp"
#include "bordermdl/pipeline.hpp"
#include "bordermdl/synth.hpp"

using namespace bordermdl;

namespace {

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    return in;
}

/// Runs `fn` with a stream for `path`, "-" meaning stdout.
void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    if (path == "-") {
        fn(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    fn(out);
}

int guarded(Stage stage, const std::function<void()>& fn) {
    try {
        fn();
        return 0;
    } catch (const std::exception& e) {
        spdlog::error("{} stage: {}", to_string(stage), e.what());
        return exit_code(stage);
    }
}

struct ThresholdOptions {
    std::string support = "0.05";
    std::size_t minimum = 2;
    bool greater_than = false;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--support", support, "Absolute count (e.g. 12) or fraction of rows (e.g. 0.05)")
            ->capture_default_str();
        cmd->add_option("--support-minimum", minimum, "Floor applied to fractional thresholds")->capture_default_str();
        cmd->add_flag("--strict-support", greater_than, "Require support > threshold instead of >=");
    }

    SupportThreshold resolve() const {
        const auto base = SupportThreshold::parse(support, minimum);
        if (!greater_than) return base;
        constexpr auto gt = SupportThreshold::Comparison::GreaterThan;
        return base.is_fraction() ? SupportThreshold::fraction(base.value(), base.minimum(), gt)
                                  : SupportThreshold::absolute(static_cast<std::size_t>(base.value()), gt);
    }
};

io::TransactionFile load_transactions(const std::string& path) {
    auto in = open_in(path);
    auto file = io::read_transactions(in);
    if (file.transactions.empty()) throw std::runtime_error("transaction file '" + path + "' has no rows");
    return file;
}

}  // namespace

int main(int argc, char** argv) {
    spdlog::set_default_logger(spdlog::stderr_color_st("bordermdl"));
    spdlog::set_pattern("%l: %v");

    CLI::App app{"Dictionary-compression anomaly ranking for multi-site border wait times"};
    app.require_subcommand(1);
    std::string log_level = "info";
    app.add_option("--log-level", log_level, "trace, debug, info, warn, error, off")->capture_default_str();

    int status = 0;

    // discretize
    auto* discretize_cmd = app.add_subcommand("discretize", "Raw records -> hourly categorical transactions");
    std::string d_input, d_output = "-", d_attrs = "PB,LQ,RB", d_dir = "ToCanada", d_class = "Car";
    char d_delim = ',';
    discretize_cmd->add_option("--input", d_input, "Raw wait-time CSV")->required();
    discretize_cmd->add_option("--output", d_output, "Transaction file ('-' for stdout)")->capture_default_str();
    discretize_cmd->add_option("--attributes", d_attrs, "Ordered site list")->capture_default_str();
    discretize_cmd->add_option("--direction", d_dir, "ToUS or ToCanada")->capture_default_str();
    discretize_cmd->add_option("--vehicle-class", d_class, "Car or Truck")->capture_default_str();
    discretize_cmd->add_option("--delimiter", d_delim, "Input field delimiter")->capture_default_str();
    discretize_cmd->callback([&] {
        status = guarded(Stage::Ingest, [&] {
            std::vector<std::string> attributes = CLI::detail::split(d_attrs, ',');
            auto in = open_in(d_input);
            RecordSchema schema;
            schema.delimiter = d_delim;
            const auto parsed = parse_records(in, schema);
            for (const auto& d : parsed.diagnostics) spdlog::warn("{}:{}: {}", d_input, d.line, d.message);
            const auto built = build_transactions(aggregate_hourly(parsed.records), attributes,
                                                  parse_direction(d_dir), parse_vehicle_class(d_class));
            for (const auto& d : built.diagnostics) spdlog::warn("{}", d.message);
            spdlog::info("{} transactions, {} hour(s) excluded, {} row(s) rejected", built.transactions.size(),
                         built.excluded_hours, parsed.rejected_rows);
            with_output(d_output, [&](std::ostream& out) { io::write_transactions(out, attributes, built.transactions); });
        });
    });

    // mine
    auto* mine_cmd = app.add_subcommand("mine", "Apriori frequent itemsets (size >= 2)");
    std::string m_input, m_output = "-";
    ThresholdOptions m_threshold;
    mine_cmd->add_option("--transactions", m_input, "Transaction file")->required();
    mine_cmd->add_option("--output", m_output, "Itemset file ('-' for stdout)")->capture_default_str();
    m_threshold.add_to(mine_cmd);
    mine_cmd->callback([&] {
        status = guarded(Stage::Mine, [&] {
            const auto file = load_transactions(m_input);
            const auto itemsets = frequent_itemsets(file.transactions, m_threshold.resolve());
            with_output(m_output, [&](std::ostream& out) { io::write_itemsets(out, itemsets); });
        });
    });

    // compress
    auto* compress_cmd = app.add_subcommand("compress", "Greedy MDL pattern table");
    std::string c_input, c_table = "-", c_log;
    ThresholdOptions c_threshold;
    compress_cmd->add_option("--transactions", c_input, "Transaction file")->required();
    compress_cmd->add_option("--table", c_table, "Pattern table output ('-' for stdout)")->capture_default_str();
    compress_cmd->add_option("--log", c_log, "Acceptance log output");
    c_threshold.add_to(compress_cmd);
    compress_cmd->callback([&] {
        status = guarded(Stage::Compress, [&] {
            const auto file = load_transactions(c_input);
            const auto result = compress(file.transactions, c_threshold.resolve());
            with_output(c_table, [&](std::ostream& out) { io::write_pattern_table(out, result.table); });
            if (!c_log.empty()) with_output(c_log, [&](std::ostream& out) { io::write_acceptance_log(out, result); });
            spdlog::info("L0 {:.6f} bits, final L {:.6f} bits", result.initial_length, result.final_length);
        });
    });

    // score
    auto* score_cmd = app.add_subcommand("score", "Rank transactions by code length");
    std::string s_input, s_table, s_output = "-";
    score_cmd->add_option("--transactions", s_input, "Transaction file")->required();
    score_cmd->add_option("--table", s_table, "Pattern table file")->required();
    score_cmd->add_option("--output", s_output, "Score file ('-' for stdout)")->capture_default_str();
    score_cmd->callback([&] {
        status = guarded(Stage::Score, [&] {
            const auto file = load_transactions(s_input);
            auto table_in = open_in(s_table);
            const auto table = io::read_pattern_table(table_in);
            const auto scored = score_all(file.transactions, table);
            with_output(s_output, [&](std::ostream& out) { io::write_scores(out, file.attributes, scored); });
        });
    });

    // report
    auto* report_cmd = app.add_subcommand("report", "Top-k, top-fraction and hour-of-day report");
    std::string r_input, r_output = "-";
    ReportOptions r_options;
    report_cmd->add_option("--scores", r_input, "Score file")->required();
    report_cmd->add_option("--output", r_output, "Report file ('-' for stdout)")->capture_default_str();
    report_cmd->add_option("--top-k", r_options.top_k, "Rows in the top-k table")->capture_default_str();
    report_cmd->add_option("--top-fraction", r_options.top_fraction, "Fraction of rows treated as abnormal")
        ->capture_default_str();
    report_cmd->callback([&] {
        status = guarded(Stage::Report, [&] {
            auto in = open_in(r_input);
            const auto scored = io::read_scores(in);
            const auto selected = top_fraction(scored, r_options.top_fraction);
            with_output(r_output, [&](std::ostream& out) {
                write_report(out, scored, selected, hour_frequency(selected), r_options);
            });
        });
    });

    // run
    auto* run_cmd = app.add_subcommand("run", "Full pipeline from raw records to report");
    std::string config_path;
    std::optional<std::string> o_input, o_attrs, o_dir, o_class, o_support, o_output;
    std::optional<double> o_fraction;
    std::optional<std::size_t> o_k;
    run_cmd->add_option("--config", config_path, "JSON run configuration");
    run_cmd->add_option("--input", o_input, "Raw wait-time CSV");
    run_cmd->add_option("--attributes", o_attrs, "Ordered site list, comma separated");
    run_cmd->add_option("--direction", o_dir, "ToUS or ToCanada");
    run_cmd->add_option("--vehicle-class", o_class, "Car or Truck");
    run_cmd->add_option("--support", o_support, "Absolute count or fraction");
    run_cmd->add_option("--top-fraction", o_fraction, "Fraction of rows treated as abnormal");
    run_cmd->add_option("--top-k", o_k, "Rows in the top-k table");
    run_cmd->add_option("--output-dir", o_output, "Artifact directory");
    run_cmd->callback([&] {
        RunConfig config;
        try {
            if (!config_path.empty()) config = load_config(config_path);
            if (o_input) config.input = *o_input;
            if (o_attrs) config.attributes = CLI::detail::split(*o_attrs, ',');
            if (o_dir) config.direction = parse_direction(*o_dir);
            if (o_class) config.vehicle_class = parse_vehicle_class(*o_class);
            if (o_support) config.threshold = SupportThreshold::parse(*o_support, 2);
            if (o_fraction) config.top_fraction = *o_fraction;
            if (o_k) config.top_k = *o_k;
            if (o_output) config.output_dir = *o_output;
            if (app.get_option("--log-level")->count() > 0) config.log_level = log_level;
            config.validate();
            if (config.input.empty()) throw std::invalid_argument("no input file configured");
        } catch (const std::exception& e) {
            spdlog::error("configuration: {}", e.what());
            status = exit_code(Stage::Ingest);
            return;
        }
        try {
            const auto summary = run_pipeline(config);
            std::cout << format_summary(summary);
        } catch (const StageError& e) {
            spdlog::error("{}", e.what());
            status = exit_code(e.stage());
        }
    });

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "Synthetic wait-time records with planted anomalies");
    SynthConfig synth;
    std::string y_output = "-", y_manifest, y_dir = "ToCanada", y_class = "Car";
    synth_cmd->add_option("--seed", synth.seed, "Random seed")->capture_default_str();
    synth_cmd->add_option("--days", synth.days, "Number of days")->capture_default_str();
    synth_cmd->add_option("--start-date", synth.start_date, "First day, YYYY-MM-DD")->capture_default_str();
    synth_cmd->add_option("--dominance", synth.dominance, "Probability a site shows its dominant category")
        ->capture_default_str();
    synth_cmd->add_option("--injections", synth.injections, "Number of planted anomalous hours")->capture_default_str();
    synth_cmd->add_option("--direction", y_dir, "ToUS or ToCanada")->capture_default_str();
    synth_cmd->add_option("--vehicle-class", y_class, "Car or Truck")->capture_default_str();
    synth_cmd->add_option("--output", y_output, "Record CSV ('-' for stdout)")->capture_default_str();
    synth_cmd->add_option("--manifest", y_manifest, "Injected-hour manifest");
    synth_cmd->callback([&] {
        try {
            synth.direction = parse_direction(y_dir);
            synth.vehicle_class = parse_vehicle_class(y_class);
            const auto data = generate_synthetic(synth);
            with_output(y_output, [&](std::ostream& out) { write_records(out, data.records); });
            if (!y_manifest.empty()) with_output(y_manifest, [&](std::ostream& out) { write_manifest(out, data.injected); });
        } catch (const std::exception& e) {
            spdlog::error("synth: {}", e.what());
            status = 1;
        }
    });

    app.parse_complete_callback([&] { spdlog::set_level(spdlog::level::from_str(log_level)); });

    CLI11_PARSE(app, argc, argv);
    return status;
}
