#pragma once

// End-to-end run: ingest -> mine -> compress -> score -> report.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bordermdl/anomaly.hpp"
#include "bordermdl/ingest.hpp"
#include "bordermdl/mining.hpp"

namespace bordermdl {

enum class Stage { Ingest, Mine, Compress, Score, Report };

std::string_view to_string(Stage s) noexcept;

/// 10, 20, 30, 40, 50 for ingest .. report.
int exit_code(Stage s) noexcept;

class StageError : public std::runtime_error {
public:
    StageError(Stage stage, const std::string& message);
    Stage stage() const noexcept { return stage_; }

private:
    Stage stage_;
};

struct RunConfig {
    std::filesystem::path input;
    std::vector<std::string> attributes = {"PB", "LQ", "RB"};
    Direction direction = Direction::ToCanada;
    VehicleClass vehicle_class = VehicleClass::Car;
    SupportThreshold threshold = SupportThreshold::default_threshold();
    double top_fraction = 0.05;
    std::size_t top_k = 3;
    std::filesystem::path output_dir = "out";
    std::string log_level = "info";
    char delimiter = ',';

    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

/// Reads a JSON config; absent keys keep their defaults.
RunConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const RunConfig& config);

struct PipelineSummary {
    std::size_t rows = 0;
    std::size_t excluded_hours = 0;
    std::size_t rejected_records = 0;
    std::size_t candidates = 0;
    std::size_t accepted = 0;
    double initial_length = 0.0;
    double final_length = 0.0;
    std::optional<ScoredTransaction> top;

    double compression_ratio() const { return initial_length > 0.0 ? final_length / initial_length : 1.0; }
};

/// Artifact names written into the output directory.
namespace artifact {
inline constexpr const char* kConfig = "config.json";
inline constexpr const char* kTransactions = "transactions.csv";
inline constexpr const char* kItemsets = "itemsets.txt";
inline constexpr const char* kPatternTable = "pattern_table.txt";
inline constexpr const char* kAcceptanceLog = "acceptance_log.txt";
inline constexpr const char* kScores = "scores.csv";
inline constexpr const char* kReport = "report.txt";
}  // namespace artifact

/// Runs every stage and writes all artifacts. Failures surface as
/// StageError tagged with the failing stage.
PipelineSummary run_pipeline(const RunConfig& config);

std::string format_summary(const PipelineSummary& summary);

}  // namespace bordermdl
