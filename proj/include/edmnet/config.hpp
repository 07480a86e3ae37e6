#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "edmnet/allocate.hpp"
#include "edmnet/execution.hpp"
#include "edmnet/partition.hpp"
#include "edmnet/risk.hpp"

namespace edmnet {

// Every knob of the pipeline, with its default. File values and CLI
// flags both funnel through apply_config_key.
struct PipelineConfig {
    std::string price_csv;
    std::string sector_csv;
    std::string market_csv;
    double tail_fraction = 0.2;
    std::vector<double> thresholds{0.05, 0.10, 0.15, 0.20, 0.25};
    double theta = 0.15;
    PartitionMethod method = PartitionMethod::sector;
    std::optional<int> target_blocks;  // community method: stop at this many blocks
    double confidence = 0.95;
    RiskMeasure measure = RiskMeasure::var;
    double cap = 0.3;
    double target_return = 0.0115;
    int window_days = 10;
    int exact_mis_cutoff = 25;
    ReturnAggregation aggregation = ReturnAggregation::cumulative;
    Execution execution = Execution::parallel;
    std::string output_dir = "out";
};

// `key = value` lines; blank lines and lines starting with '#' are
// ignored. Unknown keys and malformed values throw ValidationError.
PipelineConfig parse_config(std::istream& in);

// Applies one key/value pair (shared by the file parser and CLI flags).
void apply_config_key(PipelineConfig& cfg, const std::string& key, const std::string& value);

// Range checks; throws ValidationError with the offending key.
void validate_config(const PipelineConfig& cfg);

// JSON echo of the effective configuration (for the run manifest).
std::string config_json(const PipelineConfig& cfg);

}  // namespace edmnet
