#include "edmnet/config.hpp"

#include <cmath>
#include <istream>
#include <sstream>

#include "json.hpp"

#include "edmnet/csv.hpp"
#include "edmnet/errors.hpp"

namespace edmnet {

namespace {

double parse_double_value(const std::string& key, const std::string& value) {
    double v = 0.0;
    if (!csv::parse_double(value, v))
        throw ValidationError("config key '" + key + "': cannot parse number '" + value + "'");
    return v;
}

int parse_int_value(const std::string& key, const std::string& value) {
    long v = 0;
    if (!csv::parse_int(value, v))
        throw ValidationError("config key '" + key + "': cannot parse integer '" + value + "'");
    return static_cast<int>(v);
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    for (const auto& field : csv::split(value))
        out.push_back(parse_double_value(key, csv::trim(field)));
    if (out.empty()) throw ValidationError("config key '" + key + "': empty list");
    return out;
}

}  // namespace

void apply_config_key(PipelineConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "price_csv") {
        cfg.price_csv = value;
    } else if (key == "sector_csv") {
        cfg.sector_csv = value;
    } else if (key == "market_csv") {
        cfg.market_csv = value;
    } else if (key == "tail_fraction") {
        cfg.tail_fraction = parse_double_value(key, value);
    } else if (key == "thresholds") {
        cfg.thresholds = parse_double_list(key, value);
    } else if (key == "theta") {
        cfg.theta = parse_double_value(key, value);
    } else if (key == "partition_method") {
        cfg.method = parse_partition_method(value);
    } else if (key == "target_blocks") {
        if (value == "none")
            cfg.target_blocks.reset();
        else
            cfg.target_blocks = parse_int_value(key, value);
    } else if (key == "confidence") {
        cfg.confidence = parse_double_value(key, value);
    } else if (key == "risk_measure") {
        cfg.measure = parse_risk_measure(value);
    } else if (key == "cap") {
        cfg.cap = parse_double_value(key, value);
    } else if (key == "target_return") {
        cfg.target_return = parse_double_value(key, value);
    } else if (key == "window_days") {
        cfg.window_days = parse_int_value(key, value);
    } else if (key == "exact_mis_cutoff") {
        cfg.exact_mis_cutoff = parse_int_value(key, value);
    } else if (key == "return_aggregation") {
        cfg.aggregation = parse_return_aggregation(value);
    } else if (key == "execution") {
        if (value == "serial")
            cfg.execution = Execution::serial;
        else if (value == "parallel")
            cfg.execution = Execution::parallel;
        else
            throw ValidationError("config key 'execution': expected serial or parallel");
    } else if (key == "output_dir") {
        cfg.output_dir = value;
    } else {
        throw ValidationError("unknown config key '" + key + "'");
    }
}

PipelineConfig parse_config(std::istream& in) {
    PipelineConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = csv::trim(line);
        if (text.empty() || text.front() == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected 'key = value'", line_no);
        const std::string key = csv::trim(text.substr(0, eq));
        const std::string value = csv::trim(text.substr(eq + 1));
        if (key.empty()) throw ParseError("empty config key", line_no);
        apply_config_key(cfg, key, value);
    }
    return cfg;
}

void validate_config(const PipelineConfig& cfg) {
    if (!(cfg.tail_fraction > 0.0 && cfg.tail_fraction <= 1.0))
        throw ValidationError("tail_fraction must lie in (0, 1]");
    for (double t : cfg.thresholds)
        if (!std::isfinite(t)) throw ValidationError("thresholds must be finite");
    if (!std::isfinite(cfg.theta)) throw ValidationError("theta must be finite");
    if (cfg.target_blocks && *cfg.target_blocks < 1)
        throw ValidationError("target_blocks must be >= 1");
    if (!(cfg.confidence > 0.0 && cfg.confidence < 1.0))
        throw ValidationError("confidence must lie in (0, 1)");
    if (!(cfg.cap > 0.0 && cfg.cap <= 1.0))
        throw ValidationError("cap must lie in (0, 1]");
    if (!std::isfinite(cfg.target_return))
        throw ValidationError("target_return must be finite");
    if (cfg.window_days < 1) throw ValidationError("window_days must be >= 1");
    if (cfg.exact_mis_cutoff < 1 || cfg.exact_mis_cutoff > 30)
        throw ValidationError("exact_mis_cutoff must lie in [1, 30]");
    if (cfg.output_dir.empty()) throw ValidationError("output_dir must not be empty");
}

std::string config_json(const PipelineConfig& cfg) {
    nlohmann::json j;
    j["price_csv"] = cfg.price_csv;
    j["sector_csv"] = cfg.sector_csv;
    j["market_csv"] = cfg.market_csv;
    j["tail_fraction"] = cfg.tail_fraction;
    j["thresholds"] = cfg.thresholds;
    j["theta"] = cfg.theta;
    j["partition_method"] = to_string(cfg.method);
    if (cfg.target_blocks)
        j["target_blocks"] = *cfg.target_blocks;
    else
        j["target_blocks"] = nullptr;
    j["confidence"] = cfg.confidence;
    j["risk_measure"] = to_string(cfg.measure);
    j["cap"] = cfg.cap;
    j["target_return"] = cfg.target_return;
    j["window_days"] = cfg.window_days;
    j["exact_mis_cutoff"] = cfg.exact_mis_cutoff;
    j["return_aggregation"] = to_string(cfg.aggregation);
    j["execution"] = cfg.execution == Execution::serial ? "serial" : "parallel";
    j["output_dir"] = cfg.output_dir;
    return j.dump(2) + "\n";
}

}  // namespace edmnet
