#include "edmnet/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "json.hpp"

#include "edmnet/csv.hpp"
#include "edmnet/errors.hpp"

namespace edmnet::io {

namespace {

std::string printf_double(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

// Shortest of %.15g/%.16g/%.17g that parses back to the same double.
std::string round_trip(double v) {
    for (int precision = 15; precision <= 17; ++precision) {
        char spec[8];
        std::snprintf(spec, sizeof spec, "%%.%dg", precision);
        std::string text = printf_double(spec, v);
        if (std::stod(text) == v) return text;
    }
    return printf_double("%.17g", v);  // unreachable: 17 digits round-trip
}

std::string fixed6(double v) { return printf_double("%.6f", v); }

std::string compact(double v) { return printf_double("%g", v); }

void expect_header(const std::string& line, const std::string& expected) {
    if (csv::trim(line) != expected)
        throw ParseError("expected header '" + expected + "'", 1);
}

double parse_double_field(const std::string& field, std::size_t line) {
    double v = 0.0;
    if (!csv::parse_double(field, v))
        throw ParseError("cannot parse number '" + field + "'", line);
    return v;
}

long parse_int_field(const std::string& field, std::size_t line) {
    long v = 0;
    if (!csv::parse_int(field, v))
        throw ParseError("cannot parse integer '" + field + "'", line);
    return v;
}

void require_sorted_tickers(const std::vector<std::string>& tickers, const char* what) {
    for (std::size_t i = 1; i < tickers.size(); ++i)
        if (tickers[i - 1] >= tickers[i])
            throw ValidationError(std::string(what) +
                                  ": ticker columns must be sorted and distinct");
}

}  // namespace

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    return in;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("error while reading " + path.string());
    return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) throw IoError("error while writing " + path.string());
}

void write_returns_csv(std::ostream& out, const ReturnMatrix& returns) {
    out << "date";
    for (const auto& t : returns.tickers) out << ',' << t;
    out << '\n';
    for (std::size_t r = 0; r < returns.returns.size(); ++r) {
        out << returns.dates[r];
        for (double v : returns.returns[r]) out << ',' << round_trip(v);
        out << '\n';
    }
}

ReturnMatrix read_returns_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty returns file", 1);
    auto header = csv::split(line);
    if (header.size() < 2 || header[0] != "date")
        throw ParseError("expected header 'date,<ticker...>'", 1);

    ReturnMatrix m;
    m.tickers.assign(header.begin() + 1, header.end());
    require_sorted_tickers(m.tickers, "returns");

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto fields = csv::split(line);
        if (fields.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) + " fields", line_no);
        if (!csv::is_iso_date(fields[0]))
            throw ParseError("bad date '" + fields[0] + "'", line_no);
        if (!m.dates.empty() && fields[0] <= m.dates.back())
            throw ValidationError("returns: dates must be strictly ascending (line " +
                                  std::to_string(line_no) + ")");
        std::vector<double> row;
        row.reserve(m.tickers.size());
        for (std::size_t j = 1; j < fields.size(); ++j)
            row.push_back(parse_double_field(fields[j], line_no));
        m.dates.push_back(fields[0]);
        m.returns.push_back(std::move(row));
    }
    if (m.returns.empty()) throw ValidationError("returns: no data rows");
    return m;
}

void write_edm_csv(std::ostream& out, const EdmMatrix& matrix) {
    out << "ticker";
    for (const auto& t : matrix.tickers) out << ',' << t;
    out << '\n';
    for (std::size_t i = 0; i < matrix.tickers.size(); ++i) {
        out << matrix.tickers[i];
        for (double v : matrix.values[i]) out << ',' << fixed6(v);
        out << '\n';
    }
}

EdmMatrix read_edm_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty matrix file", 1);
    auto header = csv::split(line);
    if (header.size() < 3 || header[0] != "ticker")
        throw ParseError("expected header 'ticker,<ticker...>' with at least two tickers", 1);

    EdmMatrix m;
    m.tickers.assign(header.begin() + 1, header.end());
    require_sorted_tickers(m.tickers, "matrix");
    m.tail_fraction = 0.0;  // not stored in the file

    const std::size_t n = m.tickers.size();
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto fields = csv::split(line);
        if (fields.size() != n + 1)
            throw ParseError("expected " + std::to_string(n + 1) + " fields", line_no);
        const std::size_t row = m.values.size();
        if (row >= n) throw ParseError("more rows than header tickers", line_no);
        if (fields[0] != m.tickers[row])
            throw ValidationError("matrix row label '" + fields[0] +
                                  "' does not match header order (line " +
                                  std::to_string(line_no) + ")");
        std::vector<double> values;
        values.reserve(n);
        for (std::size_t j = 1; j < fields.size(); ++j) {
            const double v = parse_double_field(fields[j], line_no);
            if (std::abs(v) > 0.5 + 1e-9)
                throw ValidationError("matrix value " + fields[j] +
                                      " outside [-0.5, 0.5] (line " +
                                      std::to_string(line_no) + ")");
            values.push_back(v);
        }
        m.values.push_back(std::move(values));
    }
    if (m.values.size() != n)
        throw ValidationError("matrix has " + std::to_string(m.values.size()) +
                              " rows for " + std::to_string(n) + " tickers");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(m.values[i][j] - m.values[j][i]) > 1e-9)
                throw ValidationError("matrix is not symmetric at (" + m.tickers[i] +
                                      ", " + m.tickers[j] + ")");
    return m;
}

void write_edges_csv(std::ostream& out, const DependenceGraph& g, const EdmMatrix& matrix) {
    out << "ticker_a,ticker_b,edm_value\n";
    for (const auto& [a, b] : g.edges)
        out << g.tickers[a] << ',' << g.tickers[b] << ','
            << fixed6(matrix.values[a][b]) << '\n';
}

std::string stats_json(const NetworkStats& stats, const std::optional<PowerLawFit>& fit,
                       double threshold) {
    nlohmann::json j;
    j["threshold"] = threshold;
    j["n_vertices"] = stats.n_vertices;
    j["n_edges"] = stats.n_edges;
    j["isolated_count"] = stats.isolated_count;
    j["average_degree"] = stats.average_degree;
    j["diameter"] = stats.diameter;
    j["density"] = stats.density;
    j["average_clustering"] = stats.average_clustering;
    j["average_path_length"] = stats.average_path_length;
    j["degrees"] = stats.degrees;
    j["clustering"] = stats.clustering;
    if (fit) {
        j["power_law"] = {{"alpha_hat", fit->alpha_hat},
                          {"xmin", fit->xmin},
                          {"n_tail", fit->n_tail}};
    } else {
        j["power_law"] = nullptr;
    }
    return j.dump(2) + "\n";
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "threshold,isolated_vertices,average_degree,diameter,density,"
           "average_clustering,average_path_length\n";
    for (const auto& row : rows) {
        out << compact(row.threshold) << ',' << row.stats.isolated_count << ','
            << fixed6(row.stats.average_degree) << ',' << row.stats.diameter << ','
            << fixed6(row.stats.density) << ',' << fixed6(row.stats.average_clustering)
            << ',' << fixed6(row.stats.average_path_length) << '\n';
    }
}

void write_ccdf_csv(std::ostream& out, const DegreeCcdf& ccdf) {
    out << "degree,ccdf\n";
    for (const auto& [degree, fraction] : ccdf.points)
        out << degree << ',' << round_trip(fraction) << '\n';
}

void write_communities_csv(std::ostream& out, const DependenceGraph& g, const Partition& p) {
    out << "ticker,block_id,method\n";
    const std::string method = to_string(p.method);
    for (int v = 0; v < g.n_vertices(); ++v)
        out << g.tickers[v] << ',' << p.block_of[v] << ',' << method << '\n';
}

Partition read_communities_csv(std::istream& in, const DependenceGraph& g) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty communities file", 1);
    expect_header(line, "ticker,block_id,method");

    Partition p;
    p.block_of.assign(g.tickers.size(), -1);
    std::string method_name;
    std::size_t line_no = 1;
    std::size_t seen = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto fields = csv::split(line);
        if (fields.size() != 3) throw ParseError("expected 3 fields", line_no);
        const int v = g.vertex_of(fields[0]);
        const long block = parse_int_field(fields[1], line_no);
        if (block < 0) throw ValidationError("negative block id (line " +
                                             std::to_string(line_no) + ")");
        if (p.block_of[v] != -1)
            throw ValidationError("duplicate ticker " + fields[0] + " (line " +
                                  std::to_string(line_no) + ")");
        if (method_name.empty())
            method_name = fields[2];
        else if (method_name != fields[2])
            throw ValidationError("mixed partition methods in communities file");
        p.block_of[v] = static_cast<int>(block);
        ++seen;
    }
    if (seen != g.tickers.size())
        throw ValidationError("communities file covers " + std::to_string(seen) +
                              " of " + std::to_string(g.tickers.size()) + " tickers");

    const int n_blocks = *std::max_element(p.block_of.begin(), p.block_of.end()) + 1;
    p.blocks.assign(n_blocks, {});
    for (std::size_t v = 0; v < p.block_of.size(); ++v)
        p.blocks[p.block_of[v]].push_back(static_cast<int>(v));
    for (const auto& block : p.blocks)
        if (block.empty()) throw ValidationError("communities file skips a block id");
    p.method = parse_partition_method(method_name);
    return p;
}

void write_dendrogram_csv(std::ostream& out, const Dendrogram& d, const DependenceGraph& g) {
    out << "step,edge_a,edge_b,betweenness,components\n";
    for (const auto& e : d.events)
        out << e.step << ',' << g.tickers[e.edge.first] << ',' << g.tickers[e.edge.second]
            << ',' << round_trip(e.betweenness) << ',' << e.components_after << '\n';
}

void write_mis_csv(std::ostream& out, const std::vector<IndependentSet>& sets) {
    out << "block_id,ticker,exact_flag\n";
    for (const auto& set : sets)
        for (const auto& t : set.tickers)
            out << set.source_block << ',' << t << ',' << (set.exact ? 1 : 0) << '\n';
}

std::vector<IndependentSet> read_mis_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty independent-set file", 1);
    expect_header(line, "block_id,ticker,exact_flag");

    std::map<int, IndependentSet> by_block;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto fields = csv::split(line);
        if (fields.size() != 3) throw ParseError("expected 3 fields", line_no);
        const long block = parse_int_field(fields[0], line_no);
        const long exact = parse_int_field(fields[2], line_no);
        if (exact != 0 && exact != 1)
            throw ValidationError("exact_flag must be 0 or 1 (line " +
                                  std::to_string(line_no) + ")");
        auto& set = by_block[static_cast<int>(block)];
        if (set.tickers.empty()) {
            set.source_block = static_cast<int>(block);
            set.exact = exact == 1;
        } else if (set.exact != (exact == 1)) {
            throw ValidationError("inconsistent exact_flag in block " +
                                  std::to_string(block));
        }
        set.tickers.push_back(fields[1]);
    }
    std::vector<IndependentSet> sets;
    sets.reserve(by_block.size());
    for (auto& [block, set] : by_block) {
        std::sort(set.tickers.begin(), set.tickers.end());
        if (std::adjacent_find(set.tickers.begin(), set.tickers.end()) != set.tickers.end())
            throw ValidationError("duplicate ticker in block " + std::to_string(block));
        sets.push_back(std::move(set));
    }
    return sets;
}

double RiskTable::risk(const std::string& ticker, RiskMeasure measure) const {
    const auto it = std::find(tickers.begin(), tickers.end(), ticker);
    if (it == tickers.end()) throw ValidationError("risk table has no ticker " + ticker);
    const auto i = static_cast<std::size_t>(it - tickers.begin());
    return measure == RiskMeasure::var ? var[i] : es[i];
}

void write_risk_csv(std::ostream& out, const RiskTable& table) {
    out << "ticker,var,es,confidence\n";
    for (std::size_t i = 0; i < table.tickers.size(); ++i)
        out << table.tickers[i] << ',' << round_trip(table.var[i]) << ','
            << round_trip(table.es[i]) << ',' << compact(table.confidence) << '\n';
}

RiskTable read_risk_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty risk file", 1);
    expect_header(line, "ticker,var,es,confidence");

    RiskTable table;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto fields = csv::split(line);
        if (fields.size() != 4) throw ParseError("expected 4 fields", line_no);
        table.tickers.push_back(fields[0]);
        table.var.push_back(parse_double_field(fields[1], line_no));
        table.es.push_back(parse_double_field(fields[2], line_no));
        const double confidence = parse_double_field(fields[3], line_no);
        if (table.tickers.size() == 1)
            table.confidence = confidence;
        else if (confidence != table.confidence)
            throw ValidationError("mixed confidence levels in risk file");
    }
    if (table.tickers.empty()) throw ValidationError("risk file has no rows");
    return table;
}

std::string portfolio_json(const Portfolio& p) {
    nlohmann::json j;
    j["tickers"] = p.tickers;
    j["weights"] = p.weights;
    j["objective"] = p.objective;
    j["achieved_return"] = p.achieved_return;
    j["measure"] = to_string(p.measure);
    j["confidence"] = p.confidence;
    j["cap"] = p.cap;
    j["target_return"] = p.target_return;
    j["return_aggregation"] = to_string(p.aggregation);
    return j.dump(2) + "\n";
}

Portfolio read_portfolio_json(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("bad portfolio JSON: ") + e.what());
    }
    try {
        Portfolio p;
        p.tickers = j.at("tickers").get<std::vector<std::string>>();
        p.weights = j.at("weights").get<std::vector<double>>();
        p.objective = j.at("objective").get<double>();
        p.achieved_return = j.at("achieved_return").get<double>();
        p.measure = parse_risk_measure(j.at("measure").get<std::string>());
        p.confidence = j.at("confidence").get<double>();
        p.cap = j.at("cap").get<double>();
        p.target_return = j.at("target_return").get<double>();
        p.aggregation = parse_return_aggregation(j.at("return_aggregation").get<std::string>());
        if (p.tickers.size() != p.weights.size())
            throw ValidationError("portfolio JSON: ticker/weight count mismatch");
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad portfolio JSON: ") + e.what());
    }
}

void write_backtest_csv(std::ostream& out, const BacktestReport& report) {
    out << "window_start,window_end,series_name,return,risk,measure\n";
    const std::string measure = to_string(report.measure);
    for (const auto& series : report.series)
        for (std::size_t w = 0; w < report.windows.size(); ++w)
            out << report.windows[w].start_date << ',' << report.windows[w].end_date << ','
                << series.name << ',' << round_trip(series.returns[w]) << ','
                << round_trip(series.risks[w]) << ',' << measure << '\n';
}

}  // namespace edmnet::io
