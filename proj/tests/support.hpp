#pragma once

// Shared helpers for the test suite: a pinned deterministic RNG, ISO date
// generation, scratch directories, and small builders for the domain types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <utility>
#include <vector>

#include "edmnet/market_data.hpp"
#include "edmnet/network.hpp"

namespace testsupport {

// mt19937_64 has a pinned output sequence, but the standard distributions
// do not, so doubles are derived from the raw bits directly. This keeps
// every "seeded" expectation reproducible across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Integer in [0, n).
    std::uint64_t index(std::uint64_t n) { return engine_() % n; }

    bool bernoulli(double p) { return uniform() < p; }

    // Box-Muller; avoids std::normal_distribution whose stream is
    // implementation-defined.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = 0.0;
        do {
            u = uniform();
        } while (u <= 0.0);
        constexpr double kTwoPi = 6.283185307179586476925286766559;
        const double v = uniform();
        const double r = std::sqrt(-2.0 * std::log(u));
        spare_ = r * std::sin(kTwoPi * v);
        have_spare_ = true;
        return r * std::cos(kTwoPi * v);
    }

    // Pareto with survival P(X > x) = (xmin/x)^alpha, x >= xmin > 0.
    double pareto(double alpha, double xmin = 1.0) {
        double u = 0.0;
        do {
            u = uniform();
        } while (u <= 0.0);
        return xmin * std::pow(u, -1.0 / alpha);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Unique scratch directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("edmnet-test-" + tag + "-" + std::to_string(::getpid()) + "-" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }

    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }

    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline bool leap_year(int y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

inline int days_in_month(int y, int m) {
    static const int lens[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && leap_year(y)) return 29;
    return lens[m - 1];
}

// n consecutive calendar dates starting 2021-01-04, formatted ISO-8601.
inline std::vector<std::string> iso_dates(std::size_t n) {
    std::vector<std::string> out;
    out.reserve(n);
    int y = 2021, m = 1, d = 4;
    for (std::size_t i = 0; i < n; ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%04u-%02u-%02u",
                      static_cast<unsigned>(y) % 10000u,
                      static_cast<unsigned>(m) % 100u,
                      static_cast<unsigned>(d) % 100u);
        out.emplace_back(buf);
        if (++d > days_in_month(y, m)) {
            d = 1;
            if (++m > 12) {
                m = 1;
                ++y;
            }
        }
    }
    return out;
}

// Return matrix straight from per-ticker columns; tickers must be sorted.
inline edmnet::ReturnMatrix make_returns(std::vector<std::string> tickers,
                                         const std::vector<std::vector<double>>& columns) {
    edmnet::ReturnMatrix m;
    m.tickers = std::move(tickers);
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    m.dates = iso_dates(rows + 1);
    m.dates.erase(m.dates.begin());
    m.returns.assign(rows, std::vector<double>(columns.size(), 0.0));
    for (std::size_t j = 0; j < columns.size(); ++j)
        for (std::size_t t = 0; t < rows; ++t) m.returns[t][j] = columns[j][t];
    return m;
}

// Graph from an explicit edge list over named vertices; tickers sorted.
inline edmnet::DependenceGraph make_graph(
    std::vector<std::string> tickers,
    const std::vector<std::pair<int, int>>& edges, double threshold = 0.15) {
    edmnet::DependenceGraph g;
    g.tickers = std::move(tickers);
    g.threshold = threshold;
    for (auto [a, b] : edges)
        g.edges.emplace_back(std::min(a, b), std::max(a, b));
    g.rebuild_adjacency();
    return g;
}

// n generic sorted ticker names: S00, S01, ...
inline std::vector<std::string> tickers(int n) {
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "S%02u", static_cast<unsigned>(i) % 100u);
        out.emplace_back(buf);
    }
    return out;
}

// Seeded Erdos-Renyi graph G(n, p) over generic tickers.
inline edmnet::DependenceGraph random_graph(int n, double p, Rng& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.bernoulli(p)) edges.emplace_back(i, j);
    return make_graph(tickers(n), edges);
}

// Long-format price CSV (`date,ticker,adjusted_close`) for a price panel.
inline std::string price_csv(const std::vector<std::string>& tickers,
                             const std::vector<std::string>& dates,
                             const std::vector<std::vector<double>>& prices) {
    std::ostringstream out;
    out << "date,ticker,adjusted_close\n";
    out.precision(17);
    for (std::size_t t = 0; t < dates.size(); ++t)
        for (std::size_t j = 0; j < tickers.size(); ++j)
            out << dates[t] << ',' << tickers[j] << ',' << prices[t][j] << '\n';
    return out.str();
}

// Synthetic heavy-tailed price panel with a sector-factor structure,
// plus matching sector labels and a market index. Used by the pipeline
// and acceptance tests.
struct SyntheticPanel {
    std::vector<std::string> tickers;
    std::vector<std::string> dates;
    std::vector<std::vector<double>> prices;  // [date][ticker]
    std::vector<std::string> sectors;         // per ticker
    std::vector<double> index_closes;         // per date

    std::string prices_csv() const { return price_csv(tickers, dates, prices); }

    std::string sectors_csv() const {
        std::ostringstream out;
        out << "ticker,sector\n";
        for (std::size_t j = 0; j < tickers.size(); ++j)
            out << tickers[j] << ',' << sectors[j] << '\n';
        return out.str();
    }

    std::string market_csv() const {
        std::ostringstream out;
        out << "date,adjusted_close\n";
        out.precision(17);
        for (std::size_t t = 0; t < dates.size(); ++t)
            out << dates[t] << ',' << index_closes[t] << '\n';
        return out.str();
    }
};

// `n_tickers` names spread over `n_sectors` sectors; returns are a mix of
// a market factor, a sector factor, and idiosyncratic noise, all with a
// heavy-tailed (t-like) ingredient so tail estimation has signal.
inline SyntheticPanel synthetic_panel(int n_tickers, int n_dates, int n_sectors,
                                      std::uint64_t seed) {
    Rng rng(seed);
    SyntheticPanel panel;
    panel.dates = iso_dates(static_cast<std::size_t>(n_dates));
    for (int j = 0; j < n_tickers; ++j) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "SYN%03u", static_cast<unsigned>(j) % 1000u);
        panel.tickers.emplace_back(buf);
        panel.sectors.push_back("sector-" + std::to_string(j % n_sectors));
    }

    auto shock = [&rng]() {
        // Symmetric heavy tail: normal body with occasional Pareto burst.
        double x = rng.normal();
        if (rng.bernoulli(0.05)) {
            const double burst = rng.pareto(2.5);
            x += (rng.bernoulli(0.5) ? burst : -burst);
        }
        return x;
    };

    std::vector<double> level(static_cast<std::size_t>(n_tickers), 100.0);
    double index_level = 1000.0;
    panel.prices.assign(static_cast<std::size_t>(n_dates),
                        std::vector<double>(static_cast<std::size_t>(n_tickers), 0.0));
    panel.index_closes.resize(static_cast<std::size_t>(n_dates));
    for (int t = 0; t < n_dates; ++t) {
        const double market = 0.01 * shock();
        std::vector<double> sector_shock(static_cast<std::size_t>(n_sectors));
        for (auto& s : sector_shock) s = 0.012 * shock();
        for (int j = 0; j < n_tickers; ++j) {
            const double r = 0.0002 + market +
                             sector_shock[static_cast<std::size_t>(j % n_sectors)] +
                             0.008 * shock();
            level[static_cast<std::size_t>(j)] *= std::exp(r);
            panel.prices[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)] =
                level[static_cast<std::size_t>(j)];
        }
        index_level *= std::exp(0.0001 + market + 0.004 * shock());
        panel.index_closes[static_cast<std::size_t>(t)] = index_level;
    }
    return panel;
}

}  // namespace testsupport
