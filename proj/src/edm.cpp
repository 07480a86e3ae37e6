#include "edmnet/edm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "edmnet/errors.hpp"

namespace edmnet {

PolarSample polar_transform(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("polar_transform: length mismatch");
    PolarSample s;
    s.radii.resize(x.size());
    s.products.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r2 = x[i] * x[i] + y[i] * y[i];
        s.radii[i] = std::sqrt(r2);
        // |xy| <= (x^2+y^2)/2, so the ratio is in [-0.5, 0.5] up to one
        // rounding; clamp to keep the invariant exact.
        s.products[i] = r2 > 0.0 ? std::clamp(x[i] * y[i] / r2, -0.5, 0.5) : 0.0;
    }
    return s;
}

EdmEstimate edm_pair(std::span<const double> x, std::span<const double> y,
                     double tail_fraction) {
    if (tail_fraction <= 0.0 || tail_fraction > 1.0)
        throw std::invalid_argument("edm_pair: tail_fraction must be in (0,1]");
    const PolarSample s = polar_transform(x, y);
    const std::size_t n = s.size();
    if (n < 1) throw std::invalid_argument("edm_pair: empty sample");
    if (std::all_of(s.radii.begin(), s.radii.end(), [](double r) { return r == 0.0; }))
        throw ValidationError("edm_pair: degenerate sample, all radii zero");

    // floor with a small forgiveness so that e.g. 0.95*20 lands on 19.
    auto k_of = [](double frac, std::size_t m) {
        const auto k = static_cast<std::size_t>(std::floor(frac * static_cast<double>(m) + 1e-9));
        return std::max<std::size_t>(1, k);
    };
    const std::size_t k = std::min(n, k_of(tail_fraction, n));

    // Order by radius descending; ties broken toward later indices.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (s.radii[a] != s.radii[b]) return s.radii[a] > s.radii[b];
        return a > b;
    });

    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += s.products[order[i]];

    EdmEstimate est;
    est.value = sum / static_cast<double>(k);
    est.exceedance_count = k;
    est.radius_threshold = s.radii[order[k - 1]];
    est.sample_size = n;
    return est;
}

EdmMatrix edm_matrix(const ReturnMatrix& r, double tail_fraction, Execution exec) {
    const std::size_t n = r.n_tickers();
    if (n < 2) throw ValidationError("edm_matrix: need at least 2 tickers");

    std::vector<std::vector<double>> cols(n);
    for (std::size_t j = 0; j < n; ++j) cols[j] = r.column(j);

    EdmMatrix m;
    m.tickers = r.tickers;
    m.tail_fraction = tail_fraction;
    m.values.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) m.values[i][i] = 0.5;

    // Flattened upper triangle so a single loop covers all pairs.
    struct Pair {
        std::size_t i, j;
    };
    std::vector<Pair> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({i, j});

    std::string first_error;
    const auto total = static_cast<std::ptrdiff_t>(pairs.size());

    auto compute = [&](std::ptrdiff_t p) {
        const auto [i, j] = pairs[static_cast<std::size_t>(p)];
        const double v = edm_pair(cols[i], cols[j], tail_fraction).value;
        m.values[i][j] = v;
        m.values[j][i] = v;
    };

    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::ptrdiff_t p = 0; p < total; ++p) {
            try {
                compute(p);
            } catch (const std::exception& e) {
#pragma omp critical
                {
                    const auto [i, j] = pairs[static_cast<std::size_t>(p)];
                    const std::string msg = std::string(e.what()) + " (pair " +
                                            m.tickers[i] + "," + m.tickers[j] + ")";
                    if (first_error.empty() || msg < first_error) first_error = msg;
                }
            }
        }
    } else {
        for (std::ptrdiff_t p = 0; p < total; ++p) {
            try {
                compute(p);
            } catch (const std::exception& e) {
                const auto [i, j] = pairs[static_cast<std::size_t>(p)];
                throw ValidationError(std::string(e.what()) + " (pair " + m.tickers[i] +
                                      "," + m.tickers[j] + ")");
            }
        }
    }
    if (!first_error.empty()) throw ValidationError(first_error);
    return m;
}

}  // namespace edmnet
