#pragma once

#include <span>
#include <string>
#include <vector>

#include "edmnet/execution.hpp"
#include "edmnet/market_data.hpp"

namespace edmnet {

// L2-polar decomposition of a paired sample: radii[i] is the norm of
// (x[i], y[i]) and products[i] = x[i]*y[i] / radii[i]^2, the cross moment
// of the angular components. products[i] is 0 by convention when
// radii[i] is 0, and always lies in [-0.5, 0.5].
struct PolarSample {
    std::vector<double> radii;
    std::vector<double> products;

    std::size_t size() const { return radii.size(); }
};

// Tail cross-moment estimate from the k largest radii.
struct EdmEstimate {
    double value = 0.0;              // in [-0.5, 0.5]
    std::size_t exceedance_count = 0;  // k, samples used
    double radius_threshold = 0.0;   // k-th largest radius
    std::size_t sample_size = 0;
};

// Symmetric matrix of pairwise estimates; diagonal fixed at 0.5.
struct EdmMatrix {
    std::vector<std::string> tickers;
    std::vector<std::vector<double>> values;
    double tail_fraction = 0.0;

    std::size_t size() const { return tickers.size(); }
};

PolarSample polar_transform(std::span<const double> x, std::span<const double> y);

// Averages the polar products over the k = max(1, floor(tail_fraction*n))
// samples with the largest radii. Radius ties at the threshold are broken
// by preferring later indices, so the selection is deterministic.
// Throws ValidationError when every radius is zero.
EdmEstimate edm_pair(std::span<const double> x, std::span<const double> y,
                     double tail_fraction);

// Pairwise estimates over all return columns. Pairs are independent, so
// the parallel path writes each (i,j) slot exactly once and the result is
// identical to the serial one.
EdmMatrix edm_matrix(const ReturnMatrix& r, double tail_fraction,
                     Execution exec = Execution::parallel);

}  // namespace edmnet
