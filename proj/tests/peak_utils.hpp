#pragma once

// Shared peak-location helpers for the structural density checks.

#include <cmath>
#include <cstddef>
#include <vector>

namespace testutil {

/// Indices of strict interior local maxima with value >= frac * global max.
inline std::vector<std::size_t> local_maxima(const std::vector<double>& v, double frac) {
    double top = 0.0;
    for (double x : v) top = std::max(top, x);
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        if (v[i] > v[i - 1] && v[i] > v[i + 1] && v[i] >= frac * top) out.push_back(i);
    return out;
}

/// Distance from x to the nearest multiple k*spacing with k of the requested
/// parity (0 = even, 1 = odd).
inline double distance_to_parity_multiple(double x, double spacing, int parity) {
    const double k = std::round(x / spacing);
    long kk = static_cast<long>(k);
    double best = 1e300;
    for (long c = kk - 2; c <= kk + 2; ++c) {
        if (((c % 2) + 2) % 2 != parity) continue;
        best = std::min(best, std::abs(x - static_cast<double>(c) * spacing));
    }
    return best;
}

}  // namespace testutil
