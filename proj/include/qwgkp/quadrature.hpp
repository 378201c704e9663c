#pragma once

// Gauss-Legendre quadrature with nodes computed by Newton iteration on the
// Legendre recurrence, plus a tensor-product integrator over a centred box
// that doubles the order until two successive estimates agree.

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace qwgkp {

/// Nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(int order) {
        if (order < 1) throw std::invalid_argument("GaussLegendre: order must be >= 1");
        nodes.resize(static_cast<size_t>(order));
        weights.resize(static_cast<size_t>(order));
        const int half = (order + 1) / 2;
        for (int i = 0; i < half; ++i) {
            // Tricomi-style initial guess, then Newton on P_order(x)
            double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
            double deriv = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= order; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                deriv = order * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / deriv;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            nodes[static_cast<size_t>(i)] = -x;
            nodes[static_cast<size_t>(order - 1 - i)] = x;
            const double w = 2.0 / ((1.0 - x * x) * deriv * deriv);
            weights[static_cast<size_t>(i)] = w;
            weights[static_cast<size_t>(order - 1 - i)] = w;
        }
    }
};

struct BoxIntegral {
    double value = 0.0;
    int order = 0;      // per-axis order of the accepted estimate
    double change = 0.0;  // |value - previous estimate|
};

/// Integrate f over [-s_half, s_half] x [-t_half, t_half] with tensor-product
/// Gauss-Legendre rules, doubling the per-axis order until two successive
/// estimates differ by less than tol.  Throws if max_order is exceeded.
inline BoxIntegral integrate_box(const std::function<double(double, double)>& f,
                                 double s_half, double t_half, int start_order = 32,
                                 double tol = 1e-6, int max_order = 1024) {
    double prev = 0.0;
    bool have_prev = false;
    for (int order = start_order; order <= max_order; order *= 2) {
        const GaussLegendre gl(order);
        double total = 0.0;
        for (int i = 0; i < order; ++i) {
            const double s = s_half * gl.nodes[static_cast<size_t>(i)];
            double row = 0.0;
            for (int j = 0; j < order; ++j) {
                const double t = t_half * gl.nodes[static_cast<size_t>(j)];
                row += gl.weights[static_cast<size_t>(j)] * f(s, t);
            }
            total += gl.weights[static_cast<size_t>(i)] * row;
        }
        total *= s_half * t_half;
        if (have_prev && std::abs(total - prev) < tol)
            return {total, order, std::abs(total - prev)};
        prev = total;
        have_prev = true;
    }
    throw std::runtime_error("integrate_box: estimates did not settle below tolerance " +
                             std::to_string(tol) + " by order " + std::to_string(max_order) +
                             " (last estimate " + std::to_string(prev) + ")");
}

}  // namespace qwgkp
