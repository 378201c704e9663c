#pragma once

// No-error probability of a codeword under small-shift error correction:
// decompose the state over the shifted-grid basis |s,t> (the ideal comb
// displaced by s in position and t in momentum) and integrate |<s,t|psi>|^2
// over the box |s|,|t| <= sqrt(pi)/6 inside which round-trip correction
// introduces no logical error.

#include <limits>
#include <vector>

#include "codewords.hpp"
#include "quadrature.hpp"

namespace qwgkp {

/// Integration domain; the no-error box is [-sqrt(pi)/6, sqrt(pi)/6]^2, the
/// full basis domain is s in [-sqrt(pi), sqrt(pi)], t in +-sqrt(pi)/2.
struct ShiftDomain {
    double s_half = sqrt_pi / 6.0;
    double t_half = sqrt_pi / 6.0;
    int start_order = 32;  // per-axis Gauss-Legendre order of the first pass
    double tol = 1e-6;
    int max_order = 1024;

    static ShiftDomain no_error_box() { return {}; }
    static ShiftDomain full_basis() {
        ShiftDomain d;
        d.s_half = sqrt_pi;
        d.t_half = 0.5 * sqrt_pi;
        return d;
    }
};

/// One row of the performance sweep.
struct PerfPoint {
    int N = 0;
    double delta = 0.0;  // e^{-r} = 1/sqrt(N pi)
    double db = 0.0;
    double p_dqw = 0.0;
    double p_gkp = 0.0;
};

namespace detail {
/// m-range such that |s + (m_shifted) sqrt(pi)| <= reach covers all
/// non-negligible Gaussian terms.
struct MRange {
    int lo, hi;
};
inline MRange m_range(double s, int offset, double reach) {
    // solve |s + (2m + offset) sqrt(pi)| <= reach for integer m
    const double a = (-reach - s) / sqrt_pi - offset;
    const double b = (reach - s) / sqrt_pi - offset;
    return {static_cast<int>(std::floor(0.5 * a)) - 1, static_cast<int>(std::ceil(0.5 * b)) + 1};
}
}  // namespace detail

/// <s,t | phi_N> for the dissipative codeword at lattice spacing sqrt(pi):
/// sqrt(e^{r}/(pi Z_N)) sum_m sum_n' w_N(n) e^{2imt sqrt(pi)}
///   exp{-(s + (2m + parity - n) sqrt(pi))^2 / (2 e^{-2r})},
/// where parity = N mod 2 selects the comb (even or odd multiples) that the
/// codeword's own support lies on.
inline cplx grid_overlap_dqw(int N, const LatticeParams& params, double s, double t) {
    if (N < 1) throw std::domain_error("grid_overlap_dqw: N must be >= 1");
    const double xd = params.x_d();
    if (std::abs(xd - sqrt_pi) > 1e-12 * sqrt_pi)
        throw std::invalid_argument("grid_overlap_dqw: requires lattice spacing x_d = sqrt(pi)");
    const double delta = params.delta();
    const double pref = std::sqrt(std::exp(params.r) / (std::numbers::pi * z_exact(N)));
    const double inv2var = 0.5 / (delta * delta);
    const int parity = N % 2;
    cplx acc{0.0, 0.0};
    for (int n = -N; n <= N; n += 2) {
        const double w = weight_dissipative(N, n);
        const auto mr = detail::m_range(s, parity - n, 12.0 * delta);
        for (int m = mr.lo; m <= mr.hi; ++m) {
            const double arg = s + (2 * m + parity - n) * sqrt_pi;
            const double gauss = std::exp(-arg * arg * inv2var);
            acc += w * gauss * std::exp(cplx{0.0, 2.0 * m * t * sqrt_pi});
        }
    }
    return pref * acc;
}

/// <s,t | l=0 reference codeword>: identical contraction with Gaussian-comb
/// weights e^{-n^2 pi dp^2/2} on even sites and spike width dx, normalized by
/// the exact pairwise-overlap norm of the comb.
inline cplx grid_overlap_gkp(int l, double dx, double dp, double s, double t) {
    if (l != 0) throw std::invalid_argument("grid_overlap_gkp: only l = 0 is supported");
    if (!(dx > 0.0) || !(dp > 0.0))
        throw std::invalid_argument("grid_overlap_gkp: widths must be positive");
    const int nmax_half = static_cast<int>(std::ceil(std::sqrt(
                              2.0 * 16.0 * std::numbers::ln10 / (std::numbers::pi * dp * dp)) /
                          2.0)) + 1;
    std::vector<int> sites;
    std::vector<double> g;
    for (int k = -nmax_half; k <= nmax_half; ++k) {
        const int n = 2 * k;
        sites.push_back(n);
        g.push_back(std::exp(-0.5 * n * n * std::numbers::pi * dp * dp));
    }
    double norm2 = 0.0;
    for (size_t i = 0; i < sites.size(); ++i)
        for (size_t j = 0; j < sites.size(); ++j) {
            const double d = sites[i] - sites[j];
            norm2 += g[i] * g[j] *
                     std::exp(-d * d * std::numbers::pi / (4.0 * dx * dx));
        }
    norm2 *= dx * sqrt_pi;

    const double pref = 1.0 / (std::pow(std::numbers::pi, 0.25) * std::sqrt(norm2));
    const double inv2var = 0.5 / (dx * dx);
    cplx acc{0.0, 0.0};
    for (size_t i = 0; i < sites.size(); ++i) {
        const auto mr = detail::m_range(s, -sites[i], 12.0 * dx);
        for (int m = mr.lo; m <= mr.hi; ++m) {
            const double arg = s + (2 * m - sites[i]) * sqrt_pi;
            acc += g[i] * std::exp(-arg * arg * inv2var) *
                   std::exp(cplx{0.0, 2.0 * m * t * sqrt_pi});
        }
    }
    return pref * acc;
}

/// Integral of |<s,t|psi>|^2 over the domain for the dissipative codeword.
inline BoxIntegral p_no_error_dqw(int N, const LatticeParams& params,
                                  const ShiftDomain& dom = ShiftDomain::no_error_box()) {
    auto f = [&](double s, double t) { return std::norm(grid_overlap_dqw(N, params, s, t)); };
    return integrate_box(f, dom.s_half, dom.t_half, dom.start_order, dom.tol, dom.max_order);
}

/// Same for the reference Gaussian-comb codeword.
inline BoxIntegral p_no_error_gkp(double dx, double dp,
                                  const ShiftDomain& dom = ShiftDomain::no_error_box()) {
    auto f = [&](double s, double t) { return std::norm(grid_overlap_gkp(0, dx, dp, s, t)); };
    return integrate_box(f, dom.s_half, dom.t_half, dom.start_order, dom.tol, dom.max_order);
}

/// Dispatch on a built codeword (dQW and GKP_approx kinds).
inline BoxIntegral p_no_error(const Codeword& cw,
                              const ShiftDomain& dom = ShiftDomain::no_error_box()) {
    if (cw.kind == CodeKind::dQW) {
        if (cw.logical != Logical::zero && cw.logical != Logical::one)
            throw std::invalid_argument("p_no_error: build the codeword for a definite bit");
        return p_no_error_dqw(cw.steps, cw.qumode().params, dom);
    }
    if (cw.kind == CodeKind::GKP_approx) return p_no_error_gkp(cw.delta_x, cw.delta_p, dom);
    throw std::invalid_argument("p_no_error: coin-entangled QW codewords are not supported");
}

/// Performance sweep at the symmetric-error squeezing choice e^{r} = sqrt(N pi)
/// for each N.  If with_gkp is false the GKP column is left NaN.
inline std::vector<PerfPoint> sweep(const std::vector<int>& Ns, bool with_gkp = true,
                                    const ShiftDomain& dom = ShiftDomain::no_error_box()) {
    std::vector<PerfPoint> out;
    out.reserve(Ns.size());
    for (int N : Ns) {
        if (N < 1) throw std::invalid_argument("sweep: N must be >= 1");
        PerfPoint pt;
        pt.N = N;
        pt.delta = 1.0 / std::sqrt(N * std::numbers::pi);
        LatticeParams params;
        params.r = r_from_delta(pt.delta);
        params.xi_d = sqrt_pi / std::numbers::sqrt2;  // x_d = sqrt(pi)
        pt.db = squeezing_db(params.r);
        pt.p_dqw = p_no_error_dqw(N, params, dom).value;
        pt.p_gkp = with_gkp ? p_no_error_gkp(pt.delta, pt.delta, dom).value
                            : std::numeric_limits<double>::quiet_NaN();
        out.push_back(pt);
    }
    return out;
}

}  // namespace qwgkp
