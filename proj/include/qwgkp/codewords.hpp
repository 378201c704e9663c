#pragma once

// Logical codewords assembled from walks: coin-entangled Hadamard-walk
// codewords, diagonal-projected dissipative codewords, and the reference
// Gaussian-comb codewords they approximate.  Bit 1 always takes one more walk
// step than bit 0, so the two bits occupy lattice sites of opposite parity.

#include <functional>
#include <variant>
#include <vector>

#include "closed_form.hpp"
#include "walk_engine.hpp"

namespace qwgkp {

enum class CodeKind { QW, dQW, GKP_approx };
enum class Logical { zero, one, plus, minus };
enum class Quadrature { x, p };

struct Codeword {
    CodeKind kind = CodeKind::QW;
    Logical logical = Logical::zero;
    int steps = 0;  // walk steps taken for this bit; unused for GKP_approx
    std::variant<std::monostate, WalkerState, QumodeState> state;
    double delta_x = 0.0;  // Gaussian widths, GKP_approx only
    double delta_p = 0.0;

    const WalkerState& walker() const { return std::get<WalkerState>(state); }
    const QumodeState& qumode() const { return std::get<QumodeState>(state); }
};

/// Coefficient bookkeeping for the dissipative encoder, whose two codewords
/// carry different norms Z_N and Z_{N+1} before normalization.
struct EncodingReport {
    cplx alpha{0.0, 0.0};      // requested coefficients
    cplx beta{0.0, 0.0};
    cplx alpha_eff{0.0, 0.0};  // coefficients of the normalized encoded state
    cplx beta_eff{0.0, 0.0};
    double gamma = 0.0;        // sqrt(Z_{N+1}/Z_N)
    double norm_factor = 0.0;  // sqrt(|alpha|^2 Z_N + |beta|^2 Z_{N+1})
};

namespace detail {
inline void check_bit(int bit) {
    if (bit != 0 && bit != 1) throw std::invalid_argument("bit must be 0 or 1");
}
inline void check_coeffs(cplx alpha, cplx beta) {
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12)
        throw std::invalid_argument("coefficients must satisfy |alpha|^2 + |beta|^2 = 1");
}
}  // namespace detail

/// Coin-entangled Hadamard-walk codeword: bit 0 walks |0>_r|R> for N steps,
/// bit 1 walks |0>_r|L> for N+1 steps.
inline Codeword build_qw_codeword(int bit, int N, const LatticeParams& params) {
    detail::check_bit(bit);
    if (N < 1) throw std::invalid_argument("build_qw_codeword: N must be >= 1");
    Codeword cw;
    cw.kind = CodeKind::QW;
    cw.logical = bit == 0 ? Logical::zero : Logical::one;
    cw.steps = N + bit;
    const Coin start = bit == 0 ? Coin::R : Coin::L;
    cw.state = walk_n(make_basis_state(0, start, params), coin_hadamard(), cw.steps);
    return cw;
}

/// Dissipative codeword |phi_{N+bit}>: diagonal-projector walk, a final
/// projection onto |D>, and normalization by sqrt(Z).
inline Codeword build_dqw_codeword(int bit, int N, const LatticeParams& params) {
    detail::check_bit(bit);
    if (N < 1) throw std::invalid_argument("build_dqw_codeword: N must be >= 1");
    Codeword cw;
    cw.kind = CodeKind::dQW;
    cw.logical = bit == 0 ? Logical::zero : Logical::one;
    cw.steps = N + bit;
    WalkerState walked =
        walk_n(make_basis_state(0, Coin::R, params), coin_diag_projector(), cw.steps);
    QumodeState mode = project_coin(walked, coin_vec_D());
    mode.scale(1.0 / std::sqrt(z_exact(cw.steps)));
    cw.state = std::move(mode);
    return cw;
}

/// alpha |0>_QW + beta |1>_QW; the unitary walk preserves the coefficients.
inline WalkerState encode_qw(cplx alpha, cplx beta, int N, const LatticeParams& params) {
    detail::check_coeffs(alpha, beta);
    WalkerState zero = build_qw_codeword(0, N, params).walker();
    WalkerState one = build_qw_codeword(1, N, params).walker();
    zero.scale(alpha);
    one.scale(beta);
    WalkerState out = add_states(zero, one);
    out.prune();
    return out;
}

/// Dissipative encoder: the walk maps alpha|0> + beta|1> input coefficients
/// to alpha' = alpha/sqrt(|alpha|^2 + gamma^2 |beta|^2), beta' = gamma beta /
/// (same), gamma = sqrt(Z_{N+1}/Z_N), with overall success amplitude
/// norm_factor = sqrt(|alpha|^2 Z_N + |beta|^2 Z_{N+1}).
inline std::pair<QumodeState, EncodingReport> encode_dqw(cplx alpha, cplx beta, int N,
                                                         const LatticeParams& params) {
    detail::check_coeffs(alpha, beta);
    EncodingReport rep;
    rep.alpha = alpha;
    rep.beta = beta;
    const double zn = z_exact(N);
    const double zn1 = z_exact(N + 1);
    rep.gamma = std::sqrt(zn1 / zn);
    const double denom =
        std::sqrt(std::norm(alpha) + rep.gamma * rep.gamma * std::norm(beta));
    rep.alpha_eff = alpha / denom;
    rep.beta_eff = rep.gamma * beta / denom;
    rep.norm_factor = std::sqrt(std::norm(alpha) * zn + std::norm(beta) * zn1);

    QumodeState zero = build_dqw_codeword(0, N, params).qumode();
    QumodeState one = build_dqw_codeword(1, N, params).qumode();
    zero.scale(rep.alpha_eff);
    one.scale(rep.beta_eff);
    QumodeState out = add_states(zero, one);
    out.prune();
    return {std::move(out), rep};
}

/// The conjugate-basis states (|0> +- |1>)/sqrt(2) for either walk kind.
inline std::pair<Codeword, Codeword> conjugate_codewords(CodeKind kind, int N,
                                                         const LatticeParams& params) {
    if (kind != CodeKind::QW && kind != CodeKind::dQW)
        throw std::invalid_argument("conjugate_codewords: kind must be QW or dQW");
    const double s = 1.0 / std::numbers::sqrt2;
    Codeword plus, minus;
    plus.kind = minus.kind = kind;
    plus.logical = Logical::plus;
    minus.logical = Logical::minus;
    plus.steps = minus.steps = N;
    if (kind == CodeKind::QW) {
        WalkerState zero = build_qw_codeword(0, N, params).walker();
        WalkerState one = build_qw_codeword(1, N, params).walker();
        WalkerState neg = one;
        zero.scale(s);
        one.scale(s);
        neg.scale(-s);
        plus.state = add_states(zero, one);
        minus.state = add_states(zero, neg);
    } else {
        QumodeState zero = build_dqw_codeword(0, N, params).qumode();
        QumodeState one = build_dqw_codeword(1, N, params).qumode();
        QumodeState neg = one;
        zero.scale(s);
        one.scale(s);
        neg.scale(-s);
        plus.state = add_states(zero, one);
        minus.state = add_states(zero, neg);
    }
    return {std::move(plus), std::move(minus)};
}

/// Reference Gaussian-comb codeword wavefunction sampled on a grid and
/// normalized so that the trapezoid integral of its square is 1.
/// Position: spikes of width dx at (even/odd for l=0/1) multiples of sqrt(pi)
/// under the envelope e^{-n^2 pi dp^2 / 2}.  Momentum: spikes of width dp at
/// every multiple, signed (-1)^{nl}, under the global envelope e^{-dx^2p^2/2}.
inline std::vector<double> gkp_reference_wavefunction(int l, double dx, double dp,
                                                      Quadrature quad, const Grid& g) {
    detail::check_bit(l);
    if (!(dx > 0.0) || !(dp > 0.0))
        throw std::invalid_argument("gkp_reference_wavefunction: widths must be positive");
    g.validate();
    std::vector<double> psi(static_cast<size_t>(g.samples), 0.0);
    if (quad == Quadrature::x) {
        // envelope term < 1e-16 cutoff
        const int nmax =
            static_cast<int>(std::ceil(std::sqrt(2.0 * 16.0 * std::numbers::ln10 /
                                                 (std::numbers::pi * dp * dp)))) + 1;
        for (int i = 0; i < g.samples; ++i) {
            const double x = g.point(i);
            double acc = 0.0;
            for (int n = -nmax + ((nmax + l) % 2); n <= nmax; n += 2) {
                const double d = x - n * sqrt_pi;
                acc += std::exp(-0.5 * n * n * std::numbers::pi * dp * dp) *
                       std::exp(-0.5 * d * d / (dx * dx));
            }
            psi[static_cast<size_t>(i)] = acc;
        }
    } else {
        // spikes farther than ~9 widths from the grid never exceed 1e-16
        const int nlo = static_cast<int>(std::floor((g.lo - 9.5 * dp) / sqrt_pi));
        const int nhi = static_cast<int>(std::ceil((g.hi + 9.5 * dp) / sqrt_pi));
        for (int i = 0; i < g.samples; ++i) {
            const double p = g.point(i);
            double acc = 0.0;
            for (int n = nlo; n <= nhi; ++n) {
                const double d = p - n * sqrt_pi;
                const double sgn = (l == 1 && (n % 2 != 0)) ? -1.0 : 1.0;
                acc += sgn * std::exp(-0.5 * d * d / (dp * dp));
            }
            psi[static_cast<size_t>(i)] = std::exp(-0.5 * dx * dx * p * p) * acc;
        }
    }
    // trapezoid normalization on the grid
    const double h = (g.hi - g.lo) / (g.samples - 1);
    double total = 0.0;
    for (int i = 0; i < g.samples; ++i) {
        const double w = (i == 0 || i == g.samples - 1) ? 0.5 : 1.0;
        total += w * psi[static_cast<size_t>(i)] * psi[static_cast<size_t>(i)];
    }
    total *= h;
    const double scale = 1.0 / std::sqrt(total);
    for (double& v : psi) v *= scale;
    return psi;
}

inline std::vector<cplx> wavefunction(const QumodeState& s, Quadrature quad, const Grid& g) {
    return quad == Quadrature::x ? position_wavefunction(s, g) : momentum_wavefunction(s, g);
}

/// |psi|^2 samples of a mode state.
inline std::vector<double> density(const QumodeState& s, Quadrature quad, const Grid& g) {
    const auto psi = wavefunction(s, quad, g);
    std::vector<double> out(psi.size());
    for (size_t i = 0; i < psi.size(); ++i) out[i] = std::norm(psi[i]);
    return out;
}

/// Total (coin-traced) probability density of a coin-entangled state: the sum
/// of the slice densities, independent of the coin basis used to slice.
inline std::vector<double> density(const WalkerState& s, Quadrature quad, const Grid& g) {
    const auto psi_r = wavefunction(coin_slice(s, Coin::R), quad, g);
    const auto psi_l = wavefunction(coin_slice(s, Coin::L), quad, g);
    std::vector<double> out(psi_r.size());
    for (size_t i = 0; i < psi_r.size(); ++i)
        out[i] = std::norm(psi_r[i]) + std::norm(psi_l[i]);
    return out;
}

inline std::vector<double> density(const Codeword& cw, Quadrature quad, const Grid& g) {
    if (std::holds_alternative<WalkerState>(cw.state))
        return density(cw.walker(), quad, g);
    if (std::holds_alternative<QumodeState>(cw.state))
        return density(cw.qumode(), quad, g);
    const int l = cw.logical == Logical::one ? 1 : 0;
    auto psi = gkp_reference_wavefunction(l, cw.delta_x, cw.delta_p, quad, g);
    std::vector<double> out(psi.size());
    for (size_t i = 0; i < psi.size(); ++i) out[i] = psi[i] * psi[i];
    return out;
}

}  // namespace qwgkp
