#pragma once

// Discrete-time walk over the lattice states: one step applies a coin
// operator C to the two-level coin and then the coin-conditioned translation
//   T = D(+xi_d) (x) |R><R|  +  D(-xi_d) (x) |L><L|,
// which moves the R component to site n+1 and the L component to site n-1.

#include <Eigen/Dense>
#include <string>

#include "lattice_state.hpp"

namespace qwgkp {

/// 2x2 coin operator acting on span{|R>, |L>}; column 0 is the image of |R>.
struct CoinOperator {
    Eigen::Matrix2cd m;
    std::string name;

    bool is_unitary(double tol = 1e-12) const {
        return (m.adjoint() * m - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < tol;
    }
};

/// Hadamard coin.
inline CoinOperator coin_hadamard() {
    CoinOperator c;
    const double s = 1.0 / std::numbers::sqrt2;
    c.m << s, s, s, -s;
    c.name = "hadamard";
    return c;
}

/// Rank-one projector |D><D| onto the diagonal coin state (|R>+|L>)/sqrt(2);
/// using it as the coin makes the walk dissipative (norm is not conserved).
inline CoinOperator coin_diag_projector() {
    CoinOperator c;
    c.m << 0.5, 0.5, 0.5, 0.5;
    c.name = "diag_projector";
    return c;
}

/// Biased variant of a coin: B|R> = |R> and B|L> = C|L>, used when the first
/// walk step starting from |L> must leave an |R> component untouched.
inline CoinOperator coin_biased(const CoinOperator& base) {
    CoinOperator c;
    c.m.col(0) << 1.0, 0.0;
    c.m.col(1) = base.m.col(1);
    c.name = "biased_" + base.name;
    return c;
}

/// Fixed coin vectors used for projections.
inline Eigen::Vector2cd coin_vec_R() { return {1.0, 0.0}; }
inline Eigen::Vector2cd coin_vec_L() { return {0.0, 1.0}; }
inline Eigen::Vector2cd coin_vec_D() {
    const double s = 1.0 / std::numbers::sqrt2;
    return {s, s};
}

/// One walk step: coin action followed by the conditional translation.
inline WalkerState walk_step(const WalkerState& s, const CoinOperator& coin) {
    WalkerState out;
    out.params = s.params;
    for (const auto& [n, amp] : s.amps) {
        const cplx u = coin.m(0, 0) * amp.r + coin.m(0, 1) * amp.l;
        const cplx l = coin.m(1, 0) * amp.r + coin.m(1, 1) * amp.l;
        if (u != cplx{0.0, 0.0}) out.add(n + 1, Coin::R, u);
        if (l != cplx{0.0, 0.0}) out.add(n - 1, Coin::L, l);
    }
    out.prune();
    return out;
}

/// N walk steps with the same coin.
inline WalkerState walk_n(const WalkerState& s, const CoinOperator& coin, int steps) {
    if (steps < 0) throw std::invalid_argument("walk_n: steps must be >= 0");
    WalkerState out = s;
    for (int i = 0; i < steps; ++i) out = walk_step(out, coin);
    return out;
}

/// Project the coin onto |w| / keep the mode: q_n = <w|coin_n>.
inline QumodeState project_coin(const WalkerState& s, const Eigen::Vector2cd& w) {
    QumodeState out;
    out.params = s.params;
    for (const auto& [n, amp] : s.amps) {
        const cplx q = std::conj(w(0)) * amp.r + std::conj(w(1)) * amp.l;
        if (q != cplx{0.0, 0.0}) out.add(n, q);
    }
    out.prune();
    return out;
}

/// Delayed-start superposition: the |R> branch waits one step while the |L>
/// branch takes it, giving  alpha |0>|R> + beta W(coin) |0>|L>.
inline WalkerState prepare_delayed(cplx alpha, cplx beta, const CoinOperator& coin,
                                   const LatticeParams& p) {
    const double n2 = std::norm(alpha) + std::norm(beta);
    if (std::abs(n2 - 1.0) > 1e-12)
        throw std::invalid_argument("prepare_delayed: |alpha|^2 + |beta|^2 must equal 1");
    WalkerState rest = make_basis_state(0, Coin::R, p);
    rest.scale(alpha);
    WalkerState moved = walk_step(make_basis_state(0, Coin::L, p), coin);
    moved.scale(beta);
    return add_states(rest, moved);
}

}  // namespace qwgkp
