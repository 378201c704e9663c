#pragma once

// Closed-form walk amplitudes after N steps from |0>_r with a definite coin,
// the normalization constant of the dissipative codewords, and the analytic
// momentum / large-N position wavefunctions of the dissipative codewords.

#include <cmath>
#include <cstdint>
#include <vector>

#include "lattice_state.hpp"

namespace qwgkp {

/// C(n, k) as a double; 0 outside 0 <= k <= n.  Exact (integer) arithmetic
/// up to n = 62, log-gamma evaluation beyond.
inline double binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0.0;
    if (n <= 62) {
        // Pascal triangle in 64-bit integers; C(62,31) still fits.
        static const auto table = [] {
            std::vector<std::vector<std::uint64_t>> t(63);
            for (int i = 0; i <= 62; ++i) {
                t[i].resize(static_cast<size_t>(i) + 1, 1);
                for (int j = 1; j < i; ++j)
                    t[i][static_cast<size_t>(j)] =
                        t[i - 1][static_cast<size_t>(j) - 1] + t[i - 1][static_cast<size_t>(j)];
            }
            return t;
        }();
        return static_cast<double>(table[static_cast<size_t>(n)][static_cast<size_t>(k)]);
    }
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

/// Coin-R and coin-L amplitudes at one site.
struct AmplitudePair {
    double u = 0.0;  // coefficient of |n>|R>
    double v = 0.0;  // coefficient of |n>|L>
};

namespace detail {
inline void check_site(int N, int n) {
    if (N < 1) throw std::domain_error("amp: N must be >= 1");
    if (n < -N || n > N || (N + n) % 2 != 0)
        throw std::domain_error("amp: site must satisfy |n| <= N with N+n even");
}
}  // namespace detail

/// Amplitudes of the N-step Hadamard walk started in |0>_r |eps>.
inline AmplitudePair amp_unitary(int N, int n, Coin eps) {
    detail::check_site(N, n);
    const double scale = std::sqrt(std::ldexp(1.0, -N));
    AmplitudePair a;
    if (eps == Coin::R) {
        if (n == N) return {scale, 0.0};
        if (n == -N) return {0.0, ((N - 1) % 2 == 0 ? scale : -scale)};
        const int ku = std::min((N - n - 2) / 2, (N + n - 2) / 2);
        const int kv = std::min((N - n - 2) / 2, (N + n) / 2);
        for (int k = 0; k <= ku; ++k) {
            const double sgn = ((N - n) / 2 - k - 1) % 2 == 0 ? 1.0 : -1.0;
            a.u += sgn * binomial((N - n - 2) / 2, k) * binomial((N + n) / 2, k + 1);
        }
        for (int k = 0; k <= kv; ++k) {
            const double sgn = ((N - n) / 2 - k - 1) % 2 == 0 ? 1.0 : -1.0;
            a.v += sgn * binomial((N - n - 2) / 2, k) * binomial((N + n) / 2, k);
        }
    } else {
        if (n == N) return {scale, 0.0};
        if (n == -N) return {0.0, (N % 2 == 0 ? scale : -scale)};
        const int ku = std::min((N + n - 2) / 2, (N - n) / 2);
        const int kv = std::min((N + n - 2) / 2, (N - n - 2) / 2);
        for (int k = 0; k <= ku; ++k) {
            const double sgn = ((N - n) / 2 - k) % 2 == 0 ? 1.0 : -1.0;
            a.u += sgn * binomial((N + n - 2) / 2, k) * binomial((N - n) / 2, k);
        }
        for (int k = 0; k <= kv; ++k) {
            const double sgn = ((N - n) / 2 - k - 1) % 2 == 0 ? 1.0 : -1.0;
            a.v += sgn * binomial((N + n - 2) / 2, k) * binomial((N - n) / 2, k + 1);
        }
    }
    a.u *= scale;
    a.v *= scale;
    return a;
}

/// Amplitudes of the N-step diagonal-projector walk (independent of the
/// initial coin); the out-of-range binomial convention covers n = +-N.
inline AmplitudePair amp_dissipative(int N, int n) {
    detail::check_site(N, n);
    const double scale = std::ldexp(1.0, -N);
    return {scale * binomial(N - 1, (N + n - 2) / 2), scale * binomial(N - 1, (N + n) / 2)};
}

/// Site weight after the final projection onto |D>:
/// w_N(n) = (u_N + v_N)/sqrt(2) = 2^{-(N+1/2)} C(N, (N+n)/2).
inline double weight_dissipative(int N, int n) {
    detail::check_site(N, n);
    return std::sqrt(std::ldexp(1.0, -(2 * N + 1))) * binomial(N, (N + n) / 2);
}

/// Squared norm of the unnormalized dissipative codeword:
/// Z_N = sum_n w_N(n)^2 = C(2N, N) / 2^{2N+1}.
inline double z_exact(int N) {
    if (N < 1) throw std::domain_error("z_exact: N must be >= 1");
    return std::ldexp(binomial(2 * N, N), -(2 * N + 1));
}

/// Large-N (Stirling) approximation Z_N ~ 1/(2 sqrt(pi N)).
inline double z_approx(int N) {
    if (N < 1) throw std::domain_error("z_approx: N must be >= 1");
    return 0.5 / std::sqrt(std::numbers::pi * N);
}

/// Momentum wavefunction of the normalized dissipative codeword |phi_N>:
/// the binomial sum collapses to
///   <p|phi_N> = sqrt(e^{-r}/(2 sqrt(pi) Z_N)) exp{-p^2/(2e^{2r})} cos^N(x_d p).
inline cplx momentum_wf_dqw(int N, const LatticeParams& params, double p) {
    if (N < 1) throw std::domain_error("momentum_wf_dqw: N must be >= 1");
    const double pref = std::sqrt(std::exp(-params.r) / (2.0 * sqrt_pi * z_exact(N)));
    const double envelope = std::exp(-0.5 * p * p * std::exp(-2.0 * params.r));
    return {pref * envelope * std::pow(std::cos(params.x_d() * p), N), 0.0};
}

/// Large-N position wavefunction of |phi_N>: the binomial weights approach a
/// Gaussian envelope e^{-n^2/(2N)} over the sites of parity N mod 2.
inline double position_wf_dqw_largeN(int N, const LatticeParams& params, double x) {
    if (N < 1) throw std::domain_error("position_wf_dqw_largeN: N must be >= 1");
    const double pref = std::sqrt(2.0 * std::exp(params.r) /
                                  (std::numbers::pi * std::sqrt(static_cast<double>(N))));
    const double inv2var = 0.5 * std::exp(2.0 * params.r);
    const double xd = params.x_d();
    const int reach = static_cast<int>(std::ceil(10.0 * std::sqrt(static_cast<double>(N)))) + 2;
    double acc = 0.0;
    for (int n = -reach + ((reach + N) % 2); n <= reach; n += 2) {
        const double d = x - n * xd;
        acc += std::exp(-0.5 * n * n / N) * std::exp(-d * d * inv2var);
    }
    return pref * acc;
}

}  // namespace qwgkp
