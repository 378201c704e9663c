#pragma once

// States of a single bosonic mode expanded over a lattice of displaced
// squeezed-vacuum states |n>_r = D(n*xi_d) S(r) |vac>, optionally tensored
// with a two-level coin.  Conventions (hbar = 1):
//   D(xi) = exp{ xi (a^dag - a) },  S(r) = exp{ (r/2)(a^2 - a^dag^2) },
// so |n>_r is a Gaussian of x-variance e^{-2r}/2 centred at x = n * x_d
// with x_d = sqrt(2) * xi_d.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qwgkp {

using cplx = std::complex<double>;

inline constexpr double sqrt_pi = 1.7724538509055160273;

/// Two coin configurations: R steps the walker to site n+1, L to site n-1.
enum class Coin { R, L };

/// Squeezing r and displacement step xi_d shared by every lattice state.
struct LatticeParams {
    double r = 0.0;
    double xi_d = 1.2533141373155002512;  // sqrt(pi/2), i.e. x_d = sqrt(pi)

    /// Lattice spacing in position, x_d = sqrt(2) * xi_d.
    double x_d() const { return std::numbers::sqrt2 * xi_d; }
    /// Gaussian width e^{-r} of each site in position.
    double delta() const { return std::exp(-r); }

    void validate() const {
        if (!(xi_d > 0.0) || !std::isfinite(xi_d) || !std::isfinite(r))
            throw std::invalid_argument("LatticeParams: xi_d must be positive and finite");
    }
};

/// Squeezing strength in decibel: dB = -10 log10(e^{-2r}).
inline double squeezing_db(double r) { return 20.0 * r / std::numbers::ln10; }
/// Inverse of squeezing_db.
inline double r_from_db(double db) { return db * std::numbers::ln10 / 20.0; }
/// r such that e^{-r} = delta.
inline double r_from_delta(double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    return -std::log(delta);
}

inline bool params_equal(const LatticeParams& a, const LatticeParams& b) {
    auto near = [](double x, double y) {
        return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
    };
    return near(a.r, b.r) && near(a.xi_d, b.xi_d);
}

/// Overlap <m|n>_r between two lattice sites (real and positive):
/// conjugating D by S shows <m|n>_r = exp{-(m-n)^2 xi_d^2 e^{2r} / 2}.
inline double site_overlap(int m, int n, const LatticeParams& p) {
    const double d = static_cast<double>(m - n);
    return std::exp(-0.5 * d * d * p.xi_d * p.xi_d * std::exp(2.0 * p.r));
}

/// Inner products may treat the sites as exactly orthogonal (overlaps at the
/// working parameters are ~1e-9 or smaller) or include the full Gram matrix.
enum class InnerMode { orthogonal, gram };

/// Amplitudes dropped below this magnitude when states are pruned.
inline constexpr double prune_threshold = 1e-30;

namespace detail {
template <typename Map>
void prune_map(Map& m, double threshold) {
    for (auto it = m.begin(); it != m.end();) {
        if (it->second.max_abs() < threshold)
            it = m.erase(it);
        else
            ++it;
    }
}
}  // namespace detail

/// Coinless mode state: amplitudes over lattice sites.
struct QumodeState {
    struct Amp {
        cplx c{0.0, 0.0};
        double max_abs() const { return std::abs(c); }
    };

    LatticeParams params;
    std::map<int, Amp> amps;

    cplx amplitude(int n) const {
        auto it = amps.find(n);
        return it == amps.end() ? cplx{0.0, 0.0} : it->second.c;
    }
    void add(int n, cplx a) { amps[n].c += a; }
    void scale(cplx s) {
        for (auto& [n, a] : amps) a.c *= s;
    }
    void prune(double threshold = prune_threshold) { detail::prune_map(amps, threshold); }
};

/// Walker state: amplitudes over (site, coin) pairs.
struct WalkerState {
    struct Amp {
        cplx r{0.0, 0.0};  // coin R component
        cplx l{0.0, 0.0};  // coin L component
        double max_abs() const { return std::max(std::abs(r), std::abs(l)); }
    };

    LatticeParams params;
    std::map<int, Amp> amps;

    cplx amplitude(int n, Coin c) const {
        auto it = amps.find(n);
        if (it == amps.end()) return {0.0, 0.0};
        return c == Coin::R ? it->second.r : it->second.l;
    }
    void add(int n, Coin c, cplx a) {
        auto& site = amps[n];
        (c == Coin::R ? site.r : site.l) += a;
    }
    void scale(cplx s) {
        for (auto& [n, a] : amps) {
            a.r *= s;
            a.l *= s;
        }
    }
    void prune(double threshold = prune_threshold) { detail::prune_map(amps, threshold); }
};

/// |n>_r |coin>.
inline WalkerState make_basis_state(int n, Coin coin, const LatticeParams& p) {
    p.validate();
    WalkerState s;
    s.params = p;
    s.add(n, coin, 1.0);
    return s;
}

/// |n>_r without a coin.
inline QumodeState make_qumode_basis(int n, const LatticeParams& p) {
    p.validate();
    QumodeState s;
    s.params = p;
    s.add(n, 1.0);
    return s;
}

inline WalkerState add_states(const WalkerState& a, const WalkerState& b) {
    if (!params_equal(a.params, b.params))
        throw std::invalid_argument("add_states: lattice parameters differ");
    WalkerState out = a;
    for (const auto& [n, amp] : b.amps) {
        out.amps[n].r += amp.r;
        out.amps[n].l += amp.l;
    }
    return out;
}

inline QumodeState add_states(const QumodeState& a, const QumodeState& b) {
    if (!params_equal(a.params, b.params))
        throw std::invalid_argument("add_states: lattice parameters differ");
    QumodeState out = a;
    for (const auto& [n, amp] : b.amps) out.amps[n].c += amp.c;
    return out;
}

inline cplx inner_product(const QumodeState& a, const QumodeState& b,
                          InnerMode mode = InnerMode::orthogonal) {
    if (!params_equal(a.params, b.params))
        throw std::invalid_argument("inner_product: lattice parameters differ");
    cplx total{0.0, 0.0};
    if (mode == InnerMode::orthogonal) {
        for (const auto& [n, amp] : a.amps) total += std::conj(amp.c) * b.amplitude(n);
    } else {
        for (const auto& [m, am] : a.amps)
            for (const auto& [n, bn] : b.amps)
                total += std::conj(am.c) * bn.c * site_overlap(m, n, a.params);
    }
    return total;
}

inline cplx inner_product(const WalkerState& a, const WalkerState& b,
                          InnerMode mode = InnerMode::orthogonal) {
    if (!params_equal(a.params, b.params))
        throw std::invalid_argument("inner_product: lattice parameters differ");
    cplx total{0.0, 0.0};
    if (mode == InnerMode::orthogonal) {
        for (const auto& [n, am] : a.amps) {
            const auto bn = b.amps.find(n);
            if (bn == b.amps.end()) continue;
            total += std::conj(am.r) * bn->second.r + std::conj(am.l) * bn->second.l;
        }
    } else {
        for (const auto& [m, am] : a.amps)
            for (const auto& [n, bn] : b.amps)
                total += (std::conj(am.r) * bn.r + std::conj(am.l) * bn.l) *
                         site_overlap(m, n, a.params);
    }
    return total;
}

template <typename State>
double norm(const State& s, InnerMode mode = InnerMode::orthogonal) {
    return std::sqrt(std::abs(inner_product(s, s, mode)));
}

template <typename State>
void normalize(State& s, InnerMode mode = InnerMode::orthogonal) {
    const double n = norm(s, mode);
    if (n <= 0.0) throw std::domain_error("normalize: zero state");
    s.scale(1.0 / n);
}

/// Copy of one coin component of a walker state, as a coinless mode state.
inline QumodeState coin_slice(const WalkerState& s, Coin c) {
    QumodeState out;
    out.params = s.params;
    for (const auto& [n, amp] : s.amps) {
        const cplx v = (c == Coin::R ? amp.r : amp.l);
        if (v != cplx{0.0, 0.0}) out.add(n, v);
    }
    return out;
}

/// Uniform sample grid over one quadrature axis.
struct Grid {
    double lo = 0.0;
    double hi = 0.0;
    int samples = 0;

    double point(int i) const { return lo + (hi - lo) * i / (samples - 1); }
    void validate() const {
        if (samples < 2 || !(hi > lo))
            throw std::invalid_argument("Grid: need samples >= 2 and hi > lo");
    }
};

/// psi(x) = sum_n c_n (e^{r/2}/pi^{1/4}) exp{-(x - n x_d)^2 / (2 e^{-2r})}.
inline std::vector<cplx> position_wavefunction(const QumodeState& s, const Grid& g) {
    g.validate();
    const double xd = s.params.x_d();
    const double pref = std::exp(0.5 * s.params.r) / std::pow(std::numbers::pi, 0.25);
    const double inv2var = 0.5 * std::exp(2.0 * s.params.r);
    std::vector<cplx> out(static_cast<size_t>(g.samples));
    for (int i = 0; i < g.samples; ++i) {
        const double x = g.point(i);
        cplx acc{0.0, 0.0};
        for (const auto& [n, amp] : s.amps) {
            const double d = x - n * xd;
            acc += amp.c * std::exp(-d * d * inv2var);
        }
        out[static_cast<size_t>(i)] = pref * acc;
    }
    return out;
}

/// psi(p) = (e^{-r/2}/pi^{1/4}) exp{-p^2/(2 e^{2r})} sum_n c_n e^{i n x_d p}.
inline std::vector<cplx> momentum_wavefunction(const QumodeState& s, const Grid& g) {
    g.validate();
    const double xd = s.params.x_d();
    const double pref = std::exp(-0.5 * s.params.r) / std::pow(std::numbers::pi, 0.25);
    const double inv2var = 0.5 * std::exp(-2.0 * s.params.r);
    std::vector<cplx> out(static_cast<size_t>(g.samples));
    for (int i = 0; i < g.samples; ++i) {
        const double p = g.point(i);
        cplx acc{0.0, 0.0};
        for (const auto& [n, amp] : s.amps)
            acc += amp.c * std::exp(cplx{0.0, n * xd * p});
        out[static_cast<size_t>(i)] = pref * std::exp(-p * p * inv2var) * acc;
    }
    return out;
}

}  // namespace qwgkp
