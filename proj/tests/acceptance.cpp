// Acceptance gate: one line per criterion with the measured numbers, exit
// code equal to the number of failed criteria.

#include <qwgkp/circuit_sim.hpp>
#include <qwgkp/closed_form.hpp>
#include <qwgkp/codewords.hpp>
#include <qwgkp/error_analysis.hpp>

#include "peak_utils.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

using namespace qwgkp;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

int failures = 0;

void report(int id, const std::string& label, bool ok, const std::string& detail) {
    if (!ok) ++failures;
    std::printf("[%s] %2d %s: %s\n", ok ? "PASS" : "FAIL", id, label.c_str(), detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof(buf), pattern, args);
    va_end(args);
    return buf;
}

LatticeParams symmetric_params(int N) {
    LatticeParams p;
    p.r = r_from_delta(1.0 / std::sqrt(N * std::numbers::pi));
    p.xi_d = sqrt_pi / std::numbers::sqrt2;  // x_d = sqrt(pi)
    return p;
}

// 1. headline no-error probabilities at N = 8
void criterion_1() {
    const double delta8 = 1.0 / std::sqrt(8.0 * std::numbers::pi);
    Timer td;
    const double p_dqw = p_no_error_dqw(8, symmetric_params(8)).value;
    const double t_dqw = td.seconds();
    Timer tg;
    const double p_gkp = p_no_error_gkp(delta8, delta8).value;
    const double t_gkp = tg.seconds();
    const bool ok = std::abs(p_dqw - 0.936) <= 0.004 && std::abs(p_gkp - 0.929) <= 0.004 &&
                    t_dqw < 10.0 && t_gkp < 10.0;
    report(1, "no-error probability at N=8",
           ok,
           fmt("walk %.6f (target 0.936+-0.004, %.2fs), comb %.6f (target 0.929+-0.004, %.2fs)",
               p_dqw, t_dqw, p_gkp, t_gkp));
}

// 2. N = 10 point and its squeezing level in dB
void criterion_2() {
    const LatticeParams p10 = symmetric_params(10);
    const double p_dqw = p_no_error_dqw(10, p10).value;
    const double db = squeezing_db(p10.r);
    const bool ok = std::abs(p_dqw - 0.966) <= 0.004 && std::abs(db - 14.97) <= 0.02;
    report(2, "no-error probability and squeezing at N=10", ok,
           fmt("walk %.6f (target 0.966+-0.004) at %.4f dB (target 14.97+-0.02)", p_dqw, db));
}

// 3. walk codewords beat the reference comb at every N in 2..10
void criterion_3() {
    std::vector<int> Ns;
    for (int n = 2; n <= 10; ++n) Ns.push_back(n);
    const auto rows = sweep(Ns);
    bool ok = true;
    double min_gap = 1.0;
    for (const auto& pt : rows) {
        ok = ok && pt.p_dqw > pt.p_gkp;
        min_gap = std::min(min_gap, pt.p_dqw - pt.p_gkp);
    }
    report(3, "walk vs reference comb ordering for N=2..10", ok,
           fmt("p_walk > p_comb at all %zu points, smallest margin %.2e", rows.size(), min_gap));
}

// 4. engine vs closed-form amplitudes through N = 12, both coins and starts
void criterion_4() {
    Timer t;
    LatticeParams p;
    p.r = 0.3;
    double worst = 0.0;
    for (Coin start : {Coin::R, Coin::L}) {
        for (int N = 1; N <= 12; ++N) {
            const WalkerState u = walk_n(make_basis_state(0, start, p), coin_hadamard(), N);
            const WalkerState d =
                walk_n(make_basis_state(0, start, p), coin_diag_projector(), N);
            const QumodeState proj = project_coin(d, coin_vec_D());
            for (int n = -N; n <= N; n += 2) {
                const AmplitudePair au = amp_unitary(N, n, start);
                worst = std::max(worst, std::abs(u.amplitude(n, Coin::R) - au.u));
                worst = std::max(worst, std::abs(u.amplitude(n, Coin::L) - au.v));
                const AmplitudePair ad = amp_dissipative(N, n);
                worst = std::max(worst, std::abs(d.amplitude(n, Coin::R) - ad.u));
                worst = std::max(worst, std::abs(d.amplitude(n, Coin::L) - ad.v));
                worst = std::max(worst, std::abs(proj.amplitude(n) - weight_dissipative(N, n)));
            }
        }
    }
    const double secs = t.seconds();
    const bool ok = worst < 1e-12 && secs < 5.0;
    report(4, "closed-form amplitudes vs walk engine (N<=12)", ok,
           fmt("max |difference| %.2e (bound 1e-12) in %.2fs (bound 5s)", worst, secs));
}

// 5. analytic momentum wavefunction vs the brute-force site superposition
void criterion_5() {
    const LatticeParams p = symmetric_params(8);
    const Grid g{-7.0, 7.0, 2048};
    const QumodeState mode = build_dqw_codeword(0, 8, p).qumode();
    const auto brute = momentum_wavefunction(mode, g);
    double worst = 0.0;
    for (int i = 0; i < g.samples; ++i)
        worst = std::max(worst,
                         std::abs(brute[static_cast<size_t>(i)] -
                                  momentum_wf_dqw(8, p, g.point(i))));
    const bool ok = worst < 1e-10;
    report(5, "momentum closed form vs brute force (N=8, 2048 points)", ok,
           fmt("max |difference| %.2e (bound 1e-10)", worst));
}

// 6. structural density checks: position combs on the right parity, conjugate
//    momentum combs, featureless bit-codeword momentum
void criterion_6() {
    const LatticeParams p = symmetric_params(8);
    bool ok = true;
    std::ostringstream detail;

    // position peaks of each bit codeword on even/odd multiples of sqrt(pi)
    const Grid gx{-6.0 * sqrt_pi, 6.0 * sqrt_pi, 8193};
    double worst_pos = 0.0;
    std::size_t pos_peaks = 0;
    for (int bit : {0, 1}) {
        for (const Codeword& cw :
             {build_dqw_codeword(bit, 8, p), build_qw_codeword(bit, 8, p)}) {
            const auto dens = density(cw, Quadrature::x, gx);
            const auto peaks = testutil::local_maxima(dens, 1e-6);
            ok = ok && peaks.size() >= 3;
            pos_peaks += peaks.size();
            for (const auto idx : peaks)
                worst_pos = std::max(
                    worst_pos, testutil::distance_to_parity_multiple(
                                   gx.point(static_cast<int>(idx)), sqrt_pi, bit));
        }
    }
    ok = ok && worst_pos < 0.01;
    detail << fmt("%zu position peaks off-comb by at most %.1e (bound 0.01)", pos_peaks,
                  worst_pos);

    // momentum: bit codewords have a single maximum, the conjugate pair a comb
    const Grid gp{-5.5 * sqrt_pi, 5.5 * sqrt_pi, 6145};
    for (int bit : {0, 1}) {
        const auto dens = density(build_qw_codeword(bit, 8, p), Quadrature::p, gp);
        const std::size_t n_max = testutil::local_maxima(dens, 1e-9).size();
        ok = ok && n_max == 1;
        detail << fmt("; bit-%d momentum maxima %zu (want 1)", bit, n_max);
    }
    const auto [plus, minus] = conjugate_codewords(CodeKind::QW, 8, p);
    const double inv_env_scale = std::exp(-2.0 * p.r);
    const double step = (gp.hi - gp.lo) / (gp.samples - 1);
    int parity = 0;
    double worst_comb = 0.0, worst_raw = 0.0;
    for (const Codeword* cw : {&plus, &minus}) {
        const auto dens = density(*cw, Quadrature::p, gp);
        std::vector<double> comb(dens.size());
        for (int i = 0; i < gp.samples; ++i)
            comb[static_cast<size_t>(i)] =
                dens[static_cast<size_t>(i)] /
                std::exp(-gp.point(i) * gp.point(i) * inv_env_scale);
        const auto peaks = testutil::local_maxima(comb, 1e-3);
        ok = ok && peaks.size() >= 5;
        for (const auto idx : peaks)
            worst_comb = std::max(worst_comb,
                                  testutil::distance_to_parity_multiple(
                                      gp.point(static_cast<int>(idx)), sqrt_pi, parity));
        for (const auto idx : testutil::local_maxima(dens, 1e-3)) {
            const double pk = gp.point(static_cast<int>(idx));
            if (std::abs(pk) > 2.5 * sqrt_pi) continue;
            worst_raw = std::max(
                worst_raw, testutil::distance_to_parity_multiple(pk, sqrt_pi, parity));
        }
        parity = 1;
    }
    ok = ok && worst_comb < 2.0 * step && worst_comb < 0.01 && worst_raw < 0.25;
    detail << fmt("; conjugate comb peaks off by %.1e (bound 0.01), raw maxima by %.2f "
                  "(bound 0.25)",
                  worst_comb, worst_raw);

    report(6, "density structure of the N=8 codewords", ok, detail.str());
}

// 7. squeezing unit conversions
void criterion_7() {
    struct Row {
        double r;
        double db;
    };
    const Row rows[] = {{r_from_delta(0.2), 13.98},
                        {r_from_delta(1.0 / std::sqrt(8.0 * std::numbers::pi)), 14.0024},
                        {r_from_delta(1.0 / std::sqrt(10.0 * std::numbers::pi)), 14.9715}};
    bool ok = true;
    double worst = 0.0;
    for (const Row& row : rows) {
        const double diff = std::abs(squeezing_db(row.r) - row.db);
        worst = std::max(worst, diff);
        ok = ok && diff <= 0.01;
        ok = ok && std::abs(r_from_db(squeezing_db(row.r)) - row.r) < 1e-14;
    }
    report(7, "squeezing dB conversions", ok,
           fmt("largest deviation %.4f dB (bound 0.01), round trips exact", worst));
}

// 8. neighbor-site overlap: closed form and dense Fock-space cross-check
void criterion_8() {
    LatticeParams narrow;
    narrow.r = r_from_delta(0.2);  // xi_d stays at sqrt(pi/2)
    const double got = site_overlap(0, 1, narrow);
    const double expect = std::exp(-25.0 * std::numbers::pi / 4.0);
    const double rel = std::abs(got - expect) / expect;

    LatticeParams mild;
    mild.r = 0.4;
    mild.xi_d = 0.4;
    const int dim = 64;
    const Eigen::MatrixXcd sq = fock_squeeze(mild.r, dim).m;
    const Eigen::VectorXcd vac = fock_vacuum(dim);
    double worst_fock = 0.0;
    for (const auto [m, n] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
        const Eigen::VectorXcd km = fock_displacement(m * mild.xi_d, dim).m * sq * vac;
        const Eigen::VectorXcd kn = fock_displacement(n * mild.xi_d, dim).m * sq * vac;
        worst_fock = std::max(worst_fock, std::abs(km.dot(kn) - site_overlap(m, n, mild)));
    }
    const bool ok = rel < 1e-6 && worst_fock < 1e-6;
    report(8, "neighbor-site overlap", ok,
           fmt("closed form %.5e vs exp(-25 pi/4), rel diff %.1e (bound 1e-6); Fock "
               "cross-check max diff %.1e (bound 1e-6)",
               got, rel, worst_fock));
}

// 9. circuit identity residuals from the dense verification suite
void criterion_9() {
    const VerifyReport rep = run_verification_suite();
    struct Bound {
        const char* name;
        double max;
    };
    const Bound bounds[] = {{"controlled_displacement_algebraic", 1e-13},
                            {"controlled_displacement_construction", 1e-8},
                            {"biased_coin_measurement_map", 1e-12},
                            {"povm_completeness", 1e-14},
                            {"povm_epsilon_angle", 1e-12},
                            {"phase_family_conditional_z", 1e-12},
                            {"phase_family_controlled_z", 1e-12},
                            {"delayed_state_preparation", 1e-13}};
    bool ok = rep.all_pass();
    std::string worst_name = "-";
    double worst_margin = 0.0;
    for (const Bound& b : bounds) {
        bool found = false;
        for (const auto& c : rep.checks) {
            if (c.name != b.name) continue;
            found = true;
            ok = ok && c.residual < b.max;
            const double margin = c.residual / b.max;
            if (margin > worst_margin) {
                worst_margin = margin;
                worst_name = c.name;
            }
        }
        ok = ok && found;
    }
    report(9, "circuit identity residuals", ok,
           fmt("%zu checks all pass; tightest of the 8 gated residuals: %s at %.0f%% of "
               "its bound",
               rep.checks.size(), worst_name.c_str(), 100.0 * worst_margin));
}

// 10. engine housekeeping: unitarity, support, basis completeness, encoding
void criterion_10() {
    bool ok = true;
    std::ostringstream detail;

    // norm conservation of the unitary walk, 20 steps
    LatticeParams p;
    p.r = 0.3;
    WalkerState s = make_basis_state(0, Coin::R, p);
    s.scale(cplx(0.6, 0.0));
    s.add(0, Coin::L, cplx(0.0, 0.8));
    double worst_norm = 0.0;
    for (int step = 1; step <= 20; ++step) {
        s = walk_step(s, coin_hadamard());
        const double drift = std::abs(norm(s) - 1.0) / step;
        worst_norm = std::max(worst_norm, drift);
    }
    ok = ok && worst_norm < 1e-13;
    detail << fmt("norm drift %.1e per step (bound 1e-13)", worst_norm);

    // support and parity of both walks
    bool support_ok = true;
    for (const CoinOperator& coin : {coin_hadamard(), coin_diag_projector()}) {
        WalkerState w = make_basis_state(0, Coin::R, p);
        for (int step = 1; step <= 15; ++step) {
            w = walk_step(w, coin);
            for (const auto& [n, amp] : w.amps)
                support_ok = support_ok && std::abs(n) <= step && (n - step) % 2 == 0;
        }
    }
    ok = ok && support_ok;
    detail << fmt("; light-cone support and parity %s", support_ok ? "hold" : "VIOLATED");

    // the shifted-grid family resolves the full norm over one cell
    const double full =
        p_no_error_dqw(8, symmetric_params(8), ShiftDomain::full_basis()).value;
    ok = ok && std::abs(full - 1.0) < 1e-4;
    detail << fmt("; full-cell integral %.8f (1 +- 1e-4)", full);

    // dissipative-encoding coefficient identities
    const cplx alpha(0.48, -0.36), beta(0.64, 0.48);
    const auto [state, rep] = encode_dqw(alpha, beta, 6, symmetric_params(6));
    const double id_a = std::abs(rep.norm_factor * rep.alpha_eff - alpha * std::sqrt(z_exact(6)));
    const double id_b = std::abs(rep.norm_factor * rep.beta_eff - beta * std::sqrt(z_exact(7)));
    const double enc_norm = std::abs(norm(state) - 1.0);
    ok = ok && id_a < 1e-12 && id_b < 1e-12 && enc_norm < 1e-12;
    detail << fmt("; encoding identities off by %.1e, %.1e; encoded norm off by %.1e "
                  "(bounds 1e-12)",
                  id_a, id_b, enc_norm);

    report(10, "engine housekeeping", ok, detail.str());
}

}  // namespace

int main() {
    std::printf("acceptance checks\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("criteria passed: %d/10\n", 10 - failures);
    return failures;
}
