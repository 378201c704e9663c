// Command-line front end: encode codeword superpositions, export quadrature
// density tables, run no-error-probability sweeps, verify the circuit
// identities, and diff the walk engine against the closed-form amplitudes.
//
// Exit codes: 0 success, 1 verification/computation failure, 2 usage error.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <qwgkp/circuit_sim.hpp>
#include <qwgkp/closed_form.hpp>
#include <qwgkp/codewords.hpp>
#include <qwgkp/error_analysis.hpp>
#include <qwgkp/serialization.hpp>

namespace {

using namespace qwgkp;

cplx parse_complex(const std::string& text, const std::string& flag) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument(flag + " expects \"re,im\", got \"" + text + "\"");
    try {
        std::size_t a = 0, b = 0;
        const std::string re_s = text.substr(0, comma), im_s = text.substr(comma + 1);
        const double re = std::stod(re_s, &a);
        const double im = std::stod(im_s, &b);
        if (a != re_s.size() || b != im_s.size())
            throw std::invalid_argument("trailing characters");
        return {re, im};
    } catch (const std::exception&) {
        throw std::invalid_argument(flag + " expects \"re,im\", got \"" + text + "\"");
    }
}

void with_output(const std::string& path, const std::function<void(std::ostream&)>& writer) {
    if (path == "-") {
        writer(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    writer(out);
}

std::string format_sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", x);
    return buf;
}

// ------------------------------------------------------------------- encode

struct EncodeArgs {
    std::string coin = "hadamard";
    int steps = 0;
    double db = 0.0;
    double delta = 0.0;
    bool use_db = false;
    double xd = sqrt_pi;
    std::string alpha = "1,0";
    std::string beta = "0,0";
    std::string output;
};

int run_encode(const EncodeArgs& a) {
    LatticeParams params;
    params.r = a.use_db ? r_from_db(a.db) : r_from_delta(a.delta);
    params.xi_d = a.xd / std::numbers::sqrt2;
    params.validate();
    const cplx alpha = parse_complex(a.alpha, "--alpha");
    const cplx beta = parse_complex(a.beta, "--beta");

    json state_json;
    json report_json;
    bool have_report = false;
    if (a.coin == "hadamard") {
        state_json = to_json(encode_qw(alpha, beta, a.steps, params));
    } else {
        const auto [state, report] = encode_dqw(alpha, beta, a.steps, params);
        state_json = to_json(state);
        report_json = to_json(report);
        have_report = true;
    }
    write_text_file(a.output, state_json.dump(2) + "\n");
    if (have_report) write_text_file(a.output + ".report.json", report_json.dump(2) + "\n");
    return 0;
}

// ------------------------------------------------------------------ density

struct DensityArgs {
    std::string input;
    std::string quad = "x";
    double grid_min = 0.0;
    double grid_max = 0.0;
    int samples = 0;
    bool with_amplitudes = false;
    double gkp_delta = 0.0;
    int bit = 0;
    int steps = 0;
    std::string output = "-";
};

int run_density(const DensityArgs& a) {
    Grid grid{a.grid_min, a.grid_max, a.samples};
    grid.validate();
    const Quadrature quad = (a.quad == "x") ? Quadrature::x : Quadrature::p;

    DensityMeta meta;
    meta.N = a.steps;
    std::vector<double> dens;
    std::vector<cplx> amps;
    bool have_amps = false;

    if (a.gkp_delta > 0.0) {
        if (!a.input.empty())
            throw std::invalid_argument("--gkp-delta and --input are mutually exclusive");
        meta.kind = "gkp";
        meta.params.r = r_from_delta(a.gkp_delta);
        const auto psi = gkp_reference_wavefunction(a.bit, a.gkp_delta, a.gkp_delta, quad, grid);
        dens.resize(psi.size());
        for (std::size_t i = 0; i < psi.size(); ++i) dens[i] = psi[i] * psi[i];
        if (a.with_amplitudes) {
            amps.assign(psi.begin(), psi.end());
            have_amps = true;
        }
    } else {
        if (a.input.empty())
            throw std::invalid_argument("density needs --input or --gkp-delta");
        const json j = read_json_file(a.input);
        if (is_walker_json(j)) {
            if (a.with_amplitudes)
                throw std::invalid_argument(
                    "--amplitudes requires a coinless state (coin-traced density has none)");
            const WalkerState s = walker_from_json(j);
            meta.kind = "qw";
            meta.params = s.params;
            dens = density(s, quad, grid);
        } else {
            const QumodeState s = qumode_from_json(j);
            meta.kind = "dqw";
            meta.params = s.params;
            dens = density(s, quad, grid);
            if (a.with_amplitudes) {
                amps = wavefunction(s, quad, grid);
                have_amps = true;
            }
        }
    }

    with_output(a.output, [&](std::ostream& os) {
        write_density_csv(os, meta, quad, grid, dens, have_amps ? &amps : nullptr);
    });
    return 0;
}

// --------------------------------------------------------------------- perf

struct PerfArgs {
    int n_min = 2;
    int n_max = 10;
    bool no_gkp = false;
    std::string output = "-";
};

int run_perf(const PerfArgs& a) {
    if (a.n_min < 1 || a.n_max < a.n_min)
        throw std::invalid_argument("perf needs 1 <= n-min <= n-max");
    std::vector<int> Ns;
    for (int n = a.n_min; n <= a.n_max; ++n) Ns.push_back(n);
    const auto points = sweep(Ns, !a.no_gkp);
    with_output(a.output, [&](std::ostream& os) { write_perf_csv(os, points); });
    return 0;
}

// --------------------------------------------------------- verify-circuits

struct VerifyArgs {
    int dim = 64;
    double xi = 1.0;
    int margin = 20;
    std::uint64_t seed = 12345;
    std::string json_path;
};

int run_verify(const VerifyArgs& a) {
    VerifyOptions opt;
    opt.dim = a.dim;
    opt.xi = a.xi;
    opt.margin = std::min(a.margin, a.dim / 2);  // keep the projector meaningful
    opt.seed = a.seed;
    const VerifyReport rep = run_verification_suite(opt);

    std::size_t width = 0;
    for (const auto& c : rep.checks) width = std::max(width, c.name.size());
    for (const auto& c : rep.checks) {
        std::string line = c.name;
        line.resize(width + 2, ' ');
        std::cout << line << "residual " << format_sci(c.residual) << "  threshold "
                  << format_sci(c.threshold) << "  " << (c.pass ? "PASS" : "FAIL") << "\n";
    }
    std::cout << (rep.all_pass() ? "all checks passed" : "some checks FAILED") << "\n";

    if (!a.json_path.empty()) write_text_file(a.json_path, to_json(rep).dump(2) + "\n");
    return rep.all_pass() ? 0 : 1;
}

// --------------------------------------------------------------- oracle-check

struct OracleArgs {
    int n_max = 12;
};

int run_oracle(const OracleArgs& a) {
    if (a.n_max < 1) throw std::invalid_argument("oracle-check needs n-max >= 1");
    LatticeParams params;
    params.r = 0.3;

    double worst_unitary = 0.0;
    for (Coin start : {Coin::R, Coin::L}) {
        for (int N = 1; N <= a.n_max; ++N) {
            const WalkerState s =
                walk_n(make_basis_state(0, start, params), coin_hadamard(), N);
            for (int n = -N; n <= N; n += 2) {
                const AmplitudePair ap = amp_unitary(N, n, start);
                worst_unitary =
                    std::max(worst_unitary, std::abs(s.amplitude(n, Coin::R) - ap.u));
                worst_unitary =
                    std::max(worst_unitary, std::abs(s.amplitude(n, Coin::L) - ap.v));
            }
        }
    }

    double worst_dissipative = 0.0;
    double worst_weights = 0.0;
    double worst_z = 0.0;
    for (Coin start : {Coin::R, Coin::L}) {
        for (int N = 1; N <= a.n_max; ++N) {
            const WalkerState s =
                walk_n(make_basis_state(0, start, params), coin_diag_projector(), N);
            const QumodeState proj = project_coin(s, coin_vec_D());
            double z_sum = 0.0;
            for (int n = -N; n <= N; n += 2) {
                const AmplitudePair ap = amp_dissipative(N, n);
                worst_dissipative =
                    std::max(worst_dissipative, std::abs(s.amplitude(n, Coin::R) - ap.u));
                worst_dissipative =
                    std::max(worst_dissipative, std::abs(s.amplitude(n, Coin::L) - ap.v));
                const double w = weight_dissipative(N, n);
                worst_weights = std::max(worst_weights, std::abs(proj.amplitude(n) - w));
                z_sum += w * w;
            }
            worst_z = std::max(worst_z, std::abs(z_sum - z_exact(N)) / z_exact(N));
        }
    }

    const double tol = 1e-12;
    struct Row {
        const char* label;
        double value;
    };
    const Row rows[] = {{"unitary-walk amplitudes vs closed form", worst_unitary},
                        {"dissipative-walk amplitudes vs closed form", worst_dissipative},
                        {"dissipative site weights vs closed form", worst_weights},
                        {"codeword normalization vs closed form (rel)", worst_z}};
    bool ok = true;
    for (const Row& row : rows) {
        const bool pass = row.value < tol;
        ok = ok && pass;
        std::string line = row.label;
        line.resize(48, ' ');
        std::cout << line << "max diff " << format_sci(row.value) << "  "
                  << (pass ? "PASS" : "FAIL") << "\n";
    }
    std::cout << (ok ? "engine matches closed forms" : "engine DIVERGES from closed forms")
              << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"phase-space quantum walk codewords: encoding, densities, "
                 "error-correction performance, circuit verification"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value configuration file (flags override it)");

    EncodeArgs enc;
    auto* enc_cmd = app.add_subcommand("encode", "build a codeword superposition state file");
    enc_cmd->add_option("--coin", enc.coin, "walk coin")
        ->check(CLI::IsMember({"hadamard", "dissipative"}))
        ->capture_default_str();
    enc_cmd->add_option("--steps", enc.steps, "walk steps N for logical 0 (logical 1 takes N+1)")
        ->required();
    auto* enc_sq = enc_cmd->add_option_group("squeezing", "exactly one of --squeezing-db/--delta");
    enc_sq->add_option("--squeezing-db", enc.db, "squeezing in dB");
    enc_sq->add_option("--delta", enc.delta, "squeezing as width e^{-r}");
    enc_sq->require_option(1);
    enc_cmd->add_option("--xd", enc.xd, "lattice spacing in position")->capture_default_str();
    enc_cmd->add_option("--alpha", enc.alpha, "logical-0 coefficient as re,im")
        ->capture_default_str();
    enc_cmd->add_option("--beta", enc.beta, "logical-1 coefficient as re,im")
        ->capture_default_str();
    enc_cmd->add_option("--output", enc.output, "state file path")->required();

    DensityArgs den;
    auto* den_cmd = app.add_subcommand("density", "export quadrature density CSV");
    den_cmd->add_option("--input", den.input, "state file from encode");
    den_cmd->add_option("--quadrature", den.quad, "x or p")
        ->check(CLI::IsMember({"x", "p"}))
        ->capture_default_str();
    den_cmd->add_option("--grid-min", den.grid_min, "left edge")->required();
    den_cmd->add_option("--grid-max", den.grid_max, "right edge")->required();
    den_cmd->add_option("--samples", den.samples, "number of grid points")->required();
    den_cmd->add_flag("--amplitudes", den.with_amplitudes, "add re,im wavefunction columns");
    den_cmd->add_option("--gkp-delta", den.gkp_delta,
                        "export the reference comb codeword at this width instead");
    den_cmd->add_option("--bit", den.bit, "logical bit for --gkp-delta")
        ->check(CLI::Range(0, 1))
        ->capture_default_str();
    den_cmd->add_option("--steps", den.steps, "steps metadata written to the CSV header")
        ->capture_default_str();
    den_cmd->add_option("--output", den.output, "CSV path or - for stdout")
        ->capture_default_str();

    PerfArgs perf;
    auto* perf_cmd =
        app.add_subcommand("perf", "no-error probability sweep at delta = 1/sqrt(N pi)");
    perf_cmd->add_option("--n-min", perf.n_min, "first N")->capture_default_str();
    perf_cmd->add_option("--n-max", perf.n_max, "last N")->capture_default_str();
    perf_cmd->add_flag("--no-gkp", perf.no_gkp, "skip the reference-comb column");
    perf_cmd->add_option("--output", perf.output, "CSV path or - for stdout")
        ->capture_default_str();

    VerifyArgs ver;
    auto* ver_cmd = app.add_subcommand("verify-circuits", "run the circuit-identity suite");
    ver_cmd->add_option("--dim", ver.dim, "Fock truncation dimension")->capture_default_str();
    ver_cmd->add_option("--xi", ver.xi, "displacement amplitude under test")
        ->capture_default_str();
    ver_cmd->add_option("--margin", ver.margin, "photon levels excluded from residual norms")
        ->capture_default_str();
    ver_cmd->add_option("--seed", ver.seed, "seed for random input states")
        ->capture_default_str();
    ver_cmd->add_option("--json", ver.json_path, "also write a JSON report here");

    OracleArgs ora;
    auto* ora_cmd =
        app.add_subcommand("oracle-check", "diff the walk engine against closed forms");
    ora_cmd->add_option("--n-max", ora.n_max, "largest step count")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (enc_cmd->parsed()) {
            enc.use_db = enc_sq->get_option("--squeezing-db")->count() > 0;
            return run_encode(enc);
        }
        if (den_cmd->parsed()) return run_density(den);
        if (perf_cmd->parsed()) return run_perf(perf);
        if (ver_cmd->parsed()) return run_verify(ver);
        if (ora_cmd->parsed()) return run_oracle(ora);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
