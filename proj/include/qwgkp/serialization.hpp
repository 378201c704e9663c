#pragma once

// JSON/CSV input and output for lattice states, density profiles, performance
// sweeps, and verification reports.  All floating-point output uses the
// shortest round-trip decimal form so repeated runs are byte-identical.

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "circuit_sim.hpp"
#include "codewords.hpp"
#include "error_analysis.hpp"
#include "lattice_state.hpp"

namespace qwgkp {

using json = nlohmann::ordered_json;

namespace detail {
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}
}  // namespace detail

// ----------------------------------------------------------- lattice states

/// {"r": ..., "xi_d": ..., "amplitudes": [{"n", "coin", "re", "im"}, ...]}
/// with coin "R"/"L" for walker states and null for projected qumode states.
inline json to_json(const WalkerState& s) {
    json j;
    j["r"] = s.params.r;
    j["xi_d"] = s.params.xi_d;
    j["amplitudes"] = json::array();
    for (const auto& [n, amp] : s.amps) {
        if (std::abs(amp.r) > 0.0)
            j["amplitudes"].push_back(
                {{"n", n}, {"coin", "R"}, {"re", amp.r.real()}, {"im", amp.r.imag()}});
        if (std::abs(amp.l) > 0.0)
            j["amplitudes"].push_back(
                {{"n", n}, {"coin", "L"}, {"re", amp.l.real()}, {"im", amp.l.imag()}});
    }
    return j;
}

inline json to_json(const QumodeState& s) {
    json j;
    j["r"] = s.params.r;
    j["xi_d"] = s.params.xi_d;
    j["amplitudes"] = json::array();
    for (const auto& [n, amp] : s.amps)
        j["amplitudes"].push_back(
            {{"n", n}, {"coin", nullptr}, {"re", amp.c.real()}, {"im", amp.c.imag()}});
    return j;
}

inline bool is_walker_json(const json& j) {
    for (const auto& a : j.at("amplitudes"))
        if (!a.at("coin").is_null()) return true;
    return false;
}

inline WalkerState walker_from_json(const json& j) {
    WalkerState s;
    s.params.r = j.at("r").get<double>();
    s.params.xi_d = j.at("xi_d").get<double>();
    s.params.validate();
    for (const auto& a : j.at("amplitudes")) {
        const std::string coin = a.at("coin").get<std::string>();
        if (coin != "R" && coin != "L")
            throw std::runtime_error("walker_from_json: coin must be \"R\" or \"L\"");
        s.add(a.at("n").get<int>(), coin == "R" ? Coin::R : Coin::L,
              cplx(a.at("re").get<double>(), a.at("im").get<double>()));
    }
    return s;
}

inline QumodeState qumode_from_json(const json& j) {
    QumodeState s;
    s.params.r = j.at("r").get<double>();
    s.params.xi_d = j.at("xi_d").get<double>();
    s.params.validate();
    for (const auto& a : j.at("amplitudes")) {
        if (!a.at("coin").is_null())
            throw std::runtime_error("qumode_from_json: coin entries must be null");
        s.add(a.at("n").get<int>(),
              cplx(a.at("re").get<double>(), a.at("im").get<double>()));
    }
    return s;
}

inline json to_json(const EncodingReport& rep) {
    json j;
    j["alpha"] = {{"re", rep.alpha.real()}, {"im", rep.alpha.imag()}};
    j["beta"] = {{"re", rep.beta.real()}, {"im", rep.beta.imag()}};
    j["alpha_eff"] = {{"re", rep.alpha_eff.real()}, {"im", rep.alpha_eff.imag()}};
    j["beta_eff"] = {{"re", rep.beta_eff.real()}, {"im", rep.beta_eff.imag()}};
    j["gamma"] = rep.gamma;
    j["norm_factor"] = rep.norm_factor;
    j["success_probability"] = rep.norm_factor * rep.norm_factor;
    return j;
}

// ------------------------------------------------------------ density tables

struct DensityMeta {
    std::string kind;  // "qw", "dqw", "gkp"
    int N = 0;
    LatticeParams params;
};

/// CSV with # metadata comments, header quadrature,value,density[,re,im].
inline void write_density_csv(std::ostream& os, const DensityMeta& meta, Quadrature quad,
                              const Grid& grid, const std::vector<double>& density,
                              const std::vector<cplx>* amplitudes = nullptr) {
    if (density.size() != static_cast<std::size_t>(grid.samples))
        throw std::invalid_argument("write_density_csv: density size mismatch");
    if (amplitudes && amplitudes->size() != density.size())
        throw std::invalid_argument("write_density_csv: amplitude size mismatch");
    os << "# kind=" << meta.kind << "\n";
    os << "# N=" << meta.N << "\n";
    os << "# r=" << detail::format_double(meta.params.r) << "\n";
    os << "# xi_d=" << detail::format_double(meta.params.xi_d) << "\n";
    const char* q = (quad == Quadrature::x) ? "x" : "p";
    os << "quadrature,value,density";
    if (amplitudes) os << ",re,im";
    os << "\n";
    for (int i = 0; i < grid.samples; ++i) {
        os << q << ',' << detail::format_double(grid.point(i)) << ','
           << detail::format_double(density[i]);
        if (amplitudes)
            os << ',' << detail::format_double((*amplitudes)[i].real()) << ','
               << detail::format_double((*amplitudes)[i].imag());
        os << "\n";
    }
}

// --------------------------------------------------------- performance table

/// CSV header N,delta,squeezing_db,p_dqw,p_gkp; p_gkp empty when not computed.
inline void write_perf_csv(std::ostream& os, const std::vector<PerfPoint>& points) {
    os << "N,delta,squeezing_db,p_dqw,p_gkp\n";
    for (const auto& pt : points) {
        os << pt.N << ',' << detail::format_double(pt.delta) << ','
           << detail::format_double(pt.db) << ',' << detail::format_double(pt.p_dqw) << ',';
        if (!std::isnan(pt.p_gkp)) os << detail::format_double(pt.p_gkp);
        os << "\n";
    }
}

// --------------------------------------------------------- verification runs

inline json to_json(const VerifyReport& rep) {
    json j;
    j["options"] = {{"dim", rep.options.dim},
                    {"xi", rep.options.xi},
                    {"margin", rep.options.margin},
                    {"seed", rep.options.seed}};
    j["checks"] = json::array();
    for (const auto& c : rep.checks)
        j["checks"].push_back({{"name", c.name},
                               {"residual", c.residual},
                               {"threshold", c.threshold},
                               {"pass", c.pass}});
    j["all_pass"] = rep.all_pass();
    return j;
}

// ------------------------------------------------------------- file helpers

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
}

/// key=value configuration file; '#' starts a comment, blank lines ignored.
inline std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key=value");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return (a == std::string::npos) ? std::string() : s.substr(a, b - a + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

}  // namespace qwgkp
