#include "zenoscat/config.hpp"

#include "zenoscat/errors.hpp"
#include "zenoscat/format.hpp"
#include "zenoscat/units.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>

namespace zenoscat {

const std::vector<std::string>& run_modes() {
    static const std::vector<std::string> m{"static-scan", "floquet-run", "threshold-scan",
                                            "kk-predict",  "retrieve",    "optimize"};
    return m;
}

namespace {

enum class Dim { energy, field, frequency_mhz, length, mass, zeeman, c12, c6, inv_length };

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string canonical_unit(std::string u) {
    std::string out;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const unsigned char c = static_cast<unsigned char>(u[i]);
        if (c == ' ' || c == '*' || c == '\t') continue;
        // UTF-8 A-ring (U+00C5) and the angstrom sign (U+212B)
        if (c == 0xC3 && i + 1 < u.size() && static_cast<unsigned char>(u[i + 1]) == 0x85) {
            out += 'A';
            ++i;
            continue;
        }
        if (c == 0xE2 && i + 2 < u.size() && static_cast<unsigned char>(u[i + 1]) == 0x84 &&
            static_cast<unsigned char>(u[i + 2]) == 0xAB) {
            out += 'A';
            i += 2;
            continue;
        }
        // micro sign and Greek mu
        if ((c == 0xC2 && i + 1 < u.size() && static_cast<unsigned char>(u[i + 1]) == 0xB5) ||
            (c == 0xCE && i + 1 < u.size() && static_cast<unsigned char>(u[i + 1]) == 0xBC)) {
            out += 'u';
            ++i;
            continue;
        }
        out += static_cast<char>(c);
    }
    return out;
}

std::optional<double> unit_factor(Dim d, const std::string& u) {
    static const std::map<std::string, double> energy{
        {"K", 1.0}, {"mK", 1e-3}, {"uK", 1e-6}, {"nK", 1e-9}, {"cm^-1", units::cm_inverse}};
    static const std::map<std::string, double> field{{"G", 1.0}, {"mG", 1e-3}, {"kG", 1e3}, {"T", 1e4}, {"mT", 10.0}};
    static const std::map<std::string, double> freq{{"Hz", 1e-6}, {"kHz", 1e-3}, {"MHz", 1.0}, {"GHz", 1e3}};
    static const std::map<std::string, double> length{{"A", 1.0}, {"nm", 10.0}, {"bohr", 0.529177210903}};
    static const std::map<std::string, double> mass{{"amu", 1.0}, {"u", 1.0}, {"Da", 1.0}};
    auto look = [&](const std::map<std::string, double>& m) -> std::optional<double> {
        auto it = m.find(u);
        if (it == m.end()) return std::nullopt;
        return it->second;
    };
    switch (d) {
    case Dim::energy: return look(energy);
    case Dim::field: return look(field);
    case Dim::frequency_mhz: return look(freq);
    case Dim::length: return look(length);
    case Dim::mass: return look(mass);
    case Dim::zeeman:
        if (u == "K/G") return 1.0;
        if (u == "K/T") return 1e-4;
        return std::nullopt;
    case Dim::c12: return u == "KA^12" ? std::optional<double>(1.0) : std::nullopt;
    case Dim::c6: return u == "KA^6" ? std::optional<double>(1.0) : std::nullopt;
    case Dim::inv_length: return (u == "1/A" || u == "A^-1") ? std::optional<double>(1.0) : std::nullopt;
    }
    return std::nullopt;
}

const char* unit_hint(Dim d) {
    switch (d) {
    case Dim::energy: return "K, mK, uK, nK";
    case Dim::field: return "G, mG, kG, T, mT";
    case Dim::frequency_mhz: return "Hz, kHz, MHz, GHz";
    case Dim::length: return "A, nm, bohr";
    case Dim::mass: return "amu";
    case Dim::zeeman: return "K/G";
    case Dim::c12: return "K*A^12";
    case Dim::c6: return "K*A^6";
    case Dim::inv_length: return "1/A";
    }
    return "";
}

struct Line {
    int number = 0;
    std::string section, key, value;
};

[[noreturn]] void fail(const Line& l, const std::string& msg) {
    std::ostringstream os;
    os << "config line " << l.number << ": ";
    if (!l.key.empty()) os << "key '" << (l.section.empty() ? "" : l.section + ".") << l.key << "': ";
    os << msg;
    throw ConfigError(os.str());
}

double parse_number(const Line& l, const std::string& s, std::string* rest = nullptr) {
    const std::string t = trim(s);
    double v = 0.0;
    const char* b = t.data();
    const char* e = t.data() + t.size();
    if (!t.empty() && *b == '+') ++b;
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || !std::isfinite(v)) fail(l, "expected a number, got '" + t + "'");
    if (rest) {
        *rest = trim(std::string(p, e));
    } else if (p != e) {
        fail(l, "unexpected trailing text '" + std::string(p, e) + "'");
    }
    return v;
}

// value with a mandatory unit
double quantity(const Line& l, const std::string& s, Dim d) {
    std::string unit;
    const double v = parse_number(l, s, &unit);
    if (unit.empty()) fail(l, std::string("missing unit (expected one of: ") + unit_hint(d) + ")");
    const auto f = unit_factor(d, canonical_unit(unit));
    if (!f) fail(l, "unit '" + unit + "' not accepted here (expected one of: " + unit_hint(d) + ")");
    return v * *f;
}

// energy given either as energy or as frequency (omega / 2 pi)
double energy_or_frequency(const Line& l, const std::string& s) {
    std::string unit;
    const double v = parse_number(l, s, &unit);
    if (unit.empty()) fail(l, "missing unit (expected an energy in K or a frequency in MHz)");
    const auto cu = canonical_unit(unit);
    if (auto f = unit_factor(Dim::energy, cu)) return v * *f;
    if (auto f = unit_factor(Dim::frequency_mhz, cu)) return v * *f * units::mhz;
    fail(l, "unit '" + unit + "' is neither an energy nor a frequency");
}

// frequency in MHz given as frequency or energy
double frequency_mhz(const Line& l, const std::string& s) {
    std::string unit;
    const double v = parse_number(l, s, &unit);
    if (unit.empty()) fail(l, "missing unit (expected a frequency in MHz)");
    const auto cu = canonical_unit(unit);
    if (auto f = unit_factor(Dim::frequency_mhz, cu)) return v * *f;
    if (auto f = unit_factor(Dim::energy, cu)) return v * *f / units::mhz;
    fail(l, "unit '" + unit + "' is neither a frequency nor an energy");
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, ',')) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

long long integer(const Line& l, const std::string& s) {
    const std::string t = trim(s);
    long long v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size()) fail(l, "expected an integer, got '" + t + "'");
    return v;
}

int bounded_int(const Line& l, const std::string& s, long long lo, long long hi) {
    const long long v = integer(l, s);
    if (v < lo || v > hi) fail(l, "value " + std::to_string(v) + " out of range [" + std::to_string(lo) + ", " +
                                      std::to_string(hi) + "]");
    return static_cast<int>(v);
}

bool boolean(const Line& l, const std::string& s) {
    const std::string t = trim(s);
    if (t == "true" || t == "yes" || t == "on" || t == "1") return true;
    if (t == "false" || t == "no" || t == "off" || t == "0") return false;
    fail(l, "expected true or false, got '" + t + "'");
}

void positive(const Line& l, double v) {
    if (!(v > 0.0)) fail(l, "must be positive");
}
void nonnegative(const Line& l, double v) {
    if (!(v >= 0.0)) fail(l, "must be non-negative");
}

struct TermDraft {
    Line where;
    std::optional<int> lambda;
    std::string form;
    std::optional<double> C12, C6, A, beta;
    std::string table;
};

RadialTerm finish_term(const TermDraft& d) {
    if (!d.lambda) fail(d.where, "potential term needs 'lambda'");
    if (d.form == "lj") {
        if (!d.C12 || !d.C6) fail(d.where, "Lennard-Jones term needs C12 and C6");
        return RadialTerm::make_lj(*d.lambda, *d.C12, *d.C6);
    }
    if (d.form == "expdisp") {
        if (!d.A || !d.beta || !d.C6) fail(d.where, "exp-dispersion term needs A, beta and C6");
        return RadialTerm::make_exp_disp(*d.lambda, *d.A, *d.beta, *d.C6);
    }
    if (d.form == "table") {
        if (d.table.empty()) fail(d.where, "tabulated term needs 'table = <path>'");
        return RadialTerm::make_table(*d.lambda, TabulatedRadial::load(d.table));
    }
    fail(d.where, "potential term needs 'form = lj | expdisp | table'");
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig c;
    std::vector<Line> lines;
    {
        std::istringstream in(text);
        std::string raw, section;
        int number = 0;
        while (std::getline(in, raw)) {
            ++number;
            const auto hash = raw.find('#');
            std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
            if (s.empty()) continue;
            Line l;
            l.number = number;
            if (s.front() == '[') {
                if (s.back() != ']') fail(l, "malformed section header '" + s + "'");
                section = trim(s.substr(1, s.size() - 2));
                continue;
            }
            const auto eq = s.find('=');
            if (eq == std::string::npos) fail(l, "expected 'key = value', got '" + s + "'");
            l.section = section;
            l.key = trim(s.substr(0, eq));
            l.value = trim(s.substr(eq + 1));
            if (l.key.empty()) fail(l, "empty key");
            if (l.value.empty()) fail(l, "empty value");
            lines.push_back(l);
        }
    }

    std::set<std::pair<std::string, std::string>> seen;
    std::map<std::string, TermDraft> terms;
    std::vector<std::string> term_order;
    bool harmonics_reset = false;
    static const std::regex harmonic_key(R"(a([1-9][0-9]*))");
    static const std::regex potential_section(R"(potential\.([A-Za-z0-9_]+))");

    for (const auto& l : lines) {
        if (!seen.insert({l.section, l.key}).second) fail(l, "duplicate key");
        const std::string& k = l.key;
        const std::string& v = l.value;
        std::smatch m;
        if (l.section.empty()) {
            if (k == "mode") {
                if (std::find(run_modes().begin(), run_modes().end(), v) == run_modes().end())
                    fail(l, "unknown mode '" + v + "'");
                c.mode = v;
            } else if (k == "seed") {
                const long long s = integer(l, v);
                if (s < 0) fail(l, "seed must be non-negative");
                c.seed = static_cast<std::uint64_t>(s);
            } else if (k == "threads") {
                c.threads = bounded_int(l, v, 1, 4096);
            } else if (k == "out") {
                c.out_dir = v;
            } else {
                fail(l, "unknown key");
            }
        } else if (l.section == "molecule") {
            auto& mol = c.model.molecule;
            if (k == "B_e") mol.B_e = quantity(l, v, Dim::energy), positive(l, mol.B_e);
            else if (k == "gamma") mol.gamma = quantity(l, v, Dim::energy);
            else if (k == "lambda_ss") mol.lambda_ss = quantity(l, v, Dim::energy);
            else if (k == "mu0") mol.mu0 = quantity(l, v, Dim::zeeman), positive(l, mol.mu0);
            else if (k == "h_eff") mol.h_eff = quantity(l, v, Dim::zeeman), positive(l, mol.h_eff);
            else if (k == "S") {
                if (integer(l, v) != 1) fail(l, "only S = 1 is supported");
            } else fail(l, "unknown key");
        } else if (l.section == "pulse") {
            if (k == "B0") c.pulse.B0 = quantity(l, v, Dim::field);
            else if (k == "omega_B") c.pulse.omega_B = energy_or_frequency(l, v), positive(l, c.pulse.omega_B);
            else if (std::regex_match(k, m, harmonic_key)) {
                if (!harmonics_reset) {
                    c.pulse.harmonics.clear();
                    harmonics_reset = true;
                }
                const int n = std::stoi(m[1].str());
                if (n > 64) fail(l, "harmonic index above 64");
                c.pulse.harmonics.push_back({n, quantity(l, v, Dim::field)});
            } else fail(l, "unknown key");
        } else if (l.section == "basis") {
            auto& b = c.model.basis;
            if (k == "N_max") b.N_max = bounded_int(l, v, 0, 12);
            else if (k == "n_max") b.n_max = (v == "auto") ? -1 : bounded_int(l, v, 0, 200);
            else if (k == "l_max") b.l_max = bounded_int(l, v, 0, 12);
            else if (k == "parity") {
                if (v == "even") b.parity = 0;
                else if (v == "odd") b.parity = 1;
                else fail(l, "parity must be even or odd");
            } else if (k == "M_total") b.M_total = bounded_int(l, v, -20, 20);
            else fail(l, "unknown key");
        } else if (l.section == "collision") {
            if (k == "mu") c.model.mu = quantity(l, v, Dim::mass), positive(l, c.model.mu);
            else if (k == "E_in") c.model.E_in = quantity(l, v, Dim::energy), positive(l, c.model.E_in);
            else if (k == "incident") {
                std::istringstream is(v);
                int N, J, M;
                std::string extra;
                if (!(is >> N >> J >> M) || (is >> extra)) fail(l, "expected 'N J M_J'");
                if (N < 0 || J < 0 || std::abs(M) > J) fail(l, "invalid incident channel quantum numbers");
                c.model.incident = {N, J, M};
            } else fail(l, "unknown key");
        } else if (std::regex_match(l.section, m, potential_section)) {
            const std::string tag = m[1].str();
            if (!terms.count(tag)) {
                term_order.push_back(tag);
                terms[tag].where = l;
            }
            auto& d = terms[tag];
            if (k == "lambda") d.lambda = bounded_int(l, v, 0, 8);
            else if (k == "form") {
                if (v != "lj" && v != "expdisp" && v != "table") fail(l, "form must be lj, expdisp or table");
                d.form = v;
            } else if (k == "C12") d.C12 = quantity(l, v, Dim::c12);
            else if (k == "C6") d.C6 = quantity(l, v, Dim::c6);
            else if (k == "A") d.A = quantity(l, v, Dim::energy);
            else if (k == "beta") d.beta = quantity(l, v, Dim::inv_length), positive(l, *d.beta);
            else if (k == "table") d.table = v;
            else fail(l, "unknown key");
        } else if (l.section == "grid") {
            auto& g = c.model.grid;
            if (k == "R_min") g.R_min = quantity(l, v, Dim::length), positive(l, g.R_min);
            else if (k == "R_max") g.R_max = (v == "auto") ? 0.0 : quantity(l, v, Dim::length);
            else if (k == "step_factor") g.step_factor = parse_number(l, v), positive(l, g.step_factor);
            else if (k == "ref_energy") g.ref_energy = quantity(l, v, Dim::energy), nonnegative(l, g.ref_energy);
            else if (k == "h_min") g.h_min = quantity(l, v, Dim::length), positive(l, g.h_min);
            else if (k == "h_max") g.h_max = quantity(l, v, Dim::length), positive(l, g.h_max);
            else if (k == "fixed_step") g.fixed_step = quantity(l, v, Dim::length), nonnegative(l, g.fixed_step);
            else if (k == "check_convergence") g.check_convergence = boolean(l, v);
            else if (k == "convergence_tol") g.convergence_tol = parse_number(l, v), positive(l, g.convergence_tol);
            else fail(l, "unknown key");
        } else if (l.section == "scan") {
            auto& s = c.scan;
            if (k == "B0_min") s.B0_min = quantity(l, v, Dim::field), nonnegative(l, s.B0_min);
            else if (k == "B0_max") s.B0_max = quantity(l, v, Dim::field), nonnegative(l, s.B0_max);
            else if (k == "B0_steps") s.B0_steps = bounded_int(l, v, 1, 100000);
            else if (k == "spacing") {
                if (v == "log") s.log_spacing = true;
                else if (v == "linear") s.log_spacing = false;
                else fail(l, "spacing must be linear or log");
            } else if (k == "E_in") {
                s.E_in_values.clear();
                for (const auto& item : split_list(v)) {
                    s.E_in_values.push_back(quantity(l, item, Dim::energy));
                    positive(l, s.E_in_values.back());
                }
            } else if (k == "fit_E_min") s.fit_E_min = quantity(l, v, Dim::energy);
            else if (k == "fit_E_max") s.fit_E_max = quantity(l, v, Dim::energy);
            else fail(l, "unknown key");
        } else if (l.section == "kk") {
            auto& kk = c.kk;
            if (k == "G0") kk.G0_path = v;
            else if (k == "Gm1") kk.Gm1_path = v;
            else if (k == "interpolation") {
                if (v == "linear") kk.interpolation = GInterpolation::linear;
                else if (v == "pchip_log") kk.interpolation = GInterpolation::pchip_log;
                else fail(l, "interpolation must be linear or pchip_log");
            } else if (k == "t_max") kk.t_max = parse_number(l, v), nonnegative(l, kk.t_max);
            else if (k == "t_steps") kk.t_steps = bounded_int(l, v, 2, 1000000);
            else if (k == "rate_scale") kk.rate_scale = parse_number(l, v), positive(l, kk.rate_scale);
            else fail(l, "unknown key");
        } else if (l.section == "retrieve") {
            auto& r = c.retrieve;
            if (k == "omega_B") r.omega_B = energy_or_frequency(l, v), positive(l, r.omega_B);
            else if (k == "amplitudes") {
                r.amplitudes.clear();
                for (const auto& item : split_list(v)) r.amplitudes.push_back(quantity(l, item, Dim::field));
            } else if (k == "lambda_floor") r.lambda_floor = parse_number(l, v), positive(l, r.lambda_floor);
            else if (k == "energy_tolerance") r.energy_tolerance = quantity(l, v, Dim::energy), positive(l, r.energy_tolerance);
            else fail(l, "unknown key");
        } else if (l.section == "ga") {
            auto& g = c.ga;
            if (k == "population") g.population = bounded_int(l, v, 4, 1000000);
            else if (k == "generations") g.generations = bounded_int(l, v, 1, 1000000);
            else if (k == "harmonics") g.n_harmonics = bounded_int(l, v, 1, 64);
            else if (k == "omega_min") g.omega_min_mhz = frequency_mhz(l, v), positive(l, g.omega_min_mhz);
            else if (k == "omega_max") g.omega_max_mhz = frequency_mhz(l, v), positive(l, g.omega_max_mhz);
            else if (k == "amplitude_max") g.amplitude_max = quantity(l, v, Dim::field), nonnegative(l, g.amplitude_max);
            else if (k == "mutation_scale") g.mutation_scale = parse_number(l, v), nonnegative(l, g.mutation_scale);
            else if (k == "mutation_probability") g.mutation_probability = parse_number(l, v);
            else if (k == "crossover_rate") g.crossover_rate = parse_number(l, v);
            else if (k == "blend_alpha") g.blend_alpha = parse_number(l, v), nonnegative(l, g.blend_alpha);
            else if (k == "tournament") g.tournament = bounded_int(l, v, 1, 1000);
            else if (k == "elitism") g.elitism = bounded_int(l, v, 0, 1000000);
            else if (k == "target") c.target = bounded_int(l, v, -1, 0);
            else fail(l, "unknown key");
        } else {
            fail(l, "unknown section [" + l.section + "]");
        }
    }

    if (!term_order.empty()) {
        c.model.terms.clear();
        for (const auto& tag : term_order) c.model.terms.push_back(finish_term(terms[tag]));
    }
    std::sort(c.pulse.harmonics.begin(), c.pulse.harmonics.end(),
              [](const Harmonic& a, const Harmonic& b) { return a.n < b.n; });

    // cross-field validation
    try {
        c.model.molecule.validate();
        c.pulse.validate();
        c.ga.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (c.model.grid.R_max > 0.0 && !(c.model.grid.R_max > c.model.grid.R_min))
        throw ConfigError("config: grid.R_max must exceed grid.R_min");
    if (c.scan.B0_max < c.scan.B0_min) throw ConfigError("config: scan.B0_max below scan.B0_min");
    if (c.scan.log_spacing && !(c.scan.B0_min > 0.0)) throw ConfigError("config: log spacing needs scan.B0_min > 0");
    if (std::abs(c.model.incident.M_J) > c.model.incident.J) throw ConfigError("config: invalid incident channel");
    c.ga.seed = c.seed;
    c.ga.threads = c.threads;
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream os;
    auto x = [](double v) { return fmt_exact(v); };
    os << "mode = " << c.mode << '\n';
    os << "seed = " << c.seed << '\n';
    os << "threads = " << c.threads << '\n';
    os << "out = " << c.out_dir << '\n';

    const auto& mol = c.model.molecule;
    os << "\n[molecule]\n";
    os << "B_e = " << x(mol.B_e) << " K\n";
    os << "gamma = " << x(mol.gamma) << " K\n";
    os << "lambda_ss = " << x(mol.lambda_ss) << " K\n";
    os << "mu0 = " << x(mol.mu0) << " K/G\n";
    os << "h_eff = " << x(mol.h_eff) << " K/G\n";

    os << "\n[pulse]\n";
    os << "B0 = " << x(c.pulse.B0) << " G\n";
    os << "omega_B = " << x(c.pulse.omega_B) << " K  # " << fmt12(units::mhz_from_omega(c.pulse.omega_B))
       << " MHz\n";
    for (const auto& h : c.pulse.harmonics) os << 'a' << h.n << " = " << x(h.amplitude) << " G\n";

    const auto& b = c.model.basis;
    os << "\n[basis]\n";
    os << "N_max = " << b.N_max << '\n';
    os << "n_max = " << (b.n_max < 0 ? std::string("auto") : std::to_string(b.n_max)) << '\n';
    os << "l_max = " << b.l_max << '\n';
    os << "parity = " << (b.parity % 2 == 0 ? "even" : "odd") << '\n';
    os << "M_total = " << b.M_total << '\n';

    os << "\n[collision]\n";
    os << "mu = " << x(c.model.mu) << " amu\n";
    os << "E_in = " << x(c.model.E_in) << " K\n";
    os << "incident = " << c.model.incident.N << ' ' << c.model.incident.J << ' ' << c.model.incident.M_J << '\n';

    int idx = 0;
    for (const auto& t : c.model.terms) {
        os << "\n[potential." << idx++ << "]\n";
        os << "lambda = " << t.lambda << '\n';
        switch (t.form) {
        case RadialTerm::Form::lennard_jones:
            os << "form = lj\nC12 = " << x(t.lj.C12) << " K*A^12\nC6 = " << x(t.lj.C6) << " K*A^6\n";
            break;
        case RadialTerm::Form::exp_disp:
            os << "form = expdisp\nA = " << x(t.ed.A) << " K\nbeta = " << x(t.ed.beta) << " 1/A\nC6 = " << x(t.ed.C6)
               << " K*A^6\n";
            break;
        case RadialTerm::Form::tabulated: os << "form = table\ntable = " << t.table.source() << '\n'; break;
        }
    }

    const auto& g = c.model.grid;
    os << "\n[grid]\n";
    os << "R_min = " << x(g.R_min) << " A\n";
    os << "R_max = " << (g.R_max > 0.0 ? x(g.R_max) + " A" : std::string("auto")) << '\n';
    os << "step_factor = " << x(g.step_factor) << '\n';
    os << "ref_energy = " << x(g.ref_energy) << " K\n";
    os << "h_min = " << x(g.h_min) << " A\n";
    os << "h_max = " << x(g.h_max) << " A\n";
    os << "fixed_step = " << x(g.fixed_step) << " A\n";
    os << "check_convergence = " << (g.check_convergence ? "true" : "false") << '\n';
    os << "convergence_tol = " << x(g.convergence_tol) << '\n';

    const auto& s = c.scan;
    os << "\n[scan]\n";
    os << "B0_min = " << x(s.B0_min) << " G\n";
    os << "B0_max = " << x(s.B0_max) << " G\n";
    os << "B0_steps = " << s.B0_steps << '\n';
    os << "spacing = " << (s.log_spacing ? "log" : "linear") << '\n';
    if (!s.E_in_values.empty()) {
        os << "E_in = ";
        for (std::size_t i = 0; i < s.E_in_values.size(); ++i) os << (i ? ", " : "") << x(s.E_in_values[i]) << " K";
        os << '\n';
    }
    os << "fit_E_min = " << x(s.fit_E_min) << " K\n";
    os << "fit_E_max = " << x(s.fit_E_max) << " K\n";

    os << "\n[kk]\n";
    if (!c.kk.G0_path.empty()) os << "G0 = " << c.kk.G0_path << '\n';
    if (!c.kk.Gm1_path.empty()) os << "Gm1 = " << c.kk.Gm1_path << '\n';
    os << "interpolation = " << (c.kk.interpolation == GInterpolation::linear ? "linear" : "pchip_log") << '\n';
    os << "t_max = " << x(c.kk.t_max) << '\n';
    os << "t_steps = " << c.kk.t_steps << '\n';
    os << "rate_scale = " << x(c.kk.rate_scale) << '\n';

    const auto& r = c.retrieve;
    os << "\n[retrieve]\n";
    if (r.omega_B > 0.0) os << "omega_B = " << x(r.omega_B) << " K\n";
    if (!r.amplitudes.empty()) {
        os << "amplitudes = ";
        for (std::size_t i = 0; i < r.amplitudes.size(); ++i) os << (i ? ", " : "") << x(r.amplitudes[i]) << " G";
        os << '\n';
    }
    os << "lambda_floor = " << x(r.lambda_floor) << '\n';
    os << "energy_tolerance = " << x(r.energy_tolerance) << " K\n";

    const auto& ga = c.ga;
    os << "\n[ga]\n";
    os << "population = " << ga.population << '\n';
    os << "generations = " << ga.generations << '\n';
    os << "harmonics = " << ga.n_harmonics << '\n';
    os << "omega_min = " << x(ga.omega_min_mhz) << " MHz\n";
    os << "omega_max = " << x(ga.omega_max_mhz) << " MHz\n";
    os << "amplitude_max = " << x(ga.amplitude_max) << " G\n";
    os << "mutation_scale = " << x(ga.mutation_scale) << '\n';
    os << "mutation_probability = " << x(ga.mutation_probability) << '\n';
    os << "crossover_rate = " << x(ga.crossover_rate) << '\n';
    os << "blend_alpha = " << x(ga.blend_alpha) << '\n';
    os << "tournament = " << ga.tournament << '\n';
    os << "elitism = " << ga.elitism << '\n';
    os << "target = " << c.target << '\n';
    return os.str();
}

} // namespace zenoscat
