#include "zenoscat/workflow.hpp"

#include "zenoscat/errors.hpp"
#include "zenoscat/format.hpp"
#include "zenoscat/kk.hpp"
#include "zenoscat/parallel.hpp"

#include <cmath>
#include <sstream>

namespace zenoscat {

double reduced_mass_he3_o17() noexcept {
    constexpr double he3 = 3.0160293;
    constexpr double o2 = 2.0 * 16.9991317;
    return he3 * o2 / (he3 + o2);
}

ModelSystem ModelSystem::reference() {
    ModelSystem m;
    m.molecule = MolecularConstants::oxygen17();
    constexpr double C12 = 5.4e7, C6 = 7.0e4;
    m.terms = {RadialTerm::make_lj(0, C12, C6), RadialTerm::make_lj(2, 0.1325 * C12, 0.05 * C6)};
    m.basis = {2, -1, 2, 0, 1};
    m.mu = reduced_mass_he3_o17();
    m.E_in = 1e-6;
    m.incident = {0, 1, 1};
    m.grid.R_min = 2.2;
    m.grid.R_max = 0.0;
    m.grid.step_factor = 0.02;
    return m;
}

int auto_floquet_window(const PulseTrain& pulse, double h_eff, int margin) {
    if (pulse.is_static()) return 0;
    const auto spec = modulation_coefficients(pulse, 2, h_eff);
    int K = spec.K_max;
    // shrink to the 1e-6 tail
    double tail = spec.tail_mass;
    while (K > 0 && tail + spec.weight(K) + spec.weight(-K) <= 1e-6) {
        tail += spec.weight(K) + spec.weight(-K);
        --K;
    }
    return K + margin;
}

std::shared_ptr<const CouplingMatrixProvider> make_provider(const ModelSystem& model, const PulseTrain& pulse) {
    model.molecule.validate();
    pulse.validate();
    const int n_max = model.basis.n_max >= 0 ? model.basis.n_max : auto_floquet_window(pulse, model.molecule.h_eff);
    auto eb = floquet_eigenbasis(model.molecule, pulse, model.basis.N_max, n_max, model.basis.parity);
    return std::make_shared<const CouplingMatrixProvider>(std::move(eb), model.basis.l_max, model.basis.M_total,
                                                          model.terms, model.basis.parity);
}

ScatteringResult floquet_run(const ModelSystem& model, const PulseTrain& pulse) {
    CollisionSystem sys;
    sys.mu = model.mu;
    sys.E_in = model.E_in;
    sys.incident = model.incident;
    sys.provider = make_provider(model, pulse);
    return scatter(sys, model.grid);
}

ScatteringResult static_run(const ModelSystem& model, double B0) {
    ModelSystem m = model;
    m.basis.n_max = 0;
    PulseTrain p;
    p.B0 = B0;
    p.omega_B = 1.0; // irrelevant without harmonics
    return floquet_run(m, p);
}

namespace {

ScanRow row_from(const ScatteringResult& r, const ModelSystem& model, double B0) {
    ScanRow row;
    row.B0 = B0;
    row.E_in = model.E_in;
    const auto& a = model.incident;
    auto get = [&](int MJ, double& E, double& s) {
        auto it = r.exits.find({{a.N, a.J, MJ}, 0});
        if (it != r.exits.end()) {
            E = it->second.E_out;
            s = it->second.sigma;
        }
    };
    double dummy;
    get(a.M_J - 1, row.E_out0, row.sigma0);
    get(a.M_J - 2, row.E_out_m1, row.sigma_m1);
    get(a.M_J, dummy, row.sigma_el);
    row.unitarity_defect = r.unitarity_defect;
    return row;
}

} // namespace

std::vector<ScanRow> static_scan(const ModelSystem& model, const std::vector<double>& B0, int threads) {
    std::vector<ScanRow> rows(B0.size());
    parallel_for(B0.size(), threads, [&](std::size_t i) { rows[i] = row_from(static_run(model, B0[i]), model, B0[i]); });
    return rows;
}

std::vector<ScanRow> incident_energy_scan(const ModelSystem& model, double B0, const std::vector<double>& E_in,
                                          int threads) {
    std::vector<ScanRow> rows(E_in.size());
    parallel_for(E_in.size(), threads, [&](std::size_t i) {
        ModelSystem m = model;
        m.E_in = E_in[i];
        rows[i] = row_from(static_run(m, B0), m, B0);
    });
    return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
    std::ostringstream os;
    os << "B0_G,E_in_K,E_out_0_K,sigma_0_A2,E_out_m1_K,sigma_m1_A2,sigma_el_A2,unitarity_defect\n";
    for (const auto& r : rows)
        os << fmt12(r.B0) << ',' << fmt12(r.E_in) << ',' << fmt12(r.E_out0) << ',' << fmt12(r.sigma0) << ','
           << fmt12(r.E_out_m1) << ',' << fmt12(r.sigma_m1) << ',' << fmt12(r.sigma_el) << ','
           << fmt12(r.unitarity_defect) << '\n';
    return os.str();
}

SlopeFit loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double x_min, double x_max) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < x_min || x[i] > x_max || !(x[i] > 0.0) || !(y[i] > 0.0)) continue;
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    SlopeFit f;
    f.points = n;
    if (n < 2) return f;
    const double d = n * sxx - sx * sx;
    f.slope = (n * sxy - sx * sy) / d;
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

ThresholdScan threshold_scan(const ModelSystem& model, const std::vector<double>& B0, double E_min, double E_max,
                             int threads) {
    ThresholdScan t;
    t.rows = static_scan(model, B0, threads);
    std::vector<double> e0, s0, e1, s1;
    for (const auto& r : t.rows) {
        e0.push_back(r.E_out0);
        s0.push_back(r.sigma0);
        e1.push_back(r.E_out_m1);
        s1.push_back(r.sigma_m1);
    }
    t.slope0 = loglog_slope(e0, s0, E_min, E_max);
    t.slope_m1 = loglog_slope(e1, s1, E_min, E_max);
    return t;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v;
    if (n == 1) return {a};
    for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
    return v;
}

std::vector<double> logspace(double a, double b, int n) {
    std::vector<double> v;
    if (n == 1) return {a};
    for (int i = 0; i < n; ++i) v.push_back(a * std::pow(b / a, double(i) / (n - 1)));
    return v;
}

} // namespace zenoscat
