#include "zenoscat/run.hpp"

#include "zenoscat/errors.hpp"
#include "zenoscat/format.hpp"
#include "zenoscat/kk.hpp"
#include "zenoscat/parallel.hpp"
#include "zenoscat/retrieval.hpp"
#include "zenoscat/units.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

namespace zenoscat {

using ojson = nlohmann::ordered_json;

const std::string* RunRecord::file(const std::string& name) const {
    for (const auto& [n, text] : files)
        if (n == name) return &text;
    return nullptr;
}

std::string RunRecord::jsonl() const {
    ojson j;
    j["version"] = kVersion;
    j["mode"] = mode;
    j["config"] = config_echo;
    j["wall_seconds"] = wall_seconds;
    j["results"] = results;
    j["diagnostics"] = diagnostics;
    j["warnings"] = warnings;
    ojson names = ojson::array();
    for (const auto& f : files) names.push_back(f.first);
    j["files"] = names;
    return j.dump();
}

std::vector<double> scan_fields(const ScanConfig& scan) {
    if (scan.B0_steps == 1) return {scan.B0_min};
    return scan.log_spacing ? logspace(scan.B0_min, scan.B0_max, scan.B0_steps)
                            : linspace(scan.B0_min, scan.B0_max, scan.B0_steps);
}

TransitionProbabilityTable g_table_from_scan(const std::vector<ScanRow>& rows, int f, GInterpolation interp) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rows) {
        const double E = f == 0 ? r.E_out0 : r.E_out_m1;
        const double s = f == 0 ? r.sigma0 : r.sigma_m1;
        if (E > 0.0) pts.emplace_back(E, s);
    }
    std::sort(pts.begin(), pts.end());
    std::vector<double> E, G;
    for (const auto& [e, s] : pts) {
        if (!E.empty() && e <= E.back()) continue;
        E.push_back(e);
        G.push_back(s);
    }
    if (E.empty()) throw NumericalError("static scan has no open exit points for channel " + std::to_string(f));
    return TransitionProbabilityTable(f, E, G, interp);
}

namespace {

ChannelLabel exit_label(int f) { return {0, 1, f}; }

std::string exits_csv(const ScatteringResult& r) {
    std::ostringstream os;
    os << "N,J,M_J,K,E_out_K,sigma_A2\n";
    for (const auto& [idx, e] : r.exits)
        os << idx.alpha.N << ',' << idx.alpha.J << ',' << idx.alpha.M_J << ',' << idx.K << ',' << fmt12(e.E_out) << ','
           << fmt12(e.sigma) << '\n';
    return os.str();
}

double channel_sum(const ScatteringResult& r, int f) {
    double s = 0.0;
    for (const auto& [idx, e] : r.exits)
        if (idx.alpha == exit_label(f)) s += e.sigma;
    return s;
}

// max |E_out - (E_in + Delta_f - K omega)| over the ladders of f, Delta_f from the K = 0 member
double bookkeeping_residual(const ScatteringResult& r, double E_in, double omega, int f) {
    const auto zero = r.exits.find(LadderIndex{exit_label(f), 0});
    if (zero == r.exits.end()) return 0.0;
    const double gap = zero->second.E_out - E_in;
    double worst = 0.0;
    for (const auto& [idx, e] : r.exits)
        if (idx.alpha == exit_label(f))
            worst = std::max(worst, std::abs(e.E_out - (E_in + gap - idx.K * omega)));
    return worst;
}

void add_spectra(RunRecord& rec, const PulseTrain& pulse, double h_eff) {
    for (int f : {0, -1}) {
        const int q = channel_charge(f);
        rec.files.emplace_back("lambda_q" + std::to_string(q) + ".csv",
                               modulation_coefficients(pulse, q, h_eff).to_csv());
    }
}

std::pair<TransitionProbabilityTable, TransitionProbabilityTable> load_tables(const RunConfig& c) {
    if (c.kk.G0_path.empty() || c.kk.Gm1_path.empty())
        throw ConfigError("mode " + c.mode + " needs kk.G0 and kk.Gm1 table paths");
    return {TransitionProbabilityTable::load(c.kk.G0_path, 0, c.kk.interpolation),
            TransitionProbabilityTable::load(c.kk.Gm1_path, -1, c.kk.interpolation)};
}

ojson prediction_json(const BranchingPrediction& p) {
    return ojson{{"sigma0_hat", p.sigma0}, {"sigma_m1_hat", p.sigma_m1}, {"ratio", p.ratio}};
}

void static_scan_mode(const RunConfig& c, RunRecord& rec) {
    const auto fields = scan_fields(c.scan);
    const auto rows = static_scan(c.model, fields, c.threads);
    rec.files.emplace_back("sigma_vs_B0.csv", scan_csv(rows));
    rec.files.emplace_back("G0_static.csv", g_table_from_scan(rows, 0).to_csv());
    rec.files.emplace_back("Gm1_static.csv", g_table_from_scan(rows, -1).to_csv());
    double worst = 0.0;
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        worst = std::max(worst, rows[i].unitarity_defect);
        const double r = rows[i].sigma0 / rows[i].sigma_m1;
        if (r < rows[lo].sigma0 / rows[lo].sigma_m1) lo = i;
        if (r > rows[hi].sigma0 / rows[hi].sigma_m1) hi = i;
    }
    rec.results["points"] = rows.size();
    rec.results["min_ratio"] = {{"B0_G", rows[lo].B0}, {"ratio", rows[lo].sigma0 / rows[lo].sigma_m1}};
    rec.results["max_ratio"] = {{"B0_G", rows[hi].B0}, {"ratio", rows[hi].sigma0 / rows[hi].sigma_m1}};
    rec.diagnostics["max_unitarity_defect"] = worst;
}

void floquet_mode(const RunConfig& c, RunRecord& rec) {
    const auto r = floquet_run(c.model, c.pulse);
    rec.files.emplace_back("floquet_sigma.csv", exits_csv(r));
    add_spectra(rec, c.pulse, c.model.molecule.h_eff);
    const double s0 = channel_sum(r, 0), sm1 = channel_sum(r, -1);
    rec.results["sigma0"] = s0;
    rec.results["sigma_m1"] = sm1;
    rec.results["ratio"] = s0 / sm1;
    rec.results["sigma_inelastic"] = r.sigma_total_inelastic();
    rec.results["open_channels"] = r.open.size();
    rec.diagnostics["unitarity_defect"] = r.unitarity_defect;
    rec.diagnostics["symmetry_defect"] = r.symmetry_defect;
    rec.diagnostics["R_max_A"] = r.R_max;
    rec.diagnostics["steps"] = r.pairs;
    if (r.convergence_delta >= 0.0) rec.diagnostics["convergence_delta"] = r.convergence_delta;
    rec.diagnostics["bookkeeping_residual_K"] =
        std::max(bookkeeping_residual(r, c.model.E_in, c.pulse.omega_B, 0),
                 bookkeeping_residual(r, c.model.E_in, c.pulse.omega_B, -1));
}

void threshold_mode(const RunConfig& c, RunRecord& rec) {
    const auto ts = threshold_scan(c.model, scan_fields(c.scan), c.scan.fit_E_min, c.scan.fit_E_max, c.threads);
    rec.files.emplace_back("threshold_B0.csv", scan_csv(ts.rows));
    rec.files.emplace_back("G0_static.csv", g_table_from_scan(ts.rows, 0).to_csv());
    rec.files.emplace_back("Gm1_static.csv", g_table_from_scan(ts.rows, -1).to_csv());
    rec.results["slope_G0"] = {{"slope", ts.slope0.slope}, {"points", ts.slope0.points}};
    rec.results["slope_Gm1"] = {{"slope", ts.slope_m1.slope}, {"points", ts.slope_m1.points}};
    if (!c.scan.E_in_values.empty()) {
        const auto rows = incident_energy_scan(c.model, c.pulse.B0, c.scan.E_in_values, c.threads);
        rec.files.emplace_back("threshold_Ein.csv", scan_csv(rows));
        std::vector<double> E, s0, sm1;
        for (const auto& r : rows) {
            E.push_back(r.E_in);
            s0.push_back(r.sigma0);
            sm1.push_back(r.sigma_m1);
        }
        const double lo = *std::min_element(E.begin(), E.end()), hi = *std::max_element(E.begin(), E.end());
        rec.results["slope_sigma0_vs_E_in"] = loglog_slope(E, s0, lo, hi).slope;
        rec.results["slope_sigma_m1_vs_E_in"] = loglog_slope(E, sm1, lo, hi).slope;
    }
}

void kk_mode(const RunConfig& c, RunRecord& rec) {
    const auto [G0, Gm1] = load_tables(c);
    const double h = c.model.molecule.h_eff;
    const auto p = predict_branching(c.pulse, G0, Gm1, h);
    std::ostringstream os;
    os << "sigma0_hat,sigma_m1_hat,ratio\n" << fmt12(p.sigma0) << ',' << fmt12(p.sigma_m1) << ',' << fmt12(p.ratio)
       << '\n';
    rec.files.emplace_back("kk_prediction.csv", os.str());
    add_spectra(rec, c.pulse, h);
    rec.results = prediction_json(p);
    if (c.kk.t_max > 0.0) {
        const auto trace = decay_trace(c.pulse, G0, Gm1, h, linspace(0.0, c.kk.t_max, c.kk.t_steps), c.kk.rate_scale);
        rec.files.emplace_back("decay_trace.csv", trace.to_csv());
        rec.results["rate0"] = trace.rate0;
        rec.results["rate_m1"] = trace.rate_m1;
        for (const auto& w : trace.warnings) rec.warnings.push_back(w);
    }
}

void retrieve_mode(const RunConfig& c, RunRecord& rec) {
    if (c.retrieve.amplitudes.empty()) throw ConfigError("retrieve mode needs retrieve.amplitudes");
    const double omega = c.retrieve.omega_B > 0.0 ? c.retrieve.omega_B : c.pulse.omega_B;
    const double h = c.model.molecule.h_eff;
    const auto pulses = trial_pulse_ladder(c.pulse.B0, omega, c.retrieve.amplitudes);
    TrialRunSet set;
    set.runs.resize(pulses.size());
    std::vector<ojson> diag(pulses.size());
    parallel_for(pulses.size(), c.threads, [&](std::size_t i) {
        const auto r = floquet_run(c.model, pulses[i]);
        set.runs[i] = trial_from_scattering(pulses[i], r, h);
        diag[i] = ojson{{"trial", i}, {"unitarity_defect", r.unitarity_defect}, {"open_channels", r.open.size()}};
    });
    std::ostringstream trials;
    trials << "trial,a1_G,f,K,E_out_K,sigma_A2,abs2_lambda\n";
    for (std::size_t i = 0; i < set.runs.size(); ++i) {
        const auto& t = set.runs[i];
        const double a = t.pulse.harmonics.empty() ? 0.0 : t.pulse.harmonics.front().amplitude;
        for (const auto& [f, byK] : t.sigma)
            for (const auto& [K, s] : byK)
                trials << i << ',' << fmt12(a) << ',' << f << ',' << K << ',' << fmt12(t.E_out.at(f).at(K)) << ','
                       << fmt12(s) << ',' << fmt12(t.spectra.at(f).weight(-K)) << '\n';
    }
    rec.files.emplace_back("trials.csv", trials.str());
    RetrievalOptions opt;
    opt.lambda_floor = c.retrieve.lambda_floor;
    opt.energy_tolerance = c.retrieve.energy_tolerance;
    for (int f : {0, -1}) {
        const auto res = retrieve_G(set, f, opt);
        rec.files.emplace_back(f == 0 ? "G0_retrieved.csv" : "Gm1_retrieved.csv", res.table.to_csv());
        rec.results[f == 0 ? "G0_points" : "Gm1_points"] = res.table.energies().size();
        for (const auto& w : res.warnings) rec.warnings.push_back("f=" + std::to_string(f) + ": " + w);
    }
    rec.diagnostics["trials"] = diag;
}

void optimize_mode(const RunConfig& c, RunRecord& rec) {
    const auto [G0, Gm1] = load_tables(c);
    const auto res = ga_optimize(c.ga, G0, Gm1, c.pulse.B0, c.target, c.model.molecule.h_eff);
    RunConfig best = c;
    best.mode = "floquet-run";
    best.pulse = res.best;
    rec.files.emplace_back("best_pulse.cfg", serialize_config(best));
    rec.files.emplace_back("ga_history.jsonl", res.history_jsonl());
    std::ostringstream os;
    os << "objective_static,objective_best,sigma0_hat,sigma_m1_hat,ratio,static_ratio,selectivity,"
          "static_selectivity\n"
       << fmt12(res.static_objective) << ',' << fmt12(res.best_objective) << ',' << fmt12(res.prediction.sigma0)
       << ',' << fmt12(res.prediction.sigma_m1) << ',' << fmt12(res.prediction.ratio) << ','
       << fmt12(res.static_prediction.ratio) << ',' << fmt12(res.selectivity()) << ','
       << fmt12(res.static_selectivity()) << '\n';
    rec.files.emplace_back("optimize_summary.csv", os.str());
    rec.results["target"] = c.target;
    rec.results["objective_static"] = res.static_objective;
    rec.results["objective_best"] = res.best_objective;
    rec.results["prediction"] = prediction_json(res.prediction);
    rec.results["static_prediction"] = prediction_json(res.static_prediction);
    rec.results["selectivity"] = res.selectivity();
    rec.results["static_selectivity"] = res.static_selectivity();
    rec.results["best_omega_MHz"] = units::mhz_from_omega(res.best.omega_B);
    ojson amps = ojson::array();
    for (const auto& hm : res.best.harmonics) amps.push_back(hm.amplitude);
    rec.results["best_amplitudes_G"] = amps;
}

} // namespace

RunRecord run(const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    RunRecord rec;
    rec.mode = config.mode;
    rec.config_echo = serialize_config(config);
    rec.results["seed"] = config.seed;
    static const std::vector<std::pair<std::string, std::function<void(const RunConfig&, RunRecord&)>>> modes{
        {"static-scan", static_scan_mode}, {"floquet-run", floquet_mode}, {"threshold-scan", threshold_mode},
        {"kk-predict", kk_mode},          {"retrieve", retrieve_mode},   {"optimize", optimize_mode}};
    auto it = std::find_if(modes.begin(), modes.end(), [&](const auto& m) { return m.first == config.mode; });
    if (it == modes.end()) throw ConfigError("unknown mode '" + config.mode + "'");
    try {
        it->second(config, rec);
    } catch (const ConfigError& e) {
        throw ConfigError("mode " + config.mode + ": " + e.what());
    } catch (const NumericalError& e) {
        throw NumericalError("mode " + config.mode + ": " + e.what());
    }
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

void write_outputs(const RunRecord& record, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + out_dir + "': " + ec.message());
    for (const auto& [name, text] : record.files) {
        std::ofstream out(fs::path(out_dir) / name, std::ios::binary);
        if (!out) throw ConfigError("cannot write '" + (fs::path(out_dir) / name).string() + "'");
        out << text;
    }
    std::ofstream log(fs::path(out_dir) / "run_record.jsonl", std::ios::app);
    if (!log) throw ConfigError("cannot write run_record.jsonl in '" + out_dir + "'");
    log << record.jsonl() << '\n';
}

} // namespace zenoscat
