// SPDX-License-Identifier: Apache-2.0
#include "sawline/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sawline/constants.hpp"
#include "sawline/delayline.hpp"
#include "sawline/gating.hpp"
#include "sawline/idt.hpp"
#include "sawline/junction.hpp"
#include "sawline/qubit.hpp"
#include "sawline/touchstone.hpp"

namespace sawline {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

SpectralWindow window_from(const std::string& text) {
    if (text == "none") return SpectralWindow::none();
    if (text == "hann") return SpectralWindow::hann();
    if (text == "hamming") return SpectralWindow::hamming();
    if (text.rfind("kaiser:", 0) == 0)
        return SpectralWindow::kaiser(RunConfig::parse_quantity(text.substr(7)));
    throw std::invalid_argument("unknown window '" + text + "' (none|hann|hamming|kaiser:<beta>)");
}

IdtDesign design_from(const RunConfig& cfg) {
    IdtDesign d;
    d.f0 = cfg.number_or("f0", 4.583e9);
    d.cg = cfg.number_or("cg", 318e-15);
    d.n_periods = static_cast<int>(cfg.number_or("n_periods", 50));
    d.z0 = cfg.number_or("z0", 50.0);
    const GeometryPreset& preset = GeometryPreset::by_name(cfg.str_or("preset", "unity-ratio"));
    d.gamma = cfg.number_or("gamma", preset.gamma);
    d.zeta = cfg.number_or("zeta", preset.zeta);
    d.validate();
    return d;
}

DelayLineScenario scenario_from(const RunConfig& cfg) {
    DelayLineScenario s;
    s.idt = design_from(cfg);
    s.k2 = cfg.number_or("k2", 2.32e-7);
    s.distance_d = cfg.number_or("distance", 1323e-6);
    s.v_saw = cfg.number_or("v_saw", 5063.0);
    s.t_crosstalk = cfg.number_or("t_crosstalk", 2.5e-9);
    const double xdb = cfg.number_or("crosstalk_db", -55.0);
    const double xphase = cfg.number_or("crosstalk_phase_deg", 0.0) * constants::pi / 180.0;
    s.crosstalk_amp = std::polar(from_db(xdb), xphase);
    s.decay_length_l = cfg.number_or("decay_length", 0.6e-3);
    s.noise_floor_db = cfg.number_or("noise_floor_db", 0.0);
    s.validate();
    return s;
}

FrequencyGrid grid_from(const RunConfig& cfg, const IdtDesign& idt) {
    return FrequencyGrid::around(cfg.number_or("grid_center", idt.f0),
                                 cfg.number_or("grid_halfspan", 0.6e9),
                                 static_cast<std::size_t>(cfg.number_or("grid_points", 1601)));
}

std::string sweep_csv(const FrequencySweep& sweep) {
    std::ostringstream out;
    out << "f_hz,s21_re,s21_im,s21_db\n";
    for (std::size_t k = 0; k < sweep.size(); ++k) {
        const cplx p = sweep.points[k];
        const double mag = std::abs(p);
        out << fmt(sweep.freq(k)) << ',' << fmt(p.real()) << ',' << fmt(p.imag()) << ','
            << fmt(mag > 0.0 ? to_db(mag) : -400.0) << '\n';
    }
    return out.str();
}

// detection path of the pipelines: hann-tapered transform keeps the
// crosstalk kernel skirt below weak acoustic arrivals
PathArrivals detect_arrivals(const FrequencySweep& sweep, const RunConfig& cfg) {
    const int pad = static_cast<int>(cfg.number_or("pad_factor", 8));
    const TimeTrace trace = to_time_domain(sweep, pad, SpectralWindow::hann());
    const double thr = cfg.number_or("threshold_db", -75.0);
    const double sep = cfg.number_or("min_separation", 15e-9);
    const auto peaks = detect_peaks(trace, thr, sep);
    const auto arrivals = identify_paths(peaks);
    if (!arrivals)
        throw std::invalid_argument("expected both crosstalk and acoustic arrivals, found " +
                                    std::to_string(peaks.size()) + " peak(s)");
    return *arrivals;
}

GateWindow gate_from(const RunConfig& cfg, const FrequencySweep& sweep) {
    GateWindow g;
    if (cfg.has("gate_lo") && cfg.has("gate_hi")) {
        g.t_lo = cfg.number("gate_lo");
        g.t_hi = cfg.number("gate_hi");
    } else {
        g = GateWindow::around_arrival(detect_arrivals(sweep, cfg).acoustic.time);
    }
    g.taper_fraction = cfg.number_or("gate_taper", 0.0);
    g.validate();
    return g;
}

FrequencySweep gated_from(const RunConfig& cfg, const FrequencySweep& sweep) {
    const GateWindow g = gate_from(cfg, sweep);
    const int pad = static_cast<int>(cfg.number_or("pad_factor", 8));
    const SpectralWindow win = window_from(cfg.str_or("window", "kaiser:13"));
    return apply_gate(sweep, g, pad, win);
}

const std::set<std::string> kDesignKeys = {"f0", "cg", "n_periods", "z0", "preset", "gamma", "zeta"};
const std::set<std::string> kScenarioKeys = {
    "k2", "distance", "v_saw", "t_crosstalk", "crosstalk_db", "crosstalk_phase_deg",
    "decay_length", "noise_floor_db", "grid_center", "grid_halfspan", "grid_points"};
const std::set<std::string> kGateKeys = {"pad_factor", "window", "gate_lo", "gate_hi",
                                         "gate_taper", "threshold_db", "min_separation",
                                         "edge_guard"};

std::set<std::string> merged(std::initializer_list<std::set<std::string>> sets) {
    std::set<std::string> out;
    for (const auto& s : sets) out.insert(s.begin(), s.end());
    return out;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
    auto allowed = merged({kDesignKeys, kScenarioKeys});
    allowed.insert({"distances", "seed", "out_prefix"});
    cfg.require_known(allowed);

    DelayLineScenario base = scenario_from(cfg);
    const FrequencyGrid grid = grid_from(cfg, base.idt);
    std::vector<double> distances =
        cfg.has("distances") ? cfg.number_list("distances") : std::vector<double>{base.distance_d};
    auto sweeps = synth_distance_series(base, distances, grid);
    if (base.noise_floor_db < 0.0) {
        const auto seed = static_cast<std::uint64_t>(cfg.number_or("seed", 1));
        for (std::size_t i = 0; i < sweeps.size(); ++i)
            sweeps[i] = add_noise(sweeps[i], base.noise_floor_db, seed + i);
    }
    const std::string prefix = cfg.str_or("out_prefix", "sweep");
    for (std::size_t i = 0; i < sweeps.size(); ++i) {
        const std::string stem = prefix + (sweeps.size() > 1 ? "_" + std::to_string(i) : "");
        atomic_write_file(stem + ".s2p", write_touchstone(sweeps[i]));
        atomic_write_file(stem + ".csv", sweep_csv(sweeps[i]));
        out << "wrote " << stem << ".s2p d=" << fmt(distances[i]) << " m, t_s="
            << fmt(base.t_crosstalk + distances[i] / base.v_saw) << " s\n";
    }
    return 0;
}

int cmd_gate(const RunConfig& cfg, std::ostream& out) {
    auto allowed = merged({kGateKeys});
    allowed.insert({"input", "out_touchstone", "out_csv", "out_peaks_csv"});
    cfg.require_known(allowed);

    const FrequencySweep sweep = parse_touchstone(read_file(cfg.str("input")));
    const int pad = static_cast<int>(cfg.number_or("pad_factor", 8));
    const TimeTrace trace = to_time_domain(sweep, pad, SpectralWindow::hann());
    const auto peaks =
        detect_peaks(trace, cfg.number_or("threshold_db", -75.0), cfg.number_or("min_separation", 15e-9));
    if (cfg.has("out_peaks_csv")) {
        std::ostringstream pk;
        pk << "time_s,amplitude\n";
        for (const Peak& p : peaks) pk << fmt(p.time) << ',' << fmt(p.amplitude) << '\n';
        atomic_write_file(cfg.str("out_peaks_csv"), pk.str());
    }
    for (const Peak& p : peaks) out << "peak t=" << fmt(p.time) << " s amp=" << fmt(p.amplitude) << "\n";

    const FrequencySweep gated = gated_from(cfg, sweep);
    const ResonanceEstimate res = resonance_metrics(gated, cfg.number_or("edge_guard", 0.05));
    out << "resonance f0=" << fmt(res.f0_est) << " Hz |S21|=" << fmt(res.s21_res) << " ("
        << fmt(to_db(res.s21_res)) << " dB)\n";
    if (cfg.has("out_touchstone")) atomic_write_file(cfg.str("out_touchstone"), write_touchstone(gated));
    if (cfg.has("out_csv")) atomic_write_file(cfg.str("out_csv"), sweep_csv(gated));
    return 0;
}

// shared by fit-velocity and fit-loss: load sweeps, locate both arrivals
struct SeriesPoint {
    double distance;
    PathArrivals arrivals;
    FrequencySweep sweep;
};

std::vector<SeriesPoint> load_series(const RunConfig& cfg) {
    const auto inputs = cfg.str_list("inputs");
    std::vector<double> distances;
    if (cfg.has("distances")) {
        distances = cfg.number_list("distances");
        if (distances.size() != inputs.size())
            throw std::invalid_argument("distances list must match inputs list");
    }
    std::vector<SeriesPoint> series;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        SeriesPoint pt;
        pt.sweep = parse_touchstone(read_file(inputs[i]));
        pt.distance = distances.empty() ? pt.sweep.meta.distance_m : distances[i];
        if (!(pt.distance > 0.0))
            throw std::invalid_argument("no distance for input '" + inputs[i] +
                                        "' (missing meta and no distances key)");
        pt.arrivals = detect_arrivals(pt.sweep, cfg);
        series.push_back(std::move(pt));
    }
    return series;
}

int cmd_fit_velocity(const RunConfig& cfg, std::ostream& out) {
    auto allowed = merged({kGateKeys});
    allowed.insert({"inputs", "distances", "out_csv"});
    cfg.require_known(allowed);

    const auto series = load_series(cfg);
    std::vector<std::pair<double, double>> pairs;
    for (const auto& pt : series)
        pairs.emplace_back(pt.distance, pt.arrivals.acoustic.time - pt.arrivals.crosstalk.time);
    const FitResult fit = fit_velocity(pairs);

    std::ostringstream csv;
    csv << "d_m,delta_t_s\n";
    for (const auto& [d, dt] : pairs) csv << fmt(d) << ',' << fmt(dt) << '\n';
    if (cfg.has("out_csv")) atomic_write_file(cfg.str("out_csv"), csv.str());
    out << "v = " << fmt(fit.param("v")) << " m/s (sigma " << fmt(std::sqrt(fit.covariance[0][0]))
        << ", residual rms " << fmt(fit.residual_rms) << " m)\n";
    return 0;
}

int cmd_fit_loss(const RunConfig& cfg, std::ostream& out) {
    auto allowed = merged({kGateKeys});
    allowed.insert({"inputs", "distances", "out_csv"});
    cfg.require_known(allowed);

    const auto series = load_series(cfg);
    std::vector<std::pair<double, double>> points;
    for (const auto& pt : series) {
        RunConfig sub = cfg;
        const FrequencySweep gated = gated_from(sub, pt.sweep);
        const ResonanceEstimate res = resonance_metrics(gated, cfg.number_or("edge_guard", 0.05));
        points.emplace_back(pt.distance, res.s21_res);
    }
    const FitResult fit = fit_decay(points);

    std::ostringstream csv;
    csv << "d_m,s21_res\n";
    for (const auto& [d, s] : points) csv << fmt(d) << ',' << fmt(s) << '\n';
    if (cfg.has("out_csv")) atomic_write_file(cfg.str("out_csv"), csv.str());
    out << "A = " << fmt(fit.param("A")) << ", l = " << fmt(fit.param("l")) << " m"
        << (fit.lossless_regime ? " (slope indistinguishable from 0: L ~ 1 regime)" : "") << "\n";
    return 0;
}

int cmd_extract_k2(const RunConfig& cfg, std::ostream& out) {
    auto allowed = merged({kDesignKeys, kGateKeys});
    allowed.insert({"input", "prop_loss", "out_csv"});
    cfg.require_known(allowed);

    const IdtDesign design = design_from(cfg);
    const FrequencySweep sweep = parse_touchstone(read_file(cfg.str("input")));
    const FrequencySweep gated = gated_from(cfg, sweep);
    const ResonanceEstimate res = resonance_metrics(gated, cfg.number_or("edge_guard", 0.05));
    const double prop_loss = cfg.number_or("prop_loss", 1.0);
    const double k2 = extract_k2(design, res.s21_res, prop_loss);

    if (cfg.has("out_csv")) {
        std::ostringstream csv;
        csv << "f0_est_hz,s21_res,s21_res_db,prop_loss,k2\n";
        csv << fmt(res.f0_est) << ',' << fmt(res.s21_res) << ',' << fmt(to_db(res.s21_res)) << ','
            << fmt(prop_loss) << ',' << fmt(k2) << '\n';
        atomic_write_file(cfg.str("out_csv"), csv.str());
    }
    out << "K2 = " << fmt(k2) << " (|S21| = " << fmt(res.s21_res) << " = "
        << fmt(to_db(res.s21_res)) << " dB at f0 = " << fmt(res.f0_est) << " Hz, L = "
        << fmt(prop_loss) << ")\n";
    return 0;
}

int cmd_qubit_q(const RunConfig& cfg, std::ostream& out) {
    auto allowed = merged({kDesignKeys});
    allowed.insert({"k2", "cg_q", "l_j", "f_plasmon", "table", "f", "band_lo", "band_hi",
                    "band_points", "out_csv"});
    cfg.require_known(allowed);

    QubitModel model;
    model.cg_q = cfg.number("cg_q");
    if (cfg.has("l_j"))
        model.l_j = cfg.number("l_j");
    else if (cfg.has("f_plasmon")) {
        const double fp = cfg.number("f_plasmon");
        model.l_j = 1.0 / (4.0 * constants::pi * constants::pi * fp * fp * model.cg_q);
    } else {
        throw std::invalid_argument("qubit-q requires l_j or f_plasmon");
    }
    if (cfg.has("table")) {
        model.admittance_source = load_admittance_table(read_file(cfg.str("table")));
    } else {
        QubitModel::IdtSource src;
        src.design = design_from(cfg);
        src.k2 = cfg.number_or("k2", 2.32e-7);
        model.admittance_source = src;
    }
    model.validate();

    const double fq = cfg.has("f") ? cfg.number("f") : qubit_frequency(model);
    out << "f_q = " << fmt(fq) << " Hz, Q = " << fmt(q_factor(model, fq))
        << ", T1 = " << fmt(t1(model, fq)) << " s\n";

    if (cfg.has("out_csv")) {
        const double lo = cfg.number_or("band_lo", fq * 0.96);
        const double hi = cfg.number_or("band_hi", fq * 1.04);
        const std::size_t npts = static_cast<std::size_t>(cfg.number_or("band_points", 401));
        if (!(lo < hi) || npts < 2) throw std::invalid_argument("qubit-q: bad band");
        std::ostringstream csv;
        csv << "f_hz,ga_siemens,q,t1_s\n";
        for (std::size_t i = 0; i < npts; ++i) {
            const double f = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(npts - 1);
            csv << fmt(f) << ',' << fmt(model.ga(f)) << ',' << fmt(q_factor(model, f)) << ','
                << fmt(t1(model, f)) << '\n';
        }
        atomic_write_file(cfg.str("out_csv"), csv.str());
    }
    return 0;
}

int cmd_charge_profile(const RunConfig& cfg, std::ostream& out) {
    cfg.require_known({"metal_work_function", "electron_affinity", "band_gap", "intrinsic_density",
                       "eps_r", "temperature", "domain", "oxide_eot", "biases", "mesh_h0",
                       "mesh_growth", "out_prefix"});

    JunctionSpec spec;
    spec.metal_work_function = cfg.number_or("metal_work_function", 4.28);
    spec.semiconductor_electron_affinity = cfg.number_or("electron_affinity", 4.05);
    spec.band_gap = cfg.number_or("band_gap", 1.12);
    spec.intrinsic_density = cfg.number_or("intrinsic_density", 1.0e16);
    spec.relative_permittivity = cfg.number_or("eps_r", 11.7);
    spec.temperature = cfg.number_or("temperature", 300.0);
    spec.domain_length = cfg.number_or("domain", 50e-6);
    spec.oxide_eot = cfg.number_or("oxide_eot", 0.0);
    spec.mesh_h0 = cfg.number_or("mesh_h0", 1e-10);
    spec.mesh_growth = cfg.number_or("mesh_growth", 1.05);

    const std::vector<double> biases =
        cfg.has("biases") ? cfg.number_list("biases") : std::vector<double>{0.0};
    const auto profiles = bias_sweep(spec, biases);
    const std::string prefix = cfg.str_or("out_prefix", "junction");
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        const JunctionProfile& p = profiles[i];
        std::ostringstream csv;
        csv << "x_m,phi_v,ne_m3,nh_m3\n";
        for (std::size_t j = 0; j < p.x.size(); ++j)
            csv << fmt(p.x[j]) << ',' << fmt(p.phi[j]) << ',' << fmt(p.n_e[j]) << ','
                << fmt(p.n_h[j]) << '\n';
        const std::string stem =
            prefix + (profiles.size() > 1 ? "_" + std::to_string(i) : "") + ".csv";
        atomic_write_file(stem, csv.str());
        JunctionSpec biased = spec;
        biased.bias_v = biases[i];
        out << "bias " << fmt(biases[i]) << " V: phi_s = " << fmt(p.surface_potential)
            << " V, sheet charge = " << fmt(sheet_charge(biased, p)) << " C/m^2, n_e(0)-n_h(0) = "
            << fmt(p.n_e.front() - p.n_h.front()) << " m^-3 -> " << stem << "\n";
    }
    return 0;
}

}  // namespace

std::string usage_text() {
    return "usage: sawline <subcommand> <config-file> [key=value ...]\n"
           "subcommands:\n"
           "  simulate        synthesize delay-line sweeps (.s2p + .csv)\n"
           "  gate            time-gate a sweep, report peaks and resonance\n"
           "  fit-velocity    arrival-time fit d = v*dt over a distance series\n"
           "  fit-loss        exponential decay fit |S21,0| = A exp(-d/2l)\n"
           "  extract-k2      gate + resonance + electromechanical coupling\n"
           "  qubit-q         piezoelectric-loss-limited qubit Q, T1\n"
           "  charge-profile  1D interface charge profile under bias\n";
}

void atomic_write_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("short write to '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename '" + tmp + "' to '" + path + "'");
}

int run_subcommand(const std::string& name, const RunConfig& config, std::ostream& out,
                   std::ostream& err) {
    try {
        if (name == "simulate") return cmd_simulate(config, out);
        if (name == "gate") return cmd_gate(config, out);
        if (name == "fit-velocity") return cmd_fit_velocity(config, out);
        if (name == "fit-loss") return cmd_fit_loss(config, out);
        if (name == "extract-k2") return cmd_extract_k2(config, out);
        if (name == "qubit-q") return cmd_qubit_q(config, out);
        if (name == "charge-profile") return cmd_charge_profile(config, out);
        err << "unknown subcommand '" << name << "'\n" << usage_text();
        return 1;
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace sawline
