// run.hpp: Experiment orchestration behind the command-line tool: model assembly,
// output files, parameter sweeps and the randomized self-test.

#pragma once

#include "bosonet/app/config.hpp"
#include "bosonet/metrics.hpp"
#include "bosonet/oracle.hpp"
#include "bosonet/propagation.hpp"
#include "bosonet/reservoirs.hpp"
#include "bosonet/stationary.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>
#include <variant>

namespace bosonet::app {

namespace fs = std::filesystem;

// ------------------------------- Model ---------------------------------------

struct Model {
    CouplingMatrix h;
    NormalModes modes;
    RateMatrices rates;
    CouplingRegime regime = CouplingRegime::Weak;
    std::optional<Propagator> propagator;
};

inline Model build_model(const RunConfig& cfg) {
    Model m;
    m.h = build_hamiltonian(cfg.network);
    m.modes = normal_modes(m.h);

    ReservoirSpec res = cfg.reservoirs;
    if (cfg.normalization == RateNormalization::Total) {
        const double n = static_cast<double>(cfg.network.size());
        for (auto& p : res.profile) p.gamma /= n;
    }
    switch (cfg.regime) {
        case RegimeChoice::Auto: m.regime = coupling_regime(cfg.network, cfg.regime_threshold); break;
        case RegimeChoice::Weak: m.regime = CouplingRegime::Weak; break;
        case RegimeChoice::Strong: m.regime = CouplingRegime::Strong; break;
    }
    if (res.common) m.rates = rates_common(res, m.modes);
    else if (m.regime == CouplingRegime::Weak) m.rates = rates_weak(res, cfg.network);
    else m.rates = rates_distinct(res, m.modes);

    if (max_abs(m.rates.gamma) == 0.0 && max_abs(m.rates.upsilon) == 0.0) {
        m.propagator = Propagator::free(m.modes);
    } else {
        DissipativeMatrix hd = dissipative_matrix(m.h, m.rates.gamma);
        StationaryWidth pi = solve_pi_eigen(hd, m.rates.upsilon);
        m.propagator = Propagator::dissipative(std::move(hd), std::move(pi));
    }
    return m;
}

inline CoherentMixture coherent_state(const RunConfig& cfg) {
    const StateConfig& st = cfg.state;
    if (st.kind == StateConfig::Kind::Cat) {
        return build_cat_family(cfg.network.size(), st.r, st.s, st.alpha, st.beta, st.sign);
    }
    require(st.kind == StateConfig::Kind::Coherent, Errc::Configuration, "state is not a coherent mixture");
    return CoherentMixture::make(st.coherent);
}

inline FockMixture fock_state(const RunConfig& cfg) {
    require(cfg.state.kind == StateConfig::Kind::Fock, Errc::Configuration, "state is not a Fock mixture");
    return FockMixture::make(cfg.state.fock);
}

// ------------------------------- Reports -------------------------------------

inline json time_json(const Time& t) { return t.is_infinite() ? json("inf") : json(t.value()); }

inline std::vector<double> tau_grid(const RunConfig& cfg, const Model& model) {
    double end = 0.0;
    if (cfg.tau.grid_end) {
        end = *cfg.tau.grid_end;
    } else if (model.propagator->is_free()) {
        end = cfg.times.back() > 0.0 ? cfg.times.back() : 1.0;
    } else {
        const auto& omega = model.propagator->generator().omega_big;
        double slowest = std::numeric_limits<double>::infinity();
        for (Eigen::Index k = 0; k < omega.size(); ++k) slowest = std::min(slowest, omega(k).real());
        end = 40.0 / slowest;
    }
    return linspace(0.0, end, static_cast<std::size_t>(cfg.tau.grid_points));
}

inline DecoherenceReport decoherence_report(const RunConfig& cfg, const Model& model, const CoherentMixture& state) {
    DecoherenceReport rep;
    rep.regime = model.regime;
    rep.tau_diff = mean_diffusion_time(model.rates.upsilon);
    rep.tau_dir = directional_diffusion_times(*model.propagator, cfg.tau.directional_step);
    const auto& branches = state.branches();
    if (cfg.tau.branch >= branches.size()) throw ConfigError("tau.branch", "branch index out of range");
    const std::size_t comps = branches[cfg.tau.branch].components.size();
    if (comps >= 2) {
        if (cfg.tau.r >= comps || cfg.tau.s >= comps) throw ConfigError("tau.pair", "component index out of range");
        rep.tau_int = interference_decay_time(state, *model.propagator, tau_grid(cfg, model), cfg.tau.r, cfg.tau.s, cfg.tau.branch);
    } else {
        rep.tau_int = Time::infinite();
    }
    rep.tau_d = decoherence_time(rep.tau_diff, rep.tau_int);
    return rep;
}

inline json report_json(const DecoherenceReport& rep) {
    json dir = json::array();
    for (const auto& t : rep.tau_dir) dir.push_back(time_json(t));
    return {{"tau_diff", time_json(rep.tau_diff)},
            {"tau_dir", dir},
            {"tau_int", time_json(rep.tau_int)},
            {"tau_d", time_json(rep.tau_d)},
            {"regime", to_string(rep.regime)}};
}

// ------------------------------- Writers -------------------------------------

inline std::string header_block(const RunConfig& cfg) {
    return std::string("# bosonet ") + kVersion + "\n# config_hash " + hash_hex(config_hash(cfg)) + "\n";
}

inline std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

// Write to a temporary name, then rename into place.
inline void write_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

inline std::string dcoef_csv(const RunConfig& cfg, const Model& model) {
    std::ostringstream os;
    os << header_block(cfg) << "t";
    for (std::size_t m = 0; m < cfg.network.size(); ++m) os << ",D" << (m + 1);
    os << "\n";
    for (double t : cfg.times) {
        const PropagatorBundle b = model.propagator->bundle(t);
        os << fmt(t);
        for (Eigen::Index m = 0; m < b.dcoef.size(); ++m) os << "," << fmt(b.dcoef(m));
        os << "\n";
    }
    return os.str();
}

inline std::string entropy_csv(const RunConfig& cfg, const Model& model, const CoherentMixture& state) {
    std::ostringstream os;
    os << header_block(cfg) << "t,S\n";
    for (double t : cfg.times) os << fmt(t) << "," << fmt(linear_entropy(state, model.propagator->bundle(t))) << "\n";
    return os.str();
}

inline std::string wigner_csv(const RunConfig& cfg, const Model& model) {
    const double t = cfg.wigner_grid.time.value_or(cfg.times.back());
    const PropagatorBundle b = model.propagator->bundle(t);
    const std::size_t n = cfg.network.size();
    std::optional<CoherentMixture> coherent;
    std::optional<FockMixture> fock;
    if (cfg.state.kind == StateConfig::Kind::Fock) fock = fock_state(cfg);
    else coherent = coherent_state(cfg);

    std::ostringstream os;
    os << header_block(cfg) << "# t " << fmt(t) << "\n";
    for (std::size_t m = 0; m < n; ++m) os << "re_xi" << (m + 1) << ",im_xi" << (m + 1) << ",";
    os << "W\n";

    // odometer over 2N axes
    std::vector<int> idx(2 * n, 0);
    ComplexVector xi(static_cast<Eigen::Index>(n));
    auto coord = [](double lo, double hi, int points, int i) {
        return points == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    };
    while (true) {
        for (std::size_t m = 0; m < n; ++m) {
            const GridAxis& a = cfg.wigner_grid.ranges[m];
            xi(static_cast<Eigen::Index>(m)) = Complex(coord(a.re_min, a.re_max, a.points, idx[2 * m]),
                                                       coord(a.im_min, a.im_max, a.points, idx[2 * m + 1]));
        }
        double w = 0.0;
        if (coherent) {
            w = wigner(*coherent, xi, b);
        } else {
            w = wigner_from_char([&](const ComplexVector& eta) { return char_function_fock(*fock, eta, b); }, xi);
        }
        for (std::size_t m = 0; m < n; ++m) {
            os << fmt(xi(static_cast<Eigen::Index>(m)).real()) << "," << fmt(xi(static_cast<Eigen::Index>(m)).imag()) << ",";
        }
        os << fmt(w) << "\n";
        std::size_t d = 2 * n;
        while (d > 0) {
            --d;
            if (++idx[d] < cfg.wigner_grid.ranges[d / 2].points) break;
            idx[d] = 0;
            if (d == 0) return os.str();
        }
    }
}

// eta_m on a line through the origin at angle pi/5, tensor grid over modes.
inline std::vector<ComplexVector> oracle_eta_grid(std::size_t n, double eta_max, int points) {
    const Complex dir = std::polar(1.0, kPi / 5.0);
    const std::vector<double> line = linspace(-eta_max, eta_max, static_cast<std::size_t>(points));
    std::vector<ComplexVector> out;
    std::vector<std::size_t> idx(n, 0);
    while (true) {
        ComplexVector eta(static_cast<Eigen::Index>(n));
        for (std::size_t m = 0; m < n; ++m) eta(static_cast<Eigen::Index>(m)) = line[idx[m]] * dir;
        out.push_back(eta);
        std::size_t d = 0;
        while (d < n && ++idx[d] == line.size()) idx[d++] = 0;
        if (d == n) return out;
    }
}

struct OracleComparison {
    double t = 0.0;
    double chi = 0.0;
    double mean = 0.0;
    double second = 0.0;
    double purity = 0.0;
    double trace_drift = 0.0;
    bool truncation_warning = false;
};

// Analytic first and second moments <a_m>, <a_m^dagger a_n> of a coherent mixture.
inline std::pair<ComplexVector, ComplexMatrix> coherent_moments(const CoherentMixture& state, const PropagatorBundle& b) {
    const auto n = static_cast<Eigen::Index>(state.modes());
    ComplexVector mean = ComplexVector::Zero(n);
    ComplexMatrix second = 0.5 * b.j;
    for (std::size_t br = 0; br < state.branches().size(); ++br) {
        const auto& comps = state.branches()[br].components;
        for (std::size_t r = 0; r < comps.size(); ++r) {
            const ComplexVector kr = k_vector(b.theta, comps[r].beta);
            for (std::size_t s = 0; s < comps.size(); ++s) {
                const ComplexVector ks = k_vector(b.theta, comps[s].beta);
                const Complex c = std::exp(state.log_coefficient(br, r, s));
                mean += c * ks;
                second += c * kr.conjugate() * ks.transpose();
            }
        }
    }
    return {mean, second};
}

inline std::vector<OracleComparison> oracle_compare(const RunConfig& cfg, const Model& model) {
    const std::size_t n = cfg.network.size();
    const bool is_fock = cfg.state.kind == StateConfig::Kind::Fock;
    std::optional<CoherentMixture> coherent;
    std::optional<FockMixture> fock;
    oracle::TruncatedDensityMatrix rho0;
    if (is_fock) {
        fock = fock_state(cfg);
        rho0 = oracle::truncate(*fock, cfg.oracle.n_max);
    } else {
        coherent = coherent_state(cfg);
        rho0 = oracle::truncate(*coherent, cfg.oracle.n_max);
    }
    const oracle::Trajectory traj =
        oracle::evolve_master(rho0, model.h.h, model.rates.gamma, model.rates.upsilon, cfg.times);
    const std::vector<ComplexVector> etas = oracle_eta_grid(n, cfg.oracle.eta_max, cfg.oracle.eta_points);

    std::vector<OracleComparison> out;
    for (std::size_t k = 0; k < cfg.times.size(); ++k) {
        const PropagatorBundle b = model.propagator->bundle(cfg.times[k]);
        OracleComparison row;
        row.t = cfg.times[k];
        row.trace_drift = traj.trace_drift[k];
        for (const auto& eta : etas) {
            const oracle::OracleChar oc = oracle::oracle_char(traj.states[k], eta);
            const Complex analytic = is_fock ? char_function_fock(*fock, eta, b) : char_function(*coherent, eta, b);
            row.chi = std::max(row.chi, std::abs(oc.value - analytic));
            row.truncation_warning = row.truncation_warning || oc.truncation_warning;
        }
        if (coherent) {
            const auto [mean, second] = coherent_moments(*coherent, b);
            row.mean = (oracle::oracle_mean_field(traj.states[k]) - mean).cwiseAbs().maxCoeff();
            row.second = (oracle::oracle_second_moments(traj.states[k]) - second).cwiseAbs().maxCoeff();
            row.purity = std::abs(oracle::oracle_purity(traj.states[k]) - purity(*coherent, b));
        } else {
            row.mean = std::numeric_limits<double>::quiet_NaN();
            row.second = std::numeric_limits<double>::quiet_NaN();
            row.purity = std::numeric_limits<double>::quiet_NaN();
        }
        out.push_back(row);
    }
    return out;
}

inline std::string oracle_csv(const RunConfig& cfg, const std::vector<OracleComparison>& rows) {
    std::ostringstream os;
    os << header_block(cfg) << "# n_max " << cfg.oracle.n_max << "\n";
    os << "t,max_abs_chi_diff,max_abs_mean_diff,max_abs_second_moment_diff,abs_purity_diff,trace_drift,truncation_warning\n";
    for (const auto& r : rows) {
        os << fmt(r.t) << "," << fmt(r.chi) << "," << fmt(r.mean) << "," << fmt(r.second) << "," << fmt(r.purity) << ","
           << fmt(r.trace_drift) << "," << (r.truncation_warning ? 1 : 0) << "\n";
    }
    return os.str();
}

// -------------------------------- Run ----------------------------------------

struct RunResult {
    std::vector<std::string> files;
    std::optional<DecoherenceReport> report;
};

inline RunResult run(const RunConfig& cfg, const fs::path& out_dir) {
    fs::create_directories(out_dir);
    const Model model = build_model(cfg);
    RunResult result;
    auto emit = [&](const std::string& name, const std::string& content) {
        write_atomic(out_dir / name, content);
        result.files.push_back((out_dir / name).string());
    };
    if (cfg.wants("dcoef")) emit("dcoef.csv", dcoef_csv(cfg, model));
    if (cfg.wants("tau_report")) {
        const CoherentMixture state = coherent_state(cfg);
        result.report = decoherence_report(cfg, model, state);
        json j = {{"version", kVersion}, {"config_hash", hash_hex(config_hash(cfg))}};
        j.update(report_json(*result.report));
        emit("tau_report.json", j.dump(2) + "\n");
    }
    if (cfg.wants("wigner_grid")) emit("wigner_grid.csv", wigner_csv(cfg, model));
    if (cfg.wants("entropy_curve")) emit("entropy_curve.csv", entropy_csv(cfg, model, coherent_state(cfg)));
    if (cfg.wants("oracle_compare")) emit("oracle_compare.csv", oracle_csv(cfg, oracle_compare(cfg, model)));
    return result;
}

// ------------------------------- Sweep ---------------------------------------

struct SweepAxis {
    std::string path;
    double start = 0.0;
    double stop = 0.0;
    std::size_t steps = 1;

    std::vector<double> values() const { return linspace(start, stop, steps); }
};

// "path=start:stop:steps"
inline SweepAxis parse_axis(const std::string& spec) {
    const std::size_t eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--axis", "expected path=start:stop:steps, got '" + spec + "'");
    SweepAxis axis;
    axis.path = spec.substr(0, eq);
    std::vector<std::string> parts;
    std::stringstream ss(spec.substr(eq + 1));
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw ConfigError("--axis", "expected path=start:stop:steps, got '" + spec + "'");
    try {
        std::size_t used = 0;
        axis.start = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument("start");
        axis.stop = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("stop");
        const long long steps = std::stoll(parts[2], &used);
        if (used != parts[2].size() || steps < 1) throw std::invalid_argument("steps");
        axis.steps = static_cast<std::size_t>(steps);
    } catch (const std::exception&) {
        throw ConfigError("--axis", "malformed numbers in '" + spec + "'");
    }
    return axis;
}

struct SweepRow {
    std::vector<double> point;
    std::string metric;
    double value = 0.0;
};

struct SweepPointResult {
    std::vector<SweepRow> rows;
    std::string error;
    bool config_error = false;
};

inline double time_value(const Time& t) { return t.is_infinite() ? std::numeric_limits<double>::infinity() : t.value(); }

inline SweepPointResult sweep_point(const json& raw, const std::vector<SweepAxis>& axes, const std::vector<double>& point) {
    SweepPointResult out;
    try {
        json j = raw;
        for (std::size_t a = 0; a < axes.size(); ++a) set_path(j, axes[a].path, point[a]);
        const RunConfig cfg = parse_config(j);
        const Model model = build_model(cfg);
        if (cfg.state.kind == StateConfig::Kind::Fock) {
            throw ConfigError("state", "sweeps report decoherence times and need a cat or coherent state");
        }
        const CoherentMixture state = coherent_state(cfg);
        const DecoherenceReport rep = decoherence_report(cfg, model, state);
        out.rows.push_back({point, "tau_diff", time_value(rep.tau_diff)});
        out.rows.push_back({point, "tau_int", time_value(rep.tau_int)});
        out.rows.push_back({point, "tau_d", time_value(rep.tau_d)});
        if (cfg.wants("entropy_curve")) {
            out.rows.push_back({point, "entropy_final", linear_entropy(state, model.propagator->bundle(cfg.times.back()))});
        }
    } catch (const ConfigError& e) {
        out.error = e.what();
        out.config_error = true;
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    return out;
}

inline void write_point(const fs::path& dir, std::size_t k, const std::vector<SweepAxis>& axes, const SweepPointResult& p) {
    json j = {{"version", kVersion}, {"point", k}};
    json params = json::object();
    json metrics = json::object();
    for (const auto& row : p.rows) {
        for (std::size_t a = 0; a < axes.size(); ++a) params[axes[a].path] = row.point[a];
        metrics[row.metric] = std::isinf(row.value) ? json("inf") : json(row.value);
    }
    j["parameters"] = params;
    j["metrics"] = metrics;
    if (!p.error.empty()) j["error"] = p.error;
    std::ostringstream name;
    name << "point_" << std::setw(4) << std::setfill('0') << k << ".json";
    write_atomic(dir / name.str(), j.dump(2) + "\n");
}

struct SweepResult {
    std::vector<SweepPointResult> points;
    std::string csv;
};

// Cross product of the axes; one worker per hardware thread unless `serial`.
// When `out_dir` is given each point also writes point_<k>.json on its own.
inline SweepResult sweep(const json& raw, const std::vector<SweepAxis>& axes, bool serial,
                         const std::optional<fs::path>& out_dir = std::nullopt) {
    if (axes.size() > 2) throw ConfigError("--axis", "at most two axes");
    std::vector<std::vector<double>> points;
    if (axes.empty()) {
        points.push_back({});
    } else {
        const std::vector<double> first = axes[0].values();
        const std::vector<double> second = axes.size() == 2 ? axes[1].values() : std::vector<double>{0.0};
        for (double a : first) {
            for (double b : second) points.push_back(axes.size() == 2 ? std::vector<double>{a, b} : std::vector<double>{a});
        }
    }
    SweepResult result;
    result.points.resize(points.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t k = next++; k < points.size(); k = next++) {
            result.points[k] = sweep_point(raw, axes, points[k]);
            if (out_dir) write_point(*out_dir, k, axes, result.points[k]);
        }
    };
    const std::size_t workers = serial ? 1 : std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), points.size()));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::ostringstream os;
    os << "# bosonet " << kVersion << "\n";
    try {
        os << "# config_hash " << hash_hex(config_hash(parse_config(raw))) << "\n";
    } catch (const ConfigError&) {
        os << "# config_hash unavailable\n";
    }
    for (const auto& a : axes) os << a.path << ",";
    os << "metric,value\n";
    for (const auto& p : result.points) {
        for (const auto& row : p.rows) {
            for (double v : row.point) os << fmt(v) << ",";
            os << row.metric << "," << fmt(row.value) << "\n";
        }
    }
    result.csv = os.str();
    return result;
}

// ------------------------------ Self-test -------------------------------------

struct SelftestResult {
    std::vector<std::pair<std::string, bool>> checks;
    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
    }
};

// Randomized property checks on dissipative instances drawn from `seed`.
inline SelftestResult selftest(std::uint64_t seed, int instances = 25) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.05, 0.5);
    std::uniform_int_distribution<int> size(1, 4);
    SelftestResult out;
    bool routes = true;
    bool residual = true;
    bool semigroup = true;
    bool chi_norm = true;
    bool chi_herm = true;
    bool decay_range = true;
    bool wigner_pair = true;
    for (int k = 0; k < instances; ++k) {
        const int n = size(rng);
        const auto en = static_cast<Eigen::Index>(n);
        RealMatrix h = RealMatrix::Zero(en, en);
        for (Eigen::Index i = 0; i < en; ++i) {
            h(i, i) = 2.0 + uni(rng);
            for (Eigen::Index j = 0; j < i; ++j) h(i, j) = h(j, i) = 0.3 * uni(rng);
        }
        RealMatrix gamma = RealMatrix::Zero(en, en);
        for (Eigen::Index i = 0; i < en; ++i) gamma(i, i) = pos(rng);
        RealMatrix a(en, en);
        for (Eigen::Index i = 0; i < en; ++i)
            for (Eigen::Index j = 0; j < en; ++j) a(i, j) = 0.3 * uni(rng);
        const RealMatrix upsilon = a * a.transpose();

        const CouplingMatrix cm{h};
        const DissipativeMatrix hd = dissipative_matrix(cm, gamma);
        const StationaryWidth pv = solve_pi_vec(hd, upsilon);
        const StationaryWidth pe = solve_pi_eigen(hd, upsilon);
        routes = routes && max_abs(ComplexMatrix(pv.pi - pe.pi)) < 1e-9;
        residual = residual && pv.residual < 1e-9 && pe.residual < 1e-9;

        const double t1 = pos(rng) * 3.0;
        const double t2 = pos(rng) * 3.0;
        semigroup = semigroup && max_abs(ComplexMatrix(theta(hd, t1 + t2) - theta(hd, t1) * theta(hd, t2))) < 1e-10;

        const Propagator prop = Propagator::dissipative(hd, pe);
        const PropagatorBundle b = prop.bundle(t1);
        ComplexVector alpha(en);
        for (Eigen::Index i = 0; i < en; ++i) alpha(i) = Complex(uni(rng), uni(rng));
        const CoherentMixture state = CoherentMixture::make(
            {CoherentBranch{1.0, {CoherentComponent{1.0, alpha}, CoherentComponent{Complex(0.0, 1.0), ComplexVector(-alpha)}}}});
        ComplexVector eta(en);
        for (Eigen::Index i = 0; i < en; ++i) eta(i) = Complex(uni(rng), uni(rng));
        chi_norm = chi_norm && std::abs(char_function(state, ComplexVector::Zero(en), b) - 1.0) < 1e-12;
        chi_herm = chi_herm &&
                   std::abs(char_function(state, ComplexVector(-eta), b) - std::conj(char_function(state, eta, b))) < 1e-12;
        const double p = decay_function(state, 0, 1, b);
        decay_range = decay_range && p > 0.0 && p <= 1.0 + 1e-12;
        Complex summed = 0.0;
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t s = 0; s < 2; ++s) summed += wigner_element(state, 0, r, s, eta, b);
        wigner_pair = wigner_pair && std::abs(summed.real() - wigner(state, eta, b)) < 1e-10 && std::abs(summed.imag()) < 1e-10;
    }
    out.checks = {{"stationary routes agree", routes},        {"stationary residual", residual},
                  {"propagator semigroup", semigroup},        {"chi(0) = 1", chi_norm},
                  {"chi(-eta) = conj chi(eta)", chi_herm},    {"decay function in (0, 1]", decay_range},
                  {"rotated elements sum to W", wigner_pair}};
    return out;
}

}  // namespace bosonet::app
