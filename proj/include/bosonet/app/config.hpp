// config.hpp: Run configuration: JSON parsing with path-tagged validation errors,
// and the normalized emitter used for hashing and round trips.

#pragma once

#include "bosonet/network.hpp"
#include "bosonet/phase_space.hpp"
#include "bosonet/reservoirs.hpp"
#include "bosonet/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace bosonet::app {

using nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

// Invalid configuration; `path` names the offending field ("state.r", "times[3]").
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& what)
        : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

enum class RegimeChoice { Auto, Weak, Strong };
enum class RateNormalization { Spectral, Total };

struct StateConfig {
    enum class Kind { Cat, Coherent, Fock };
    Kind kind = Kind::Cat;
    // cat family
    std::size_t r = 1;
    std::size_t s = 0;
    Complex alpha = 1.0;
    Complex beta = 0.0;
    int sign = 1;
    // explicit forms
    std::vector<CoherentBranch> coherent;
    std::vector<FockBranch> fock;
};

struct GridAxis {
    double re_min = -3.0;
    double re_max = 3.0;
    double im_min = -3.0;
    double im_max = 3.0;
    int points = 41;
};

struct WignerGridConfig {
    std::vector<GridAxis> ranges;
    std::optional<double> time;
};

struct OracleConfig {
    int n_max = 14;
    double eta_max = 0.6;
    int eta_points = 5;
};

struct TauConfig {
    std::optional<double> grid_end;
    int grid_points = 400;
    double directional_step = 1e-6;
    std::size_t branch = 0;
    std::size_t r = 0;
    std::size_t s = 1;
};

struct RunConfig {
    NetworkSpec network;
    ReservoirSpec reservoirs;
    RateNormalization normalization = RateNormalization::Spectral;
    RegimeChoice regime = RegimeChoice::Auto;
    double regime_threshold = 0.1;
    StateConfig state;
    std::vector<double> times;
    std::vector<std::string> outputs;
    WignerGridConfig wigner_grid;
    OracleConfig oracle;
    TauConfig tau;

    bool wants(const std::string& output) const {
        return std::find(outputs.begin(), outputs.end(), output) != outputs.end();
    }
};

inline const std::vector<std::string>& known_outputs() {
    static const std::vector<std::string> names = {"dcoef", "tau_report", "wigner_grid", "entropy_curve", "oracle_compare"};
    return names;
}

// ------------------------------ JSON readers ---------------------------------

namespace detail {

inline std::string child(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
inline std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

inline const json& need(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError(child(path, key), "required field is missing");
    return *it;
}

inline const json* maybe(const json& j, const std::string& key) {
    if (!j.is_object()) return nullptr;
    auto it = j.find(key);
    return it == j.end() || it->is_null() ? nullptr : &*it;
}

inline double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(path, "must be finite");
    return v;
}

inline long long integer(const json& j, const std::string& path) {
    const double v = number(j, path);
    if (v != std::floor(v) || std::abs(v) > 1e15) throw ConfigError(path, "expected an integer");
    return static_cast<long long>(v);
}

inline std::size_t count(const json& j, const std::string& path, long long min_value = 0) {
    const long long v = integer(j, path);
    if (v < min_value) throw ConfigError(path, "must be >= " + std::to_string(min_value));
    return static_cast<std::size_t>(v);
}

// A number or a [re, im] pair.
inline Complex complex_value(const json& j, const std::string& path) {
    if (j.is_number()) return {number(j, path), 0.0};
    if (j.is_array() && j.size() == 2) return {number(j[0], index(path, 0)), number(j[1], index(path, 1))};
    throw ConfigError(path, "expected a number or a [re, im] pair");
}

inline std::vector<double> number_list(const json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], index(path, i)));
    return out;
}

inline ComplexVector complex_list(const json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError(path, "expected an array");
    ComplexVector out(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) out(static_cast<Eigen::Index>(i)) = complex_value(j[i], index(path, i));
    return out;
}

inline RealMatrix matrix(const json& j, const std::string& path, std::size_t n) {
    if (!j.is_array() || j.size() != n) throw ConfigError(path, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    const auto en = static_cast<Eigen::Index>(n);
    RealMatrix out(en, en);
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<double> row = number_list(j[i], index(path, i));
        if (row.size() != n) throw ConfigError(index(path, i), "row must have " + std::to_string(n) + " entries");
        for (std::size_t k = 0; k < n; ++k) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = row[k];
    }
    return out;
}

inline std::string text(const json& j, const std::string& path) {
    if (!j.is_string()) throw ConfigError(path, "expected a string");
    return j.get<std::string>();
}

// A scalar broadcast to n entries, or an explicit list of n numbers.
inline std::vector<double> per_oscillator(const json& j, const std::string& path, std::size_t n) {
    if (j.is_number()) return std::vector<double>(n, number(j, path));
    std::vector<double> out = number_list(j, path);
    if (out.size() != n) throw ConfigError(path, "expected " + std::to_string(n) + " entries");
    return out;
}

inline json complex_json(Complex z) { return z.imag() == 0.0 ? json(z.real()) : json::array({z.real(), z.imag()}); }

inline json complex_list_json(const ComplexVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
    return out;
}

inline json matrix_json(const RealMatrix& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        out.push_back(row);
    }
    return out;
}

}  // namespace detail

// ------------------------------- Sections ------------------------------------

inline NetworkSpec parse_network(const json& j, const std::string& path) {
    using namespace detail;
    const std::string topology = maybe(j, "topology") ? text(j["topology"], child(path, "topology")) : "explicit";
    NetworkSpec spec;
    if (topology == "explicit") {
        const std::vector<double> omega = number_list(need(j, "omega", path), child(path, "omega"));
        if (omega.empty()) throw ConfigError(child(path, "omega"), "network needs at least one oscillator");
        spec.omega = Eigen::Map<const RealVector>(omega.data(), static_cast<Eigen::Index>(omega.size()));
        const auto en = static_cast<Eigen::Index>(omega.size());
        spec.lambda = maybe(j, "lambda") ? matrix(j["lambda"], child(path, "lambda"), omega.size()) : RealMatrix::Zero(en, en);
    } else if (topology == "degenerate_symmetric") {
        const std::size_t n = count(need(j, "n", path), child(path, "n"), 1);
        spec = NetworkSpec::degenerate_symmetric(n, number(need(j, "omega", path), child(path, "omega")),
                                                 maybe(j, "lambda") ? number(j["lambda"], child(path, "lambda")) : 0.0);
    } else if (topology == "chain") {
        const json& om = need(j, "omega", path);
        std::size_t n = 0;
        if (om.is_number()) n = count(need(j, "n", path), child(path, "n"), 1);
        else n = om.size();
        const std::vector<double> omega = per_oscillator(om, child(path, "omega"), n);
        if (n == 0) throw ConfigError(child(path, "omega"), "network needs at least one oscillator");
        const std::vector<double> links = maybe(j, "links") ? per_oscillator(j["links"], child(path, "links"), n - 1)
                                                            : std::vector<double>(n - 1, 0.0);
        spec = NetworkSpec::chain(Eigen::Map<const RealVector>(omega.data(), static_cast<Eigen::Index>(n)),
                                  Eigen::Map<const RealVector>(links.data(), static_cast<Eigen::Index>(n - 1)));
    } else {
        throw ConfigError(child(path, "topology"), "unknown topology '" + topology + "' (explicit, degenerate_symmetric, chain)");
    }
    try {
        spec.validate();
    } catch (const Error& e) {
        throw ConfigError(path, e.what());
    }
    return spec;
}

inline SpectralProfile parse_profile(const json& j, const std::string& path) {
    using namespace detail;
    const std::string kind = text(need(j, "kind", path), child(path, "kind"));
    const double gamma = number(need(j, "gamma", path), child(path, "gamma"));
    if (gamma < 0.0) throw ConfigError(child(path, "gamma"), "must be >= 0");
    SpectralProfile p;
    if (kind == "white_noise") {
        p = SpectralProfile::white_noise(gamma);
    } else if (kind == "lorentzian" || kind == "gaussian_band") {
        const double center = number(need(j, "center", path), child(path, "center"));
        const double width = number(need(j, "width", path), child(path, "width"));
        if (!(width > 0.0)) throw ConfigError(child(path, "width"), "must be > 0");
        p = kind == "lorentzian" ? SpectralProfile::lorentzian(gamma, center, width)
                                 : SpectralProfile::gaussian_band(gamma, center, width);
    } else {
        throw ConfigError(child(path, "kind"), "unknown profile '" + kind + "' (white_noise, lorentzian, gaussian_band)");
    }
    return p;
}

inline void parse_reservoirs(const json& j, const std::string& path, const NetworkSpec& net, RunConfig& cfg) {
    using namespace detail;
    const std::size_t n = net.size();
    ReservoirSpec res;
    const json& prof = need(j, "profile", path);
    if (prof.is_array()) {
        if (prof.size() != n) throw ConfigError(child(path, "profile"), "expected one profile per oscillator");
        for (std::size_t i = 0; i < n; ++i) res.profile.push_back(parse_profile(prof[i], index(child(path, "profile"), i)));
    } else {
        res.profile.assign(n, parse_profile(prof, child(path, "profile")));
    }
    const json* temp = maybe(j, "temperature");
    const json* nbar = maybe(j, "nbar");
    if (temp && nbar) throw ConfigError(child(path, "nbar"), "give either temperature or nbar, not both");
    if (nbar) {
        const std::vector<double> occ = per_oscillator(*nbar, child(path, "nbar"), n);
        for (std::size_t i = 0; i < n; ++i) {
            if (occ[i] < 0.0) throw ConfigError(index(child(path, "nbar"), i), "must be >= 0");
            res.temperature.push_back(temperature_for_occupation(occ[i], net.omega(static_cast<Eigen::Index>(i))));
        }
    } else if (temp) {
        res.temperature = per_oscillator(*temp, child(path, "temperature"), n);
        for (std::size_t i = 0; i < n; ++i) {
            if (res.temperature[i] < 0.0) throw ConfigError(index(child(path, "temperature"), i), "must be >= 0");
        }
    } else {
        res.temperature.assign(n, 0.0);
    }
    if (const json* c = maybe(j, "common")) {
        if (!c->is_boolean()) throw ConfigError(child(path, "common"), "expected true or false");
        res.common = c->get<bool>();
    }
    if (const json* o = maybe(j, "overlap")) {
        res.overlap = matrix(*o, child(path, "overlap"), n);
        if (((*res.overlap).array() < 0.0).any() || ((*res.overlap).array() > 1.0).any()) {
            throw ConfigError(child(path, "overlap"), "entries must lie in [0, 1]");
        }
    }
    if (res.common) {
        for (std::size_t i = 1; i < n; ++i) {
            if (res.temperature[i] != res.temperature[0]) {
                throw ConfigError(child(path, nbar ? "nbar" : "temperature"), "a common reservoir has a single temperature");
            }
        }
    }
    if (const json* norm = maybe(j, "rate_normalization")) {
        const std::string v = text(*norm, child(path, "rate_normalization"));
        if (v == "spectral") cfg.normalization = RateNormalization::Spectral;
        else if (v == "total") cfg.normalization = RateNormalization::Total;
        else throw ConfigError(child(path, "rate_normalization"), "expected 'spectral' or 'total'");
    }
    cfg.reservoirs = std::move(res);
}

inline std::vector<CoherentBranch> parse_coherent_branches(const json& j, const std::string& path, std::size_t n) {
    using namespace detail;
    if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a nonempty array of branches");
    std::vector<CoherentBranch> out;
    for (std::size_t b = 0; b < j.size(); ++b) {
        const std::string bp = index(path, b);
        CoherentBranch br;
        br.weight = maybe(j[b], "weight") ? number(j[b]["weight"], child(bp, "weight")) : 1.0;
        const json& comps = need(j[b], "components", bp);
        if (!comps.is_array() || comps.empty()) throw ConfigError(child(bp, "components"), "expected a nonempty array");
        for (std::size_t k = 0; k < comps.size(); ++k) {
            const std::string cp = index(child(bp, "components"), k);
            CoherentComponent c;
            c.amplitude = maybe(comps[k], "amplitude") ? complex_value(comps[k]["amplitude"], child(cp, "amplitude")) : Complex(1.0);
            c.beta = complex_list(need(comps[k], "beta", cp), child(cp, "beta"));
            if (static_cast<std::size_t>(c.beta.size()) != n) {
                throw ConfigError(child(cp, "beta"), "expected " + std::to_string(n) + " amplitudes");
            }
            br.components.push_back(std::move(c));
        }
        out.push_back(std::move(br));
    }
    return out;
}

inline std::vector<FockBranch> parse_fock_branches(const json& j, const std::string& path, std::size_t n) {
    using namespace detail;
    if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a nonempty array of branches");
    std::vector<FockBranch> out;
    for (std::size_t b = 0; b < j.size(); ++b) {
        const std::string bp = index(path, b);
        FockBranch br;
        br.weight = maybe(j[b], "weight") ? number(j[b]["weight"], child(bp, "weight")) : 1.0;
        const json& terms = need(j[b], "terms", bp);
        if (!terms.is_array() || terms.empty()) throw ConfigError(child(bp, "terms"), "expected a nonempty array");
        for (std::size_t k = 0; k < terms.size(); ++k) {
            const std::string tp = index(child(bp, "terms"), k);
            FockTerm t;
            const json& occ = need(terms[k], "occupation", tp);
            if (!occ.is_array() || occ.size() != n) throw ConfigError(child(tp, "occupation"), "expected " + std::to_string(n) + " entries");
            for (std::size_t m = 0; m < n; ++m) t.occupation.push_back(static_cast<int>(count(occ[m], index(child(tp, "occupation"), m))));
            t.coefficient = maybe(terms[k], "coefficient") ? complex_value(terms[k]["coefficient"], child(tp, "coefficient")) : Complex(1.0);
            br.terms.push_back(std::move(t));
        }
        out.push_back(std::move(br));
    }
    return out;
}

inline StateConfig parse_state(const json& j, const std::string& path, std::size_t n) {
    using namespace detail;
    StateConfig st;
    const std::string kind = text(need(j, "kind", path), child(path, "kind"));
    if (kind == "cat") {
        st.kind = StateConfig::Kind::Cat;
        if (const json* r = maybe(j, "r")) {
            st.r = r->is_string() && r->get<std::string>() == "n" ? n : count(*r, child(path, "r"));
        }
        if (const json* s = maybe(j, "s")) st.s = count(*s, child(path, "s"));
        if (st.r + st.s > n) {
            throw ConfigError(child(path, "r"), "r + s = " + std::to_string(st.r + st.s) + " exceeds the network size " + std::to_string(n));
        }
        st.alpha = complex_value(need(j, "alpha", path), child(path, "alpha"));
        if (const json* b = maybe(j, "beta")) st.beta = complex_value(*b, child(path, "beta"));
        if (const json* s = maybe(j, "sign")) {
            const long long v = integer(*s, child(path, "sign"));
            if (v != 1 && v != -1) throw ConfigError(child(path, "sign"), "must be +1 or -1");
            st.sign = static_cast<int>(v);
        }
    } else if (kind == "coherent") {
        st.kind = StateConfig::Kind::Coherent;
        st.coherent = parse_coherent_branches(need(j, "branches", path), child(path, "branches"), n);
    } else if (kind == "fock") {
        st.kind = StateConfig::Kind::Fock;
        st.fock = parse_fock_branches(need(j, "branches", path), child(path, "branches"), n);
    } else {
        throw ConfigError(child(path, "kind"), "unknown state kind '" + kind + "' (cat, coherent, fock)");
    }
    return st;
}

inline std::vector<double> parse_times(const json& j, const std::string& path) {
    using namespace detail;
    std::vector<double> out;
    if (j.is_array()) {
        out = number_list(j, path);
    } else {
        const double start = maybe(j, "t_start") ? number(j["t_start"], child(path, "t_start")) : 0.0;
        const double stop = number(need(j, "t_end", path), child(path, "t_end"));
        const std::size_t steps = count(need(j, "steps", path), child(path, "steps"), 1);
        if (stop < start) throw ConfigError(child(path, "t_end"), "must be >= t_start");
        out = linspace(start, stop, steps);
    }
    if (out.empty()) throw ConfigError(path, "need at least one time");
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] < 0.0) throw ConfigError(index(path, i), "times must be >= 0");
        if (i > 0 && out[i] <= out[i - 1]) throw ConfigError(index(path, i), "times must be strictly increasing");
    }
    return out;
}

// ------------------------------ Whole config ---------------------------------

inline RunConfig parse_config(const json& j) {
    using namespace detail;
    if (!j.is_object()) throw ConfigError("", "configuration must be a JSON object");
    static const std::set<std::string> known = {"network", "reservoirs", "regime", "regime_threshold", "state", "times",
                                                "outputs", "wigner_grid", "oracle", "tau"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.count(it.key())) throw ConfigError(it.key(), "unknown field");
    }
    RunConfig cfg;
    cfg.network = parse_network(need(j, "network", ""), "network");
    const std::size_t n = cfg.network.size();
    parse_reservoirs(need(j, "reservoirs", ""), "reservoirs", cfg.network, cfg);

    if (const json* r = maybe(j, "regime")) {
        const std::string v = text(*r, "regime");
        if (v == "auto") cfg.regime = RegimeChoice::Auto;
        else if (v == "weak") cfg.regime = RegimeChoice::Weak;
        else if (v == "strong") cfg.regime = RegimeChoice::Strong;
        else throw ConfigError("regime", "expected 'auto', 'weak' or 'strong'");
    }
    if (const json* t = maybe(j, "regime_threshold")) {
        cfg.regime_threshold = number(*t, "regime_threshold");
        if (!(cfg.regime_threshold > 0.0)) throw ConfigError("regime_threshold", "must be > 0");
    }
    cfg.state = parse_state(need(j, "state", ""), "state", n);
    cfg.times = parse_times(need(j, "times", ""), "times");

    if (const json* o = maybe(j, "outputs")) {
        if (!o->is_array()) throw ConfigError("outputs", "expected an array of output names");
        for (std::size_t i = 0; i < o->size(); ++i) {
            const std::string name = text((*o)[i], index("outputs", i));
            const auto& names = known_outputs();
            if (std::find(names.begin(), names.end(), name) == names.end()) {
                throw ConfigError(index("outputs", i), "unknown output '" + name + "'");
            }
            if (!cfg.wants(name)) cfg.outputs.push_back(name);
        }
    } else {
        cfg.outputs = {"tau_report"};
    }

    const bool coherent = cfg.state.kind != StateConfig::Kind::Fock;
    for (const char* needs_coherent : {"tau_report", "entropy_curve"}) {
        if (cfg.wants(needs_coherent) && !coherent) {
            throw ConfigError("outputs", std::string(needs_coherent) + " needs a cat or coherent state");
        }
    }
    if (cfg.wants("oracle_compare") && n > 2) throw ConfigError("outputs", "oracle_compare supports at most 2 oscillators");
    if (cfg.wants("wigner_grid") && !coherent && n > 1) {
        throw ConfigError("outputs", "wigner_grid for Fock states supports a single oscillator");
    }

    if (const json* w = maybe(j, "wigner_grid")) {
        if (const json* t = maybe(*w, "time")) {
            const double v = number(*t, "wigner_grid.time");
            if (v < 0.0) throw ConfigError("wigner_grid.time", "must be >= 0");
            cfg.wigner_grid.time = v;
        }
        const json& ranges = need(*w, "ranges", "wigner_grid");
        if (!ranges.is_array() || ranges.size() != n) {
            throw ConfigError("wigner_grid.ranges", "expected one range per oscillator");
        }
        std::size_t total = 1;
        for (std::size_t m = 0; m < n; ++m) {
            const std::string rp = index("wigner_grid.ranges", m);
            GridAxis axis;
            const std::vector<double> re = number_list(need(ranges[m], "re", rp), child(rp, "re"));
            const std::vector<double> im = number_list(need(ranges[m], "im", rp), child(rp, "im"));
            if (re.size() != 2 || !(re[1] >= re[0])) throw ConfigError(child(rp, "re"), "expected [min, max]");
            if (im.size() != 2 || !(im[1] >= im[0])) throw ConfigError(child(rp, "im"), "expected [min, max]");
            axis.re_min = re[0];
            axis.re_max = re[1];
            axis.im_min = im[0];
            axis.im_max = im[1];
            axis.points = static_cast<int>(count(need(ranges[m], "points", rp), child(rp, "points"), 1));
            total *= static_cast<std::size_t>(axis.points) * static_cast<std::size_t>(axis.points);
            cfg.wigner_grid.ranges.push_back(axis);
        }
        if (total > 4000000) throw ConfigError("wigner_grid.ranges", "grid has more than 4e6 points");
    } else if (cfg.wants("wigner_grid")) {
        throw ConfigError("wigner_grid", "required when outputs contains wigner_grid");
    }

    if (const json* o = maybe(j, "oracle")) {
        if (const json* v = maybe(*o, "n_max")) cfg.oracle.n_max = static_cast<int>(count(*v, "oracle.n_max", 1));
        if (const json* v = maybe(*o, "eta_max")) cfg.oracle.eta_max = number(*v, "oracle.eta_max");
        if (const json* v = maybe(*o, "eta_points")) cfg.oracle.eta_points = static_cast<int>(count(*v, "oracle.eta_points", 1));
    }
    if (const json* t = maybe(j, "tau")) {
        if (const json* v = maybe(*t, "grid_end")) {
            cfg.tau.grid_end = number(*v, "tau.grid_end");
            if (!(*cfg.tau.grid_end > 0.0)) throw ConfigError("tau.grid_end", "must be > 0");
        }
        if (const json* v = maybe(*t, "grid_points")) cfg.tau.grid_points = static_cast<int>(count(*v, "tau.grid_points", 2));
        if (const json* v = maybe(*t, "directional_step")) {
            cfg.tau.directional_step = number(*v, "tau.directional_step");
            if (!(cfg.tau.directional_step > 0.0)) throw ConfigError("tau.directional_step", "must be > 0");
        }
        if (const json* v = maybe(*t, "branch")) cfg.tau.branch = count(*v, "tau.branch");
        if (const json* v = maybe(*t, "pair")) {
            if (!v->is_array() || v->size() != 2) throw ConfigError("tau.pair", "expected [r, s]");
            cfg.tau.r = count((*v)[0], "tau.pair[0]");
            cfg.tau.s = count((*v)[1], "tau.pair[1]");
            if (cfg.tau.r == cfg.tau.s) throw ConfigError("tau.pair", "components must differ");
        }
    }
    return cfg;
}

// Normalized form: fully expanded matrices and per-oscillator lists.
inline json emit_config(const RunConfig& cfg) {
    using namespace detail;
    json j;
    std::vector<double> omega(cfg.network.omega.data(), cfg.network.omega.data() + cfg.network.omega.size());
    j["network"] = {{"topology", "explicit"}, {"omega", omega}, {"lambda", matrix_json(cfg.network.lambda)}};

    json profiles = json::array();
    for (const auto& p : cfg.reservoirs.profile) {
        json jp = {{"kind", to_string(p.kind)}, {"gamma", p.gamma}};
        if (p.kind != SpectralProfile::Kind::WhiteNoise) {
            jp["center"] = p.center;
            jp["width"] = p.width;
        }
        profiles.push_back(jp);
    }
    j["reservoirs"] = {{"profile", profiles},
                       {"temperature", cfg.reservoirs.temperature},
                       {"common", cfg.reservoirs.common},
                       {"rate_normalization", cfg.normalization == RateNormalization::Total ? "total" : "spectral"}};
    if (cfg.reservoirs.overlap) j["reservoirs"]["overlap"] = matrix_json(*cfg.reservoirs.overlap);

    j["regime"] = cfg.regime == RegimeChoice::Auto ? "auto" : cfg.regime == RegimeChoice::Weak ? "weak" : "strong";
    j["regime_threshold"] = cfg.regime_threshold;

    const StateConfig& st = cfg.state;
    if (st.kind == StateConfig::Kind::Cat) {
        j["state"] = {{"kind", "cat"}, {"r", st.r}, {"s", st.s}, {"alpha", complex_json(st.alpha)},
                      {"beta", complex_json(st.beta)}, {"sign", st.sign}};
    } else if (st.kind == StateConfig::Kind::Coherent) {
        json branches = json::array();
        for (const auto& br : st.coherent) {
            json comps = json::array();
            for (const auto& c : br.components) {
                comps.push_back({{"amplitude", complex_json(c.amplitude)}, {"beta", complex_list_json(c.beta)}});
            }
            branches.push_back({{"weight", br.weight}, {"components", comps}});
        }
        j["state"] = {{"kind", "coherent"}, {"branches", branches}};
    } else {
        json branches = json::array();
        for (const auto& br : st.fock) {
            json terms = json::array();
            for (const auto& t : br.terms) terms.push_back({{"occupation", t.occupation}, {"coefficient", complex_json(t.coefficient)}});
            branches.push_back({{"weight", br.weight}, {"terms", terms}});
        }
        j["state"] = {{"kind", "fock"}, {"branches", branches}};
    }
    j["times"] = cfg.times;
    j["outputs"] = cfg.outputs;
    if (!cfg.wigner_grid.ranges.empty()) {
        json ranges = json::array();
        for (const auto& a : cfg.wigner_grid.ranges) {
            ranges.push_back({{"re", {a.re_min, a.re_max}}, {"im", {a.im_min, a.im_max}}, {"points", a.points}});
        }
        j["wigner_grid"] = {{"ranges", ranges}};
        if (cfg.wigner_grid.time) j["wigner_grid"]["time"] = *cfg.wigner_grid.time;
    }
    j["oracle"] = {{"n_max", cfg.oracle.n_max}, {"eta_max", cfg.oracle.eta_max}, {"eta_points", cfg.oracle.eta_points}};
    j["tau"] = {{"grid_points", cfg.tau.grid_points},
                {"directional_step", cfg.tau.directional_step},
                {"branch", cfg.tau.branch},
                {"pair", {cfg.tau.r, cfg.tau.s}}};
    if (cfg.tau.grid_end) j["tau"]["grid_end"] = *cfg.tau.grid_end;
    return j;
}

// 64-bit FNV-1a of the normalized configuration.
inline std::uint64_t config_hash(const RunConfig& cfg) {
    const std::string text = emit_config(cfg).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hash_hex(std::uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

// Sets a dotted path ("reservoirs.nbar", "state.alpha", "times.steps") in a raw config.
inline void set_path(json& j, const std::string& path, double value) {
    json* node = &j;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = path.find('.', start);
        const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (key.empty()) throw ConfigError(path, "empty path component");
        if (!node->is_object()) throw ConfigError(path, "path does not name an object field");
        if (dot == std::string::npos) {
            if (value == std::floor(value) && std::abs(value) < 1e15) (*node)[key] = static_cast<long long>(value);
            else (*node)[key] = value;
            return;
        }
        node = &(*node)[key];
        start = dot + 1;
    }
}

}  // namespace bosonet::app
