// reservoirs.hpp: Bose occupations and the damping/diffusion matrices for distinct,
// weakly coupled, and common reservoirs (Markov limit, hbar = k_B = 1).

#pragma once

#include "bosonet/network.hpp"
#include "bosonet/quadrature.hpp"
#include "bosonet/types.hpp"

#include <optional>
#include <vector>

namespace bosonet {

// Spectral damping function gamma_m(omega). The N prefactor of the rate matrices is
// applied separately, so `gamma` is the per-oscillator spectral rate.
struct SpectralProfile {
    enum class Kind { WhiteNoise, Lorentzian, GaussianBand };

    Kind kind = Kind::WhiteNoise;
    double gamma = 0.0;
    double center = 0.0;
    double width = 1.0;

    static SpectralProfile white_noise(double gamma) { return {Kind::WhiteNoise, gamma, 0.0, 1.0}; }
    static SpectralProfile lorentzian(double gamma, double center, double width) {
        return {Kind::Lorentzian, gamma, center, width};
    }
    static SpectralProfile gaussian_band(double gamma, double center, double width) {
        return {Kind::GaussianBand, gamma, center, width};
    }

    void validate() const {
        require(std::isfinite(gamma) && gamma >= 0.0, Errc::InvalidArgument, "spectral rate gamma must be >= 0");
        if (kind != Kind::WhiteNoise) {
            require(std::isfinite(width) && width > 0.0, Errc::InvalidArgument, "spectral width must be > 0");
            require(std::isfinite(center), Errc::InvalidArgument, "spectral center must be finite");
        }
    }

    double operator()(double omega) const {
        switch (kind) {
            case Kind::WhiteNoise: return gamma;
            case Kind::Lorentzian: {
                const double x = (omega - center) / width;
                return gamma / (1.0 + x * x);
            }
            case Kind::GaussianBand: {
                const double x = (omega - center) / width;
                return gamma * std::exp(-0.5 * x * x);
            }
        }
        return 0.0;
    }

    friend bool operator==(const SpectralProfile& a, const SpectralProfile& b) {
        return a.kind == b.kind && a.gamma == b.gamma && a.center == b.center && a.width == b.width;
    }
};

inline const char* to_string(SpectralProfile::Kind k) noexcept {
    switch (k) {
        case SpectralProfile::Kind::WhiteNoise: return "white_noise";
        case SpectralProfile::Kind::Lorentzian: return "lorentzian";
        case SpectralProfile::Kind::GaussianBand: return "gaussian_band";
    }
    return "unknown";
}

struct ReservoirSpec {
    std::vector<double> temperature;
    std::vector<SpectralProfile> profile;
    bool common = false;
    // Normalized profile overlaps o_mn in [0, 1] for the common reservoir; computed
    // from the profiles when absent.
    std::optional<RealMatrix> overlap;

    std::size_t size() const noexcept { return temperature.size(); }

    void validate(std::size_t n) const {
        require(temperature.size() == n, Errc::DimensionMismatch, "need one temperature per oscillator");
        require(profile.size() == n, Errc::DimensionMismatch, "need one spectral profile per oscillator");
        for (std::size_t m = 0; m < n; ++m) {
            require(std::isfinite(temperature[m]) && temperature[m] >= 0.0, Errc::InvalidArgument,
                    "temperature[" + std::to_string(m) + "] must be >= 0");
            profile[m].validate();
        }
        if (overlap) {
            const auto en = static_cast<Eigen::Index>(n);
            require(overlap->rows() == en && overlap->cols() == en, Errc::DimensionMismatch, "overlap matrix size");
            require(((*overlap).array() >= 0.0).all() && ((*overlap).array() <= 1.0).all(), Errc::InvalidArgument,
                    "overlap factors must lie in [0, 1]");
        }
    }

    static ReservoirSpec identical(std::size_t n, SpectralProfile p, double temperature, bool common = false) {
        ReservoirSpec spec;
        spec.temperature.assign(n, temperature);
        spec.profile.assign(n, p);
        spec.common = common;
        return spec;
    }
};

struct RateMatrices {
    RealMatrix gamma;
    RealMatrix upsilon;
};

// Bose-Einstein occupation 1/(exp(omega/T) - 1); zero at T = 0.
inline double mean_occupation(double temperature, double omega) {
    require(omega > 0.0, Errc::InvalidArgument, "mean_occupation: frequency must be positive");
    require(temperature >= 0.0, Errc::InvalidArgument, "mean_occupation: temperature must be >= 0");
    if (temperature == 0.0) return 0.0;
    return 1.0 / std::expm1(omega / temperature);
}

// Temperature giving occupation `nbar` at frequency `omega`.
inline double temperature_for_occupation(double nbar, double omega) {
    require(nbar >= 0.0 && omega > 0.0, Errc::InvalidArgument, "temperature_for_occupation: bad arguments");
    if (nbar == 0.0) return 0.0;
    return omega / std::log1p(1.0 / nbar);
}

// Normalized overlap int sqrt(g_a g_b) / sqrt(int g_a int g_b) over omega > 0.
inline double profile_overlap(const SpectralProfile& a, const SpectralProfile& b) {
    using Kind = SpectralProfile::Kind;
    if (a.kind == Kind::WhiteNoise && b.kind == Kind::WhiteNoise) return 1.0;
    if (a.kind == Kind::WhiteNoise || b.kind == Kind::WhiteNoise) return 0.0;
    if (a.gamma == 0.0 || b.gamma == 0.0) return 0.0;
    if (a.kind == b.kind && a.center == b.center && a.width == b.width) return 1.0;
    const double scale = std::max({std::abs(a.center), std::abs(b.center), a.width, b.width});
    const double cross = quad::integrate_half_line([&](double w) { return std::sqrt(a(w) * b(w)); }, scale);
    const double na = quad::integrate_half_line([&](double w) { return a(w); }, scale);
    const double nb = quad::integrate_half_line([&](double w) { return b(w); }, scale);
    return std::clamp(cross / std::sqrt(na * nb), 0.0, 1.0);
}

// Gamma_mn = N sum_l C_ln gamma_m(varpi_l) C_lm, and Upsilon likewise with n_m(varpi_l).
inline RateMatrices rates_distinct(const ReservoirSpec& res, const NormalModes& modes) {
    const std::size_t n = modes.size();
    res.validate(n);
    const auto en = static_cast<Eigen::Index>(n);
    const double big_n = static_cast<double>(n);
    const RealMatrix& c = modes.c;

    RateMatrices out{RealMatrix::Zero(en, en), RealMatrix::Zero(en, en)};
    for (Eigen::Index m = 0; m < en; ++m) {
        const auto& prof = res.profile[static_cast<std::size_t>(m)];
        const double temp = res.temperature[static_cast<std::size_t>(m)];
        for (Eigen::Index nn = 0; nn < en; ++nn) {
            double g = 0.0;
            double u = 0.0;
            for (Eigen::Index l = 0; l < en; ++l) {
                const double rate = prof(modes.varpi(l));
                const double diffusion = rate * mean_occupation(temp, modes.varpi(l));
                g += c(l, nn) * (rate * c(l, m));
                u += c(l, nn) * (diffusion * c(l, m));
            }
            out.gamma(m, nn) = big_n * g;
            out.upsilon(m, nn) = big_n * u;
        }
    }
    return out;
}

// C ~ I and normal modes ~ natural frequencies.
inline RateMatrices rates_weak(const ReservoirSpec& res, const NetworkSpec& spec) {
    spec.validate();
    const std::size_t n = spec.size();
    res.validate(n);
    const auto en = static_cast<Eigen::Index>(n);
    const double big_n = static_cast<double>(n);
    RateMatrices out{RealMatrix::Zero(en, en), RealMatrix::Zero(en, en)};
    for (Eigen::Index m = 0; m < en; ++m) {
        const auto sm = static_cast<std::size_t>(m);
        const double rate = res.profile[sm](spec.omega(m));
        out.gamma(m, m) = big_n * rate;
        out.upsilon(m, m) = big_n * rate * mean_occupation(res.temperature[sm], spec.omega(m));
    }
    return out;
}

inline RealMatrix overlap_matrix(const ReservoirSpec& res) {
    const std::size_t n = res.size();
    if (res.overlap) return *res.overlap;
    const auto en = static_cast<Eigen::Index>(n);
    RealMatrix o(en, en);
    for (Eigen::Index m = 0; m < en; ++m) {
        for (Eigen::Index k = 0; k < en; ++k) {
            o(m, k) = m == k ? 1.0 : profile_overlap(res.profile[static_cast<std::size_t>(m)], res.profile[static_cast<std::size_t>(k)]);
        }
    }
    return o;
}

// Single common reservoir: cross rates gamma_mn(w) = sqrt(gamma_m(w) gamma_n(w)) o_mn and
// Gamma_mn = N sum_{l,n'} C_ln gamma_mn'(varpi_l) C_ln'.
inline RateMatrices rates_common(const ReservoirSpec& res, const NormalModes& modes) {
    const std::size_t n = modes.size();
    res.validate(n);
    for (std::size_t m = 1; m < n; ++m) {
        if (res.temperature[m] != res.temperature[0]) {
            throw Error(Errc::Configuration, "a common reservoir has a single temperature; got differing temperatures");
        }
    }
    const auto en = static_cast<Eigen::Index>(n);
    const double big_n = static_cast<double>(n);
    const RealMatrix& c = modes.c;
    const RealMatrix o = overlap_matrix(res);
    const double temp = res.temperature.empty() ? 0.0 : res.temperature[0];

    // cross[l](m, n') = gamma_mn'(varpi_l)
    std::vector<RealMatrix> cross(n, RealMatrix::Zero(en, en));
    RealVector occupation(en);
    for (Eigen::Index l = 0; l < en; ++l) {
        occupation(l) = mean_occupation(temp, modes.varpi(l));
        for (Eigen::Index m = 0; m < en; ++m) {
            for (Eigen::Index k = 0; k < en; ++k) {
                const double gm = res.profile[static_cast<std::size_t>(m)](modes.varpi(l));
                if (m == k) {
                    cross[static_cast<std::size_t>(l)](m, k) = gm * o(m, k);
                } else if (o(m, k) != 0.0) {
                    const double gk = res.profile[static_cast<std::size_t>(k)](modes.varpi(l));
                    cross[static_cast<std::size_t>(l)](m, k) = std::sqrt(gm * gk) * o(m, k);
                }
            }
        }
    }

    RateMatrices out{RealMatrix::Zero(en, en), RealMatrix::Zero(en, en)};
    for (Eigen::Index m = 0; m < en; ++m) {
        for (Eigen::Index nn = 0; nn < en; ++nn) {
            double g = 0.0;
            double u = 0.0;
            for (Eigen::Index l = 0; l < en; ++l) {
                const RealMatrix& x = cross[static_cast<std::size_t>(l)];
                double inner_g = 0.0;
                double inner_u = 0.0;
                for (Eigen::Index k = 0; k < en; ++k) {
                    inner_g += x(m, k) * c(l, k);
                    inner_u += (x(m, k) * occupation(l)) * c(l, k);
                }
                g += c(l, nn) * inner_g;
                u += c(l, nn) * inner_u;
            }
            out.gamma(m, nn) = big_n * g;
            out.upsilon(m, nn) = big_n * u;
        }
    }
    return out;
}

}  // namespace bosonet
