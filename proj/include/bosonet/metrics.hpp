// metrics.hpp: Diffusion times, the decay function, decoherence times, linear entropy
// and bipartite concurrence.

#pragma once

#include "bosonet/network.hpp"
#include "bosonet/phase_space.hpp"
#include "bosonet/propagation.hpp"
#include "bosonet/quadrature.hpp"
#include "bosonet/types.hpp"

#include <vector>

namespace bosonet {

// ----------------------------- Diffusion times -------------------------------

// tau_diff = N / (2 Tr Upsilon); +inf when Tr Upsilon = 0.
inline Time mean_diffusion_time(const RealMatrix& upsilon) {
    require(upsilon.rows() == upsilon.cols() && upsilon.rows() > 0, Errc::DimensionMismatch, "diffusion matrix must be square");
    const double trace = upsilon.trace();
    require(trace >= -1e-14, Errc::InvalidArgument, "Tr Upsilon must be >= 0");
    return Time::from_rate(2.0 * std::max(trace, 0.0) / static_cast<double>(upsilon.rows()));
}

// 1/tau^(m) = dD_m/dt at t = 0 by forward difference between bundles at 0 and h.
// Modes whose change is below rounding noise are flat (+inf).
inline std::vector<Time> directional_diffusion_times(const PropagatorBundle& at_zero, const PropagatorBundle& at_h) {
    require(at_zero.size() == at_h.size(), Errc::DimensionMismatch, "bundles differ in size");
    const double h = at_h.t - at_zero.t;
    require(h > 0.0 && std::isfinite(h), Errc::InvalidArgument, "directional times need a positive step");
    std::vector<Time> out;
    for (Eigen::Index m = 0; m < at_zero.dcoef.size(); ++m) {
        const double delta = at_h.dcoef(m) - at_zero.dcoef(m);
        const double noise = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(at_h.dcoef(m)));
        out.push_back(delta < noise ? Time::infinite() : Time::from_rate(delta / h));
    }
    return out;
}

inline std::vector<Time> directional_diffusion_times(const Propagator& prop, double h = 1e-6) {
    return directional_diffusion_times(prop.bundle(0.0), prop.bundle(h));
}

// Exact initial slopes: eigenvalues of Upsilon + Upsilon^T, ascending.
inline RealVector directional_diffusion_rates(const RealMatrix& upsilon) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(upsilon + upsilon.transpose());
    return solver.eigenvalues();
}

// ---------------------------- Decay function ---------------------------------

// ln P_rs(t) = -2 sum_m (|dbeta_m|^2 - |dK~_m|^2 / D_m), dK~ = U^T Theta (beta^r - beta^s).
inline double log_decay_function(const CoherentMixture& state, std::size_t r, std::size_t s, const PropagatorBundle& b,
                                 std::size_t branch = 0) {
    require(r != s, Errc::InvalidArgument, "decay function needs two distinct components");
    require(b.size() == state.modes(), Errc::DimensionMismatch, "bundle and state mode counts differ");
    const auto& comps = state.branches().at(branch).components;
    const ComplexVector delta = comps.at(r).beta - comps.at(s).beta;
    const ComplexVector rotated = b.u.transpose() * (b.theta * delta);
    double acc = 0.0;
    for (Eigen::Index m = 0; m < delta.size(); ++m) {
        acc += std::norm(delta(m)) - std::norm(rotated(m)) / b.dcoef(m);
    }
    return -2.0 * acc;
}

inline double decay_function(const CoherentMixture& state, std::size_t r, std::size_t s, const PropagatorBundle& b,
                             std::size_t branch = 0) {
    return std::exp(log_decay_function(state, r, s, b, branch));
}

// ---------------------------- Decoherence times ------------------------------

namespace detail {

// ln P_rs + 4N / sum D_m; positive at t = 0, crosses zero at tau_int.
inline double interference_gap(const CoherentMixture& state, std::size_t r, std::size_t s, const PropagatorBundle& b,
                               std::size_t branch) {
    return log_decay_function(state, r, s, b, branch) + 4.0 * static_cast<double>(state.modes()) / b.dcoef.sum();
}

}  // namespace detail

// Root of P_rs(tau) = exp(-4N / sum D_m(tau)), bracketed on the caller's grid and refined
// by bisection to relative 1e-8.
inline Time interference_decay_time(const CoherentMixture& state, const Propagator& prop, const std::vector<double>& grid,
                                    std::size_t r = 0, std::size_t s = 1, std::size_t branch = 0) {
    require(grid.size() >= 2, Errc::InvalidArgument, "interference_decay_time needs at least two grid points");
    for (std::size_t k = 1; k < grid.size(); ++k) {
        require(grid[k] > grid[k - 1], Errc::InvalidArgument, "time grid must be strictly increasing");
    }
    require(grid.front() >= 0.0, Errc::InvalidArgument, "time grid must start at t >= 0");
    auto gap = [&](double t) { return detail::interference_gap(state, r, s, prop.bundle(t), branch); };

    double lo = grid.front();
    double g_lo = gap(lo);
    if (g_lo <= 0.0) {
        throw Error(Errc::NoBracket, "decay condition already met at the first grid point");
    }
    for (std::size_t k = 1; k < grid.size(); ++k) {
        const double hi_t = grid[k];
        const double g_hi = gap(hi_t);
        if (g_hi <= 0.0) {
            double a = lo;
            double b = hi_t;
            while (b - a > 1e-8 * b) {
                const double mid = 0.5 * (a + b);
                if (gap(mid) > 0.0) a = mid; else b = mid;
            }
            return Time::finite(0.5 * (a + b));
        }
        lo = hi_t;
        g_lo = g_hi;
    }
    if (prop.is_free()) return Time::infinite();
    const double g_inf = detail::interference_gap(state, r, s, prop.asymptotic(), branch);
    if (g_inf >= -1e-12) return Time::infinite();
    throw Error(Errc::NoBracket, "decay condition not met by t = " + std::to_string(grid.back()) + "; extend the time grid");
}

inline Time decoherence_time(Time tau_diff, Time tau_int) { return harmonic_sum(tau_diff, tau_int); }

struct DecoherenceReport {
    Time tau_diff = Time::infinite();
    std::vector<Time> tau_dir;
    Time tau_int = Time::infinite();
    Time tau_d = Time::infinite();
    CouplingRegime regime = CouplingRegime::Weak;
};

// Usual estimate from P_rs(tau_D) = exp(-4) for the single-mode cat:
// 1 / (2 gamma [|alpha|^2 (1 + 2 nbar) - nbar]). Infinite at the pole, negative past it.
inline double naive_cat_decoherence_time(double alpha2, double gamma, double nbar) {
    const double denom = 2.0 * gamma * (alpha2 * (1.0 + 2.0 * nbar) - nbar);
    if (denom == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / denom;
}

// -------------------------------- Entropy ------------------------------------

// Tr rho^2 = (1/det J~) sum c_rs c_r's' exp(-(K_s - K_s')^T J~^{-1} conj(K_r - K_r')),
// summed over all component pairs of all branches.
inline double purity(const CoherentMixture& state, const PropagatorBundle& b) {
    require(b.size() == state.modes(), Errc::DimensionMismatch, "bundle and state mode counts differ");
    const auto lu = b.j_tilde.partialPivLu();
    const double log_det = std::log(std::abs(lu.determinant()));

    struct Term {
        Complex log_c;
        ComplexVector ket;
        ComplexVector bra;
    };
    std::vector<Term> terms;
    for (std::size_t br = 0; br < state.branches().size(); ++br) {
        const auto& comps = state.branches()[br].components;
        std::vector<ComplexVector> k(comps.size());
        for (std::size_t i = 0; i < comps.size(); ++i) k[i] = k_vector(b.theta, comps[i].beta);
        for (std::size_t r = 0; r < comps.size(); ++r) {
            for (std::size_t s = 0; s < comps.size(); ++s) {
                terms.push_back({state.log_coefficient(br, r, s), k[s], k[r]});
            }
        }
    }
    Complex total = 0.0;
    for (const auto& p : terms) {
        for (const auto& q : terms) {
            const ComplexVector dket = p.ket - q.ket;
            const ComplexVector dbra = p.bra - q.bra;
            const Complex quad = dket.transpose() * lu.solve(ComplexVector(dbra.conjugate()));
            total += std::exp(p.log_c + q.log_c - quad - log_det);
        }
    }
    return total.real();
}

inline double linear_entropy(const CoherentMixture& state, const PropagatorBundle& b) { return 1.0 - purity(state, b); }

// ------------------------------- Concurrence ---------------------------------

namespace detail {

// int prod_k (2/pi) exp(-2 (xi - a_k) conj(xi - b_k)) d^2 xi over one mode, by
// Gauss-Hermite quadrature centred on the mean of the Gaussian centres.
inline Complex mode_integral(const std::vector<Complex>& kets, const std::vector<Complex>& bras, std::size_t nodes) {
    const quad::Rule& rule = quad::gauss_hermite_cached(nodes);
    const double count = static_cast<double>(kets.size());
    Complex centre = 0.0;
    for (std::size_t k = 0; k < kets.size(); ++k) centre += 0.5 * (kets[k] + bras[k]);
    centre /= count;
    // weight exp(-2 count |z|^2): z = (u + i v) / sqrt(2 count)
    const double scale = 1.0 / std::sqrt(2.0 * count);
    Complex total = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        for (std::size_t j = 0; j < rule.size(); ++j) {
            const Complex z(scale * rule.nodes[i], scale * rule.nodes[j]);
            const Complex xi = centre + z;
            Complex expo = 2.0 * count * std::norm(z);
            for (std::size_t k = 0; k < kets.size(); ++k) expo += -2.0 * (xi - kets[k]) * std::conj(xi - bras[k]);
            total += rule.weights[i] * rule.weights[j] * std::exp(expo);
        }
    }
    return total * scale * scale * std::pow(2.0 / kPi, count);
}

}  // namespace detail

// 1 - pi^{N_A} int [int W d^2 xi_B]^2 d^2 xi_A for dissipation-free evolution. With
// J~ = I every pair term of W is a product over modes, so the nested integrals
// reduce to per-mode two-dimensional quadratures.
inline double concurrence(const CoherentMixture& state, const std::vector<std::size_t>& part_a, const PropagatorBundle& b,
                          std::size_t nodes = 64) {
    require(b.size() == state.modes(), Errc::DimensionMismatch, "bundle and state mode counts differ");
    if (!is_dissipation_free(b)) {
        throw Error(Errc::Precondition, "concurrence needs a dissipation-free bundle (J = 0, unitary Theta)");
    }
    const std::size_t n = state.modes();
    require(n >= 2 && n <= 3, Errc::InvalidArgument, "concurrence supports 2 or 3 oscillators");
    std::vector<bool> in_a(n, false);
    for (std::size_t m : part_a) {
        require(m < n, Errc::InvalidArgument, "partition index out of range");
        require(!in_a[m], Errc::InvalidArgument, "partition index repeated");
        in_a[m] = true;
    }
    require(!part_a.empty() && part_a.size() < n, Errc::InvalidArgument, "partition must be a nonempty proper subset");

    struct Term {
        Complex log_c;
        ComplexVector ket;
        ComplexVector bra;
        Complex reduced;  // product of the B-mode integrals
    };
    std::vector<Term> terms;
    for (std::size_t br = 0; br < state.branches().size(); ++br) {
        const auto& comps = state.branches()[br].components;
        std::vector<ComplexVector> k(comps.size());
        for (std::size_t i = 0; i < comps.size(); ++i) k[i] = k_vector(b.theta, comps[i].beta);
        for (std::size_t r = 0; r < comps.size(); ++r) {
            for (std::size_t s = 0; s < comps.size(); ++s) {
                Complex reduced = 1.0;
                for (std::size_t m = 0; m < n; ++m) {
                    if (in_a[m]) continue;
                    const auto em = static_cast<Eigen::Index>(m);
                    reduced *= detail::mode_integral({k[s](em)}, {k[r](em)}, nodes);
                }
                terms.push_back({state.log_coefficient(br, r, s), k[s], k[r], reduced});
            }
        }
    }

    Complex total = 0.0;
    for (const auto& p : terms) {
        for (const auto& q : terms) {
            Complex value = p.reduced * q.reduced * std::exp(p.log_c + q.log_c);
            for (std::size_t m = 0; m < n && value != 0.0; ++m) {
                if (!in_a[m]) continue;
                const auto em = static_cast<Eigen::Index>(m);
                value *= kPi * detail::mode_integral({p.ket(em), q.ket(em)}, {p.bra(em), q.bra(em)}, nodes);
            }
            total += value;
        }
    }
    return 1.0 - total.real();
}

}  // namespace bosonet
