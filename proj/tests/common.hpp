// Shared fixtures for the test suites.

#pragma once

#include "bosonet/bosonet.hpp"

#include <random>

namespace bosonet::testing {

// Random symmetric coupling with positive normal modes, diagonal damping and PSD diffusion.
struct RandomInstance {
    CouplingMatrix h;
    RealMatrix gamma;
    RealMatrix upsilon;
};

inline RandomInstance random_instance(std::mt19937_64& rng, Eigen::Index n) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.05, 0.5);
    RandomInstance out;
    out.h.h = RealMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.h.h(i, i) = 2.0 + uni(rng);
        for (Eigen::Index j = 0; j < i; ++j) out.h.h(i, j) = out.h.h(j, i) = 0.25 * uni(rng);
    }
    out.gamma = RealMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) out.gamma(i, i) = pos(rng);
    RealMatrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = 0.3 * uni(rng);
    out.upsilon = a * a.transpose();
    return out;
}

inline Propagator make_propagator(const CouplingMatrix& h, const RealMatrix& gamma, const RealMatrix& upsilon) {
    DissipativeMatrix hd = dissipative_matrix(h, gamma);
    StationaryWidth pi = solve_pi_eigen(hd, upsilon);
    return Propagator::dissipative(std::move(hd), std::move(pi));
}

// Single oscillator with rate gamma and occupation nbar.
inline Propagator single_mode(double omega, double gamma, double nbar) {
    CouplingMatrix h{RealMatrix::Constant(1, 1, omega)};
    return make_propagator(h, RealMatrix::Constant(1, 1, gamma), RealMatrix::Constant(1, 1, gamma * nbar));
}

inline ComplexVector cvec(std::initializer_list<Complex> values) {
    ComplexVector v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index k = 0;
    for (const auto& x : values) v(k++) = x;
    return v;
}

}  // namespace bosonet::testing
