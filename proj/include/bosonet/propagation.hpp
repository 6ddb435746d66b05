// propagation.hpp: Propagator Theta(t), widths J(t) and J~(t), centroids K(t),
// and the rotated frame with diffusion coefficients D_m(t).

#pragma once

#include "bosonet/linalg.hpp"
#include "bosonet/network.hpp"
#include "bosonet/stationary.hpp"
#include "bosonet/types.hpp"

#include <Eigen/Eigenvalues>

#include <optional>
#include <vector>

namespace bosonet {

struct PropagatorBundle {
    double t = 0.0;
    ComplexMatrix theta;
    ComplexMatrix j;
    ComplexMatrix j_tilde;
    ComplexMatrix u;
    RealVector dcoef;

    std::size_t size() const noexcept { return static_cast<std::size_t>(theta.rows()); }
};

struct RotatedFrame {
    ComplexMatrix u;
    RealVector dcoef;
};

// Theta(t) = D exp(-Omega t) D^{-1}.
inline ComplexMatrix theta(const DissipativeMatrix& hd, double t) {
    require(t >= 0.0 && std::isfinite(t), Errc::InvalidArgument, "theta: time must be finite and >= 0");
    const ComplexVector decay = (-hd.omega_big.array() * t).exp();
    return hd.d * decay.asDiagonal() * hd.d_inv;
}

// J = Pi - Theta* Pi Theta^T.
inline ComplexMatrix j_matrix(const StationaryWidth& pi, const ComplexMatrix& th) {
    require(pi.pi.rows() == th.rows(), Errc::DimensionMismatch, "j_matrix: Pi and Theta sizes differ");
    return pi.pi - th.conjugate() * pi.pi * th.transpose();
}

inline ComplexVector k_vector(const ComplexMatrix& th, const ComplexVector& beta) {
    require(th.cols() == beta.size(), Errc::DimensionMismatch, "k_vector: amplitude vector size");
    return th * beta;
}

// U^dagger J~ U = diag(D), ascending.
inline RotatedFrame rotate_frame(const ComplexMatrix& j_tilde) {
    const ComplexMatrix herm = 0.5 * (j_tilde + j_tilde.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm);
    if (solver.info() != Eigen::Success) {
        throw Error(Errc::InvalidArgument, "rotate_frame: Hermitian eigensolve failed");
    }
    RotatedFrame out;
    out.dcoef = solver.eigenvalues();
    out.u = linalg::canonical_eigenbasis<Complex>(out.dcoef, solver.eigenvectors());
    return out;
}

inline PropagatorBundle make_bundle(double t, ComplexMatrix th, ComplexMatrix j) {
    PropagatorBundle b;
    b.t = t;
    b.theta = std::move(th);
    b.j = std::move(j);
    b.j_tilde = b.j + ComplexMatrix::Identity(b.j.rows(), b.j.cols());
    RotatedFrame frame = rotate_frame(b.j_tilde);
    b.u = std::move(frame.u);
    b.dcoef = std::move(frame.dcoef);
    return b;
}

inline PropagatorBundle bundle_at(const DissipativeMatrix& hd, const StationaryWidth& pi, double t) {
    ComplexMatrix th = theta(hd, t);
    ComplexMatrix j = j_matrix(pi, th);
    return make_bundle(t, std::move(th), std::move(j));
}

// Evolution generator for a network: dissipative (hd, Pi) or free (unitary, J = 0).
class Propagator {
public:
    static Propagator dissipative(DissipativeMatrix hd, StationaryWidth pi) {
        Propagator p;
        p.hd_ = std::move(hd);
        p.pi_ = std::move(pi);
        return p;
    }

    // gamma = 0: Theta(t) = C^T exp(-i varpi t) C.
    static Propagator free(NormalModes modes) {
        Propagator p;
        p.modes_ = std::move(modes);
        return p;
    }

    bool is_free() const noexcept { return modes_.has_value(); }
    std::size_t size() const noexcept { return is_free() ? modes_->size() : hd_.size(); }
    const DissipativeMatrix& generator() const {
        require(!is_free(), Errc::Precondition, "free propagator has no dissipative generator");
        return hd_;
    }
    const StationaryWidth& stationary() const {
        require(!is_free(), Errc::Precondition, "free propagator has no stationary width");
        return pi_;
    }

    PropagatorBundle bundle(double t) const {
        if (!is_free()) return bundle_at(hd_, pi_, t);
        require(t >= 0.0 && std::isfinite(t), Errc::InvalidArgument, "bundle: time must be finite and >= 0");
        const Eigen::Index n = static_cast<Eigen::Index>(modes_->size());
        const ComplexVector phase = (Complex(0.0, -1.0) * modes_->varpi.cast<Complex>().array() * t).exp();
        const ComplexMatrix c = modes_->c.cast<Complex>();
        return make_bundle(t, c.transpose() * phase.asDiagonal() * c, ComplexMatrix::Zero(n, n));
    }

    std::vector<PropagatorBundle> bundles(const std::vector<double>& times) const {
        std::vector<PropagatorBundle> out;
        out.reserve(times.size());
        for (double t : times) out.push_back(bundle(t));
        return out;
    }

    // t -> infinity: Theta = 0, J = Pi.
    PropagatorBundle asymptotic() const {
        require(!is_free(), Errc::Precondition, "a free propagator has no asymptotic state");
        const Eigen::Index n = hd_.hd.rows();
        return make_bundle(std::numeric_limits<double>::infinity(), ComplexMatrix::Zero(n, n), pi_.pi);
    }

private:
    Propagator() = default;
    DissipativeMatrix hd_;
    StationaryWidth pi_;
    std::optional<NormalModes> modes_;
};

// True when the bundle describes unitary, diffusion-free evolution.
inline bool is_dissipation_free(const PropagatorBundle& b, double tol = 1e-10) {
    const Eigen::Index n = b.theta.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    return max_abs(b.j) <= tol && max_abs(ComplexMatrix(b.theta.adjoint() * b.theta - id)) <= tol;
}

inline std::vector<double> linspace(double start, double stop, std::size_t steps) {
    require(steps >= 1, Errc::InvalidArgument, "linspace: need at least one point");
    std::vector<double> out(steps);
    if (steps == 1) {
        out[0] = start;
        return out;
    }
    for (std::size_t k = 0; k < steps; ++k) {
        out[k] = start + (stop - start) * static_cast<double>(k) / static_cast<double>(steps - 1);
    }
    return out;
}

}  // namespace bosonet
