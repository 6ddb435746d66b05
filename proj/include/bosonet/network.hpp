// network.hpp: Network topology, normal modes, and the dissipative generator.

#pragma once

#include "bosonet/linalg.hpp"
#include "bosonet/types.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <numeric>
#include <vector>

namespace bosonet {

// Natural frequencies and the symmetric coupling matrix of an N-oscillator network.
struct NetworkSpec {
    RealVector omega;
    RealMatrix lambda;

    std::size_t size() const noexcept { return static_cast<std::size_t>(omega.size()); }

    void validate() const {
        const Eigen::Index n = omega.size();
        require(n >= 1, Errc::InvalidArgument, "network needs at least one oscillator");
        require(lambda.rows() == n && lambda.cols() == n, Errc::DimensionMismatch,
                "coupling matrix must be " + std::to_string(n) + "x" + std::to_string(n));
        for (Eigen::Index m = 0; m < n; ++m) {
            require(std::isfinite(omega(m)) && omega(m) > 0.0, Errc::InvalidArgument,
                    "omega[" + std::to_string(m) + "] must be positive");
            require(lambda(m, m) == 0.0, Errc::InvalidArgument, "coupling matrix must have a zero diagonal");
            for (Eigen::Index k = 0; k < m; ++k) {
                require(lambda(m, k) == lambda(k, m), Errc::InvalidArgument,
                        "coupling matrix must be symmetric (entry " + std::to_string(m) + "," + std::to_string(k) + ")");
            }
        }
    }

    // All-to-all network with equal frequencies and couplings.
    static NetworkSpec degenerate_symmetric(std::size_t n, double omega, double lambda) {
        NetworkSpec spec;
        const auto en = static_cast<Eigen::Index>(n);
        spec.omega = RealVector::Constant(en, omega);
        spec.lambda = RealMatrix::Constant(en, en, lambda);
        spec.lambda.diagonal().setZero();
        return spec;
    }

    // Open chain with nearest-neighbour couplings.
    static NetworkSpec chain(const RealVector& omega, const RealVector& links) {
        require(links.size() + 1 == omega.size(), Errc::DimensionMismatch, "chain needs n-1 links");
        NetworkSpec spec;
        spec.omega = omega;
        spec.lambda = RealMatrix::Zero(omega.size(), omega.size());
        for (Eigen::Index k = 0; k < links.size(); ++k) {
            spec.lambda(k, k + 1) = links(k);
            spec.lambda(k + 1, k) = links(k);
        }
        return spec;
    }
};

// H_mm = omega_m, H_mn = lambda_mn.
struct CouplingMatrix {
    RealMatrix h;
    std::size_t size() const noexcept { return static_cast<std::size_t>(h.rows()); }
};

// Row m of `c` is the eigenvector of normal mode m; C H C^T = diag(varpi).
struct NormalModes {
    RealMatrix c;
    RealVector varpi;
    std::size_t size() const noexcept { return static_cast<std::size_t>(varpi.size()); }
};

// hd = Gamma/2 + i H with hd = D diag(omega_big) D^{-1}.
struct DissipativeMatrix {
    ComplexMatrix hd;
    ComplexMatrix d;
    ComplexMatrix d_inv;
    ComplexVector omega_big;
    double condition = 1.0;
    std::size_t size() const noexcept { return static_cast<std::size_t>(hd.rows()); }
};

enum class CouplingRegime { Weak, Strong };

inline const char* to_string(CouplingRegime r) noexcept {
    return r == CouplingRegime::Weak ? "weak" : "strong";
}

inline CouplingMatrix build_hamiltonian(const NetworkSpec& spec) {
    spec.validate();
    CouplingMatrix out;
    out.h = spec.lambda;
    out.h.diagonal() = spec.omega;
    return out;
}

inline NormalModes normal_modes(const CouplingMatrix& h) {
    const RealMatrix& m = h.h;
    require(m.rows() == m.cols() && m.rows() > 0, Errc::DimensionMismatch, "coupling matrix must be square");
    require((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0, Errc::InvalidArgument, "coupling matrix must be symmetric");

    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw Error(Errc::InvalidArgument, "normal_modes: symmetric eigensolve failed");
    }
    NormalModes out;
    out.varpi = solver.eigenvalues();
    const RealMatrix vectors = linalg::canonical_eigenbasis<double>(out.varpi, solver.eigenvectors());
    out.c = vectors.transpose();
    for (Eigen::Index k = 0; k < out.varpi.size(); ++k) {
        if (!(out.varpi(k) > 0.0)) {
            throw Error(Errc::NonPositiveNormalMode,
                        "normal mode " + std::to_string(k) + " has frequency " + std::to_string(out.varpi(k)) +
                            "; normal modes must be positive");
        }
    }
    return out;
}

inline DissipativeMatrix dissipative_matrix(const CouplingMatrix& h, const RealMatrix& gamma) {
    const Eigen::Index n = h.h.rows();
    require(gamma.rows() == n && gamma.cols() == n, Errc::DimensionMismatch, "damping matrix must match the network size");

    DissipativeMatrix out;
    out.hd = gamma.cast<Complex>() * 0.5 + Complex(0.0, 1.0) * h.h.cast<Complex>();

    Eigen::ComplexEigenSolver<ComplexMatrix> solver(out.hd, true);
    if (solver.info() != Eigen::Success) {
        throw Error(Errc::DefectiveMatrix, "dissipative_matrix: complex eigensolve failed");
    }
    const ComplexVector values = solver.eigenvalues();
    const ComplexMatrix vectors = solver.eigenvectors();

    // Ascending by frequency, then by decay rate.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (values(a).imag() != values(b).imag()) return values(a).imag() < values(b).imag();
        return values(a).real() < values(b).real();
    });
    out.omega_big.resize(n);
    out.d.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.omega_big(k) = values(order[static_cast<std::size_t>(k)]);
        out.d.col(k) = vectors.col(order[static_cast<std::size_t>(k)]).normalized();
    }

    for (Eigen::Index k = 0; k < n; ++k) {
        if (out.omega_big(k).real() <= 1e-14) {
            throw Error(Errc::NonDissipativeMode, "eigenvalue " + std::to_string(k) + " of the dissipative matrix has real part " +
                                                      std::to_string(out.omega_big(k).real()));
        }
    }

    Eigen::JacobiSVD<ComplexMatrix> svd(out.d);
    const RealVector sv = svd.singularValues();
    out.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
    if (!(out.condition <= 1e12)) {
        throw Error(Errc::DefectiveMatrix, "eigenvector matrix condition number " + std::to_string(out.condition) + " exceeds 1e12");
    }
    out.d_inv = out.d.partialPivLu().inverse();
    return out;
}

inline CouplingRegime coupling_regime(const NetworkSpec& spec, double threshold = 0.1) {
    spec.validate();
    const double n = static_cast<double>(spec.size());
    const double max_coupling = spec.lambda.size() == 0 ? 0.0 : spec.lambda.cwiseAbs().maxCoeff();
    const double min_omega = spec.omega.minCoeff();
    return n * max_coupling >= threshold * min_omega ? CouplingRegime::Strong : CouplingRegime::Weak;
}

}  // namespace bosonet
