// stationary.hpp: Stationary width Pi from (hd)* Pi + Pi hd^T = Upsilon + Upsilon^T.

#pragma once

#include "bosonet/linalg.hpp"
#include "bosonet/network.hpp"
#include "bosonet/types.hpp"

namespace bosonet {

struct StationaryWidth {
    ComplexMatrix pi;
    double residual = 0.0;
};

// Max-norm defect of the stationary equation.
inline double stationary_residual(const DissipativeMatrix& hd, const RealMatrix& upsilon, const ComplexMatrix& pi) {
    const ComplexMatrix rhs = (upsilon + upsilon.transpose()).cast<Complex>();
    return max_abs(ComplexMatrix(hd.hd.conjugate() * pi + pi * hd.hd.transpose() - rhs));
}

namespace detail {

inline void check_solvable(const DissipativeMatrix& hd, const RealMatrix& upsilon) {
    const Eigen::Index n = hd.hd.rows();
    require(upsilon.rows() == n && upsilon.cols() == n, Errc::DimensionMismatch, "diffusion matrix must match the network size");
    double smallest = std::numeric_limits<double>::infinity();
    for (Eigen::Index m = 0; m < n; ++m) {
        for (Eigen::Index k = 0; k < n; ++k) {
            smallest = std::min(smallest, std::abs(hd.omega_big(m) + std::conj(hd.omega_big(k))));
        }
    }
    if (smallest < 1e-12) {
        throw Error(Errc::SingularSystem, "min |Omega_m + conj(Omega_n)| = " + std::to_string(smallest) +
                                              "; the stationary width is undefined");
    }
}

inline StationaryWidth finish(const DissipativeMatrix& hd, const RealMatrix& upsilon, ComplexMatrix pi) {
    StationaryWidth out;
    out.pi = 0.5 * (pi + pi.adjoint());
    out.residual = stationary_residual(hd, upsilon, out.pi);
    return out;
}

}  // namespace detail

// Dense solve of [I (x) hd* + hd (x) I] vec(Pi) = vec(Upsilon + Upsilon^T).
inline StationaryWidth solve_pi_vec(const DissipativeMatrix& hd, const RealMatrix& upsilon) {
    detail::check_solvable(hd, upsilon);
    const Eigen::Index n = hd.hd.rows();
    const ComplexMatrix system = linalg::kron_sum(hd.hd.conjugate(), hd.hd);
    const ComplexMatrix rhs = (upsilon + upsilon.transpose()).cast<Complex>();
    const ComplexVector x = system.fullPivLu().solve(linalg::vec(rhs));
    return detail::finish(hd, upsilon, linalg::unvec(x, n, n));
}

// Eigenbasis route: with Pi = D* X D^T the equation decouples into
// X_nm = Q_nm / (conj(Omega_n) + Omega_m), Q = D*^{-1} (Upsilon + Upsilon^T) D^{-T}.
inline StationaryWidth solve_pi_eigen(const DissipativeMatrix& hd, const RealMatrix& upsilon) {
    detail::check_solvable(hd, upsilon);
    const Eigen::Index n = hd.hd.rows();
    const ComplexMatrix rhs = (upsilon + upsilon.transpose()).cast<Complex>();
    ComplexMatrix x = hd.d_inv.conjugate() * rhs * hd.d_inv.transpose();
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            x(a, b) /= std::conj(hd.omega_big(a)) + hd.omega_big(b);
        }
    }
    return detail::finish(hd, upsilon, hd.d.conjugate() * x * hd.d.transpose());
}

}  // namespace bosonet
