// linalg.hpp: Eigenbasis canonicalization and Kronecker helpers shared by the solvers.

#pragma once

#include "bosonet/types.hpp"

#include <algorithm>
#include <vector>

namespace bosonet::linalg {

namespace detail {

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const Complex& x) { return std::abs(x); }

inline double unit_phase(double x) { return x < 0.0 ? -1.0 : 1.0; }
inline Complex unit_phase(const Complex& x) { return x / std::abs(x); }

inline double conj_of(double x) { return x; }
inline Complex conj_of(const Complex& x) { return std::conj(x); }

}  // namespace detail

// Makes an ascending eigenbasis reproducible.
//
// Within each cluster of eigenvalues closer than `tol * max(1, |value|)` the basis
// is replaced by the Gram-Schmidt orthonormalization of the projected standard
// basis vectors e_0, e_1, ...; afterwards every vector is rephased so that its
// first component with magnitude above `zero_tol` is real and positive.
template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> canonical_eigenbasis(
    const RealVector& values, const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& vectors,
    double tol = 1e-9, double zero_tol = 1e-10) {
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    const Eigen::Index n = vectors.rows();
    Mat out = vectors;

    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index stop = start + 1;
        while (stop < n &&
               std::abs(values(stop) - values(stop - 1)) <= tol * std::max(1.0, std::abs(values(stop)))) {
            ++stop;
        }
        const Eigen::Index size = stop - start;
        if (size > 1) {
            const Mat q = vectors.middleCols(start, size);
            std::vector<Vec> chosen;
            for (Eigen::Index k = 0; k < n && static_cast<Eigen::Index>(chosen.size()) < size; ++k) {
                Vec v = q * q.row(k).adjoint();
                for (int pass = 0; pass < 2; ++pass) {
                    for (const Vec& u : chosen) v -= u * u.dot(v);
                }
                const double norm = v.norm();
                if (norm > 1e-6) chosen.push_back(v / norm);
            }
            for (Eigen::Index j = 0; j < size; ++j) out.col(start + j) = chosen[static_cast<std::size_t>(j)];
        }
        start = stop;
    }

    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            if (detail::magnitude(out(i, j)) > zero_tol) {
                out.col(j) *= detail::conj_of(detail::unit_phase(out(i, j)));
                break;
            }
        }
    }
    return out;
}

// Column-stacking vec(): first n entries are the first column.
inline ComplexVector vec(const ComplexMatrix& m) {
    return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

inline ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols) {
    return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// Kronecker sum I (x) M + N (x) I. With column stacking, vec(M X + X N^T) equals
// this matrix applied to vec(X).
inline ComplexMatrix kron_sum(const ComplexMatrix& m, const ComplexMatrix& n) {
    require(m.rows() == m.cols() && n.rows() == n.cols(), Errc::DimensionMismatch, "kron_sum: operands must be square");
    require(m.rows() == n.rows(), Errc::DimensionMismatch, "kron_sum: operands must have equal dimension");
    const ComplexMatrix id = ComplexMatrix::Identity(m.rows(), m.rows());
    return kron(id, m) + kron(n, id);
}

}  // namespace bosonet::linalg
