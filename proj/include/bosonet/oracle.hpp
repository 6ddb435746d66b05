// oracle.hpp: Brute-force master-equation integration on a truncated Fock space.
//
// Basis index of |n_0, ..., n_{N-1}> is sum_m n_m (n_max+1)^(N-1-m): mode 0 is the most
// significant digit.

#pragma once

#include "bosonet/network.hpp"
#include "bosonet/phase_space.hpp"
#include "bosonet/types.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <vector>

namespace bosonet::oracle {

using SparseMatrix = Eigen::SparseMatrix<Complex>;

class FockSpace {
public:
    FockSpace(std::size_t modes, int n_max) : modes_(modes), n_max_(n_max) {
        require(modes >= 1, Errc::InvalidArgument, "Fock space needs at least one mode");
        require(n_max >= 1, Errc::InvalidArgument, "Fock cutoff must be >= 1");
        dim_ = 1;
        for (std::size_t m = 0; m < modes; ++m) {
            dim_ *= static_cast<std::size_t>(n_max + 1);
            require(dim_ <= 8192, Errc::InvalidArgument, "truncated space too large for the dense oracle");
        }
    }

    std::size_t modes() const noexcept { return modes_; }
    int n_max() const noexcept { return n_max_; }
    std::size_t dim() const noexcept { return dim_; }

    std::size_t stride(std::size_t m) const {
        std::size_t s = 1;
        for (std::size_t k = m + 1; k < modes_; ++k) s *= static_cast<std::size_t>(n_max_ + 1);
        return s;
    }

    int occupation(std::size_t index, std::size_t m) const {
        return static_cast<int>((index / stride(m)) % static_cast<std::size_t>(n_max_ + 1));
    }

    std::size_t index(const std::vector<int>& occ) const {
        require(occ.size() == modes_, Errc::DimensionMismatch, "occupation tuple size");
        std::size_t idx = 0;
        for (std::size_t m = 0; m < modes_; ++m) {
            require(occ[m] >= 0 && occ[m] <= n_max_, Errc::CutoffOverflow, "occupation exceeds the cutoff");
            idx = idx * static_cast<std::size_t>(n_max_ + 1) + static_cast<std::size_t>(occ[m]);
        }
        return idx;
    }

    // Annihilation operator of mode m.
    SparseMatrix lowering(std::size_t m) const {
        require(m < modes_, Errc::InvalidArgument, "mode index out of range");
        const auto d = static_cast<Eigen::Index>(dim_);
        const std::size_t st = stride(m);
        std::vector<Eigen::Triplet<Complex>> entries;
        for (std::size_t i = 0; i < dim_; ++i) {
            const int n = occupation(i, m);
            if (n > 0) {
                entries.emplace_back(static_cast<Eigen::Index>(i - st), static_cast<Eigen::Index>(i), std::sqrt(static_cast<double>(n)));
            }
        }
        SparseMatrix a(d, d);
        a.setFromTriplets(entries.begin(), entries.end());
        return a;
    }

private:
    std::size_t modes_;
    int n_max_;
    std::size_t dim_ = 1;
};

struct TruncatedDensityMatrix {
    std::size_t modes = 0;
    int n_max = 0;
    ComplexMatrix rho;
    double t = 0.0;

    FockSpace space() const { return FockSpace(modes, n_max); }
};

// Advisory cutoff ceil(|alpha|^2 + 6|alpha| + 6 + 10 nbar).
inline int recommended_cutoff(double alpha_abs, double nbar) {
    return static_cast<int>(std::ceil(alpha_abs * alpha_abs + 6.0 * alpha_abs + 6.0 + 10.0 * nbar));
}

// ------------------------------ Initial states -------------------------------

// Truncated ket of a multimode coherent superposition; `lost` receives the norm
// mass outside the cutoff before renormalization.
inline ComplexVector coherent_ket(const FockSpace& space, const CoherentBranch& branch, double* lost = nullptr) {
    ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(space.dim()));
    for (const auto& comp : branch.components) {
        require(static_cast<std::size_t>(comp.beta.size()) == space.modes(), Errc::DimensionMismatch, "component mode count");
        for (std::size_t i = 0; i < space.dim(); ++i) {
            Complex log_amp = std::log(comp.amplitude);
            bool zero = false;
            for (std::size_t m = 0; m < space.modes(); ++m) {
                const Complex b = comp.beta(static_cast<Eigen::Index>(m));
                const int n = space.occupation(i, m);
                log_amp += -0.5 * std::norm(b) - 0.5 * std::lgamma(n + 1.0);
                if (n > 0) {
                    if (b == 0.0) { zero = true; break; }
                    log_amp += static_cast<double>(n) * std::log(b);
                }
            }
            if (!zero) psi(static_cast<Eigen::Index>(i)) += std::exp(log_amp);
        }
    }
    const double kept = psi.squaredNorm();
    if (lost) *lost = std::max(0.0, 1.0 - kept);
    if (!(kept > 0.0)) throw Error(Errc::NullState, "truncated state has zero norm");
    return psi / std::sqrt(kept);
}

// Density matrix of a coherent mixture at the cutoff. Throws CutoffOverflow when the
// discarded tail exceeds 1e-8.
inline TruncatedDensityMatrix truncate(const CoherentMixture& state, int n_max) {
    const FockSpace space(state.modes(), n_max);
    TruncatedDensityMatrix out{state.modes(), n_max, ComplexMatrix::Zero(static_cast<Eigen::Index>(space.dim()), static_cast<Eigen::Index>(space.dim())), 0.0};
    for (const auto& br : state.branches()) {
        double lost = 0.0;
        const ComplexVector psi = coherent_ket(space, br, &lost);
        if (lost > 1e-8) {
            throw Error(Errc::CutoffOverflow, "initial state loses " + std::to_string(lost) + " of its norm at n_max = " +
                                                  std::to_string(n_max));
        }
        out.rho += br.weight * psi * psi.adjoint();
    }
    return out;
}

inline TruncatedDensityMatrix truncate(const FockMixture& state, int n_max) {
    require(state.max_occupation() <= n_max, Errc::CutoffOverflow, "Fock state exceeds the cutoff");
    const FockSpace space(state.modes(), n_max);
    const auto d = static_cast<Eigen::Index>(space.dim());
    TruncatedDensityMatrix out{state.modes(), n_max, ComplexMatrix::Zero(d, d), 0.0};
    for (const auto& br : state.branches()) {
        ComplexVector psi = ComplexVector::Zero(d);
        for (const auto& term : br.terms) psi(static_cast<Eigen::Index>(space.index(term.occupation))) += term.coefficient;
        out.rho += br.weight * psi * psi.adjoint();
    }
    return out;
}

// ------------------------------- Liouvillian ----------------------------------

// Precomputed generator
//   drho/dt = -(K rho + rho K^dagger) + sum (c + c^T)_mn a_n rho a_m^dagger + sum (d + d^T)_mn a_n^dagger rho a_m
// with c = (Gamma + Upsilon)/2, d = Upsilon/2 and
//   K = sum_mn (i H_mn + c_mn) a_m^dagger a_n + d_mn a_m a_n^dagger.
// Products are taken between truncated operators, which keeps the trace exact.
class Liouvillian {
public:
    Liouvillian(const FockSpace& space, const RealMatrix& h, const RealMatrix& gamma, const RealMatrix& upsilon) : space_(space) {
        const auto n = static_cast<Eigen::Index>(space.modes());
        require(h.rows() == n && h.cols() == n, Errc::DimensionMismatch, "Hamiltonian size");
        require(gamma.rows() == n && gamma.cols() == n, Errc::DimensionMismatch, "damping matrix size");
        require(upsilon.rows() == n && upsilon.cols() == n, Errc::DimensionMismatch, "diffusion matrix size");
        const RealMatrix c = 0.5 * (gamma + upsilon);
        const RealMatrix d = 0.5 * upsilon;
        jump_ = c + c.transpose();
        gain_ = d + d.transpose();

        for (Eigen::Index m = 0; m < n; ++m) {
            lower_.push_back(space.lowering(static_cast<std::size_t>(m)));
            raise_.push_back(SparseMatrix(lower_.back().adjoint()));
        }
        const auto dim = static_cast<Eigen::Index>(space.dim());
        k_ = SparseMatrix(dim, dim);
        for (Eigen::Index m = 0; m < n; ++m) {
            for (Eigen::Index k = 0; k < n; ++k) {
                const auto sm = static_cast<std::size_t>(m);
                const auto sk = static_cast<std::size_t>(k);
                const Complex coef(c(m, k), h(m, k));
                if (coef != 0.0) k_ += SparseMatrix(coef * (raise_[sm] * lower_[sk]));
                if (d(m, k) != 0.0) k_ += SparseMatrix(Complex(d(m, k), 0.0) * (lower_[sm] * raise_[sk]));
            }
        }
        k_adj_ = k_.adjoint();
    }

    ComplexMatrix apply(const ComplexMatrix& rho) const {
        ComplexMatrix out = -(k_ * rho);
        out -= rho * k_adj_;
        const auto n = static_cast<Eigen::Index>(space_.modes());
        for (Eigen::Index k = 0; k < n; ++k) {
            const ComplexMatrix lowered = lower_[static_cast<std::size_t>(k)] * rho;  // a_n rho
            const ComplexMatrix raised = raise_[static_cast<std::size_t>(k)] * rho;   // a_n^dagger rho
            for (Eigen::Index m = 0; m < n; ++m) {
                if (jump_(m, k) != 0.0) out += jump_(m, k) * (lowered * raise_[static_cast<std::size_t>(m)]);
                if (gain_(m, k) != 0.0) out += gain_(m, k) * (raised * lower_[static_cast<std::size_t>(m)]);
            }
        }
        return out;
    }

    const FockSpace& space() const noexcept { return space_; }
    const SparseMatrix& lowering(std::size_t m) const { return lower_.at(m); }

private:
    FockSpace space_;
    RealMatrix jump_;
    RealMatrix gain_;
    std::vector<SparseMatrix> lower_;
    std::vector<SparseMatrix> raise_;
    SparseMatrix k_;
    SparseMatrix k_adj_;
};

inline ComplexMatrix liouvillian_apply(const TruncatedDensityMatrix& rho, const RealMatrix& h, const RealMatrix& gamma,
                                       const RealMatrix& upsilon) {
    return Liouvillian(rho.space(), h, gamma, upsilon).apply(rho.rho);
}

// ------------------------------- Observables ----------------------------------

// Marginal probability of the top Fock level, per mode.
inline RealVector top_level_probability(const TruncatedDensityMatrix& rho) {
    const FockSpace space = rho.space();
    RealVector out = RealVector::Zero(static_cast<Eigen::Index>(space.modes()));
    for (std::size_t i = 0; i < space.dim(); ++i) {
        const double p = rho.rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
        for (std::size_t m = 0; m < space.modes(); ++m) {
            if (space.occupation(i, m) == space.n_max()) out(static_cast<Eigen::Index>(m)) += p;
        }
    }
    return out;
}

inline double oracle_purity(const TruncatedDensityMatrix& rho) {
    return (rho.rho.array() * rho.rho.transpose().array()).sum().real();
}

// Reduced state on the modes in `keep`, in ascending mode order.
inline TruncatedDensityMatrix oracle_partial_trace(const TruncatedDensityMatrix& rho, std::vector<std::size_t> keep) {
    const FockSpace space = rho.space();
    std::sort(keep.begin(), keep.end());
    require(!keep.empty(), Errc::InvalidArgument, "partial trace must keep at least one mode");
    require(std::adjacent_find(keep.begin(), keep.end()) == keep.end(), Errc::InvalidArgument, "repeated mode in partial trace");
    require(keep.back() < space.modes(), Errc::InvalidArgument, "mode index out of range");
    const FockSpace reduced(keep.size(), space.n_max());
    std::vector<bool> kept(space.modes(), false);
    for (std::size_t m : keep) kept[m] = true;

    auto split = [&](std::size_t i, std::size_t& in, std::size_t& out) {
        in = 0;
        out = 0;
        for (std::size_t m = 0; m < space.modes(); ++m) {
            const auto digit = static_cast<std::size_t>(space.occupation(i, m));
            if (kept[m]) in = in * static_cast<std::size_t>(space.n_max() + 1) + digit;
            else out = out * static_cast<std::size_t>(space.n_max() + 1) + digit;
        }
    };
    std::vector<std::size_t> inner(space.dim());
    std::vector<std::size_t> outer(space.dim());
    for (std::size_t i = 0; i < space.dim(); ++i) split(i, inner[i], outer[i]);

    const auto d = static_cast<Eigen::Index>(reduced.dim());
    TruncatedDensityMatrix out{keep.size(), space.n_max(), ComplexMatrix::Zero(d, d), rho.t};
    for (std::size_t i = 0; i < space.dim(); ++i) {
        for (std::size_t j = 0; j < space.dim(); ++j) {
            if (outer[i] != outer[j]) continue;
            out.rho(static_cast<Eigen::Index>(inner[i]), static_cast<Eigen::Index>(inner[j])) +=
                rho.rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return out;
}

struct OracleChar {
    Complex value;
    bool truncation_warning = false;
};

// Tr[rho exp(eta a^dagger) exp(-eta^* a)]; exact on the truncated space since the
// exponentials act as finite polynomials between states below the cutoff.
inline OracleChar oracle_char(const TruncatedDensityMatrix& rho, const ComplexVector& eta) {
    const FockSpace space = rho.space();
    require(static_cast<std::size_t>(eta.size()) == space.modes(), Errc::DimensionMismatch, "eta mode count");
    const int levels = space.n_max() + 1;
    std::vector<ComplexMatrix> table;
    for (std::size_t m = 0; m < space.modes(); ++m) {
        ComplexMatrix e(levels, levels);
        for (int y = 0; y < levels; ++y)
            for (int x = 0; x < levels; ++x) e(y, x) = fock_char_element(y, x, eta(static_cast<Eigen::Index>(m)));
        table.push_back(std::move(e));
    }
    Complex total = 0.0;
    for (std::size_t x = 0; x < space.dim(); ++x) {
        for (std::size_t y = 0; y < space.dim(); ++y) {
            const Complex r = rho.rho(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
            if (r == 0.0) continue;
            Complex e = 1.0;
            for (std::size_t m = 0; m < space.modes(); ++m) e *= table[m](space.occupation(y, m), space.occupation(x, m));
            total += r * e;
        }
    }
    const double p_top = top_level_probability(rho).maxCoeff();
    OracleChar out;
    out.value = total;
    out.truncation_warning = p_top * (1.0 + eta.squaredNorm() * space.n_max()) > 1e-8;
    return out;
}

inline ComplexVector oracle_mean_field(const TruncatedDensityMatrix& rho) {
    const FockSpace space = rho.space();
    ComplexVector out(static_cast<Eigen::Index>(space.modes()));
    for (std::size_t m = 0; m < space.modes(); ++m) {
        out(static_cast<Eigen::Index>(m)) = (space.lowering(m) * rho.rho).trace();
    }
    return out;
}

// M_mn = <a_m^dagger a_n>.
inline ComplexMatrix oracle_second_moments(const TruncatedDensityMatrix& rho) {
    const FockSpace space = rho.space();
    const auto n = static_cast<Eigen::Index>(space.modes());
    std::vector<SparseMatrix> a;
    for (std::size_t m = 0; m < space.modes(); ++m) a.push_back(space.lowering(m));
    ComplexMatrix out(n, n);
    for (Eigen::Index m = 0; m < n; ++m) {
        for (Eigen::Index k = 0; k < n; ++k) {
            const SparseMatrix op = SparseMatrix(a[static_cast<std::size_t>(m)].adjoint()) * a[static_cast<std::size_t>(k)];
            out(m, k) = (op * rho.rho).trace();
        }
    }
    return out;
}

// -------------------------------- Integrator ----------------------------------

struct EvolveOptions {
    double tolerance = 1e-10;
    double initial_step = 1e-3;
    std::size_t max_steps = 2000000;
    double overflow_threshold = 1e-6;
};

struct Trajectory {
    std::vector<TruncatedDensityMatrix> states;
    std::vector<double> trace_drift;  // |Tr rho - 1| at each output time, uncorrected
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
};

// Dormand-Prince 5(4) with max-norm error control; output times are hit exactly.
inline Trajectory evolve_master(const TruncatedDensityMatrix& rho0, const RealMatrix& h, const RealMatrix& gamma,
                                const RealMatrix& upsilon, const std::vector<double>& t_grid, const EvolveOptions& opt = {}) {
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        require(t_grid[k] >= rho0.t, Errc::InvalidArgument, "output times must not precede the initial time");
        require(k == 0 || t_grid[k] >= t_grid[k - 1], Errc::InvalidArgument, "output times must be nondecreasing");
    }
    const Liouvillian lv(rho0.space(), h, gamma, upsilon);

    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;

    Trajectory out;
    ComplexMatrix y = rho0.rho;
    double t = rho0.t;
    double step = opt.initial_step;
    ComplexMatrix k1 = lv.apply(y);

    auto check_overflow = [&](const ComplexMatrix& state, double when) {
        const TruncatedDensityMatrix probe{rho0.modes, rho0.n_max, state, when};
        const double top = top_level_probability(probe).maxCoeff();
        if (top > opt.overflow_threshold) {
            throw Error(Errc::CutoffOverflow, "top Fock level holds probability " + std::to_string(top) + " at t = " +
                                                  std::to_string(when) + "; raise n_max");
        }
    };
    check_overflow(y, t);

    for (double target : t_grid) {
        while (t < target) {
            if (out.accepted_steps + out.rejected_steps >= opt.max_steps) {
                throw Error(Errc::InvalidArgument, "evolve_master: step budget exhausted");
            }
            const bool last = t + step >= target;
            const double hstep = last ? target - t : step;
            const ComplexMatrix k2 = lv.apply(y + hstep * (a21 * k1));
            const ComplexMatrix k3 = lv.apply(y + hstep * (a31 * k1 + a32 * k2));
            const ComplexMatrix k4 = lv.apply(y + hstep * (a41 * k1 + a42 * k2 + a43 * k3));
            const ComplexMatrix k5 = lv.apply(y + hstep * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            const ComplexMatrix k6 = lv.apply(y + hstep * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            const ComplexMatrix next = y + hstep * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            const ComplexMatrix k7 = lv.apply(next);
            const ComplexMatrix err = hstep * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            const double err_norm = max_abs(err) / opt.tolerance;
            if (err_norm <= 1.0) {
                t = last ? target : t + hstep;
                y = next;
                k1 = k7;
                ++out.accepted_steps;
                check_overflow(y, t);
            } else {
                ++out.rejected_steps;
            }
            const double factor = err_norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
            if (!(last && err_norm <= 1.0)) step = hstep * factor;
        }
        TruncatedDensityMatrix snap{rho0.modes, rho0.n_max, y, target};
        out.trace_drift.push_back(std::abs(y.trace() - 1.0));
        out.states.push_back(std::move(snap));
    }
    return out;
}

}  // namespace bosonet::oracle
