// phase_space.hpp: Coherent and Fock mixtures; characteristic, P and Wigner functions.

#pragma once

#include "bosonet/propagation.hpp"
#include "bosonet/quadrature.hpp"
#include "bosonet/types.hpp"

#include <functional>
#include <vector>

namespace bosonet {

// ---------------------------- Coherent mixtures ------------------------------

struct CoherentComponent {
    Complex amplitude;
    ComplexVector beta;
};

struct CoherentBranch {
    double weight = 1.0;
    std::vector<CoherentComponent> components;
};

// log <a|b> for multimode coherent states.
inline Complex log_overlap(const ComplexVector& a, const ComplexVector& b) {
    require(a.size() == b.size(), Errc::DimensionMismatch, "log_overlap: mode count differs");
    Complex acc = 0.0;
    for (Eigen::Index m = 0; m < a.size(); ++m) {
        acc += -0.5 * std::norm(a(m)) - 0.5 * std::norm(b(m)) + std::conj(a(m)) * b(m);
    }
    return acc;
}

// rho = sum_j p_j |psi_j><psi_j|, |psi_j> = sum_k Lambda_k |beta^k>. Amplitudes are
// normalized per branch when the mixture is built.
class CoherentMixture {
public:
    static CoherentMixture make(std::vector<CoherentBranch> branches) {
        require(!branches.empty(), Errc::InvalidArgument, "mixture needs at least one branch");
        const Eigen::Index n = branches.front().components.empty() ? 0 : branches.front().components.front().beta.size();
        require(n >= 1, Errc::InvalidArgument, "mixture components need at least one mode");
        double total = 0.0;
        for (const auto& br : branches) {
            require(br.weight >= 0.0 && std::isfinite(br.weight), Errc::InvalidArgument, "branch weights must be >= 0");
            total += br.weight;
        }
        require(std::abs(total - 1.0) <= 1e-9, Errc::InvalidArgument, "branch weights must sum to 1");

        CoherentMixture out;
        out.modes_ = static_cast<std::size_t>(n);
        for (auto& br : branches) {
            require(!br.components.empty(), Errc::InvalidArgument, "branch has no components");
            CoherentBranch kept;
            kept.weight = br.weight / total;
            for (auto& c : br.components) {
                require(c.beta.size() == n, Errc::DimensionMismatch, "all components must have the same mode count");
                if (c.amplitude != 0.0) kept.components.push_back(std::move(c));
            }
            if (kept.components.empty()) throw Error(Errc::NullState, "branch has only zero amplitudes");
            double norm2 = 0.0;
            for (const auto& r : kept.components) {
                for (const auto& s : kept.components) {
                    norm2 += (std::conj(r.amplitude) * s.amplitude * std::exp(log_overlap(r.beta, s.beta))).real();
                }
            }
            double scale2 = 0.0;
            for (const auto& r : kept.components) scale2 += std::norm(r.amplitude);
            if (!(norm2 > 1e-14 * scale2)) throw Error(Errc::NullState, "superposition has zero norm");
            for (auto& c : kept.components) c.amplitude /= std::sqrt(norm2);
            if (kept.weight > 0.0) out.branches_.push_back(std::move(kept));
        }
        return out;
    }

    static CoherentMixture coherent(const ComplexVector& beta) {
        return make({CoherentBranch{1.0, {CoherentComponent{1.0, beta}}}});
    }

    std::size_t modes() const noexcept { return modes_; }
    const std::vector<CoherentBranch>& branches() const noexcept { return branches_; }

    // log(p Lambda_r^* Lambda_s <beta^r|beta^s>); r is the bra, s the ket.
    Complex log_coefficient(std::size_t branch, std::size_t r, std::size_t s) const {
        const auto& br = branches_.at(branch);
        const auto& cr = br.components.at(r);
        const auto& cs = br.components.at(s);
        return std::log(br.weight) + std::log(std::conj(cr.amplitude)) + std::log(cs.amplitude) +
               log_overlap(cr.beta, cs.beta);
    }

private:
    std::size_t modes_ = 0;
    std::vector<CoherentBranch> branches_;
};

// First R modes alpha, next S modes -alpha, rest beta; second component flips the
// sign of the first R + S modes.
inline CoherentMixture build_cat_family(std::size_t n, std::size_t r, std::size_t s, Complex alpha, Complex beta, int sign) {
    require(n >= 1, Errc::InvalidArgument, "cat family needs n >= 1");
    require(r + s <= n, Errc::InvalidArgument, "cat family needs r + s <= n");
    require(sign == 1 || sign == -1, Errc::InvalidArgument, "cat family sign must be +1 or -1");
    const auto en = static_cast<Eigen::Index>(n);
    ComplexVector first(en);
    ComplexVector second(en);
    for (Eigen::Index m = 0; m < en; ++m) {
        const auto um = static_cast<std::size_t>(m);
        if (um < r) {
            first(m) = alpha;
            second(m) = -alpha;
        } else if (um < r + s) {
            first(m) = -alpha;
            second(m) = alpha;
        } else {
            first(m) = beta;
            second(m) = beta;
        }
    }
    return CoherentMixture::make(
        {CoherentBranch{1.0, {CoherentComponent{1.0, first}, CoherentComponent{static_cast<double>(sign), second}}}});
}

// ------------------------------ Fock mixtures --------------------------------

struct FockTerm {
    std::vector<int> occupation;
    Complex coefficient;
};

struct FockBranch {
    double weight = 1.0;
    std::vector<FockTerm> terms;
};

class FockMixture {
public:
    static FockMixture make(std::vector<FockBranch> branches) {
        require(!branches.empty(), Errc::InvalidArgument, "Fock mixture needs at least one branch");
        require(!branches.front().terms.empty(), Errc::InvalidArgument, "Fock branch has no terms");
        const std::size_t n = branches.front().terms.front().occupation.size();
        require(n >= 1, Errc::InvalidArgument, "Fock terms need at least one mode");
        double total = 0.0;
        for (const auto& br : branches) {
            require(br.weight >= 0.0, Errc::InvalidArgument, "branch weights must be >= 0");
            total += br.weight;
        }
        require(std::abs(total - 1.0) <= 1e-9, Errc::InvalidArgument, "branch weights must sum to 1");
        FockMixture out;
        out.modes_ = n;
        for (auto& br : branches) {
            double norm2 = 0.0;
            for (const auto& term : br.terms) {
                require(term.occupation.size() == n, Errc::DimensionMismatch, "all Fock terms need the same mode count");
                for (int x : term.occupation) require(x >= 0, Errc::InvalidArgument, "occupation numbers must be >= 0");
                norm2 += std::norm(term.coefficient);
            }
            if (!(norm2 > 0.0)) throw Error(Errc::NullState, "Fock branch has zero norm");
            for (auto& term : br.terms) term.coefficient /= std::sqrt(norm2);
            br.weight /= total;
            if (br.weight > 0.0) out.branches_.push_back(std::move(br));
        }
        return out;
    }

    static FockMixture number_state(const std::vector<int>& occupation) {
        return make({FockBranch{1.0, {FockTerm{occupation, 1.0}}}});
    }

    std::size_t modes() const noexcept { return modes_; }
    const std::vector<FockBranch>& branches() const noexcept { return branches_; }
    int max_occupation() const {
        int top = 0;
        for (const auto& br : branches_)
            for (const auto& term : br.terms)
                for (int x : term.occupation) top = std::max(top, x);
        return top;
    }

private:
    std::size_t modes_ = 0;
    std::vector<FockBranch> branches_;
};

// ------------------------------ Evaluators -----------------------------------

namespace detail {

inline void require_bundle(std::size_t modes, const PropagatorBundle& b) {
    require(b.size() == modes, Errc::DimensionMismatch, "bundle and state mode counts differ");
}

inline void require_point(std::size_t modes, const ComplexVector& p) {
    require(static_cast<std::size_t>(p.size()) == modes, Errc::DimensionMismatch, "phase point has the wrong mode count");
}

// eta^T M conj(eta)
inline Complex quadratic(const ComplexVector& eta, const ComplexMatrix& m) {
    return eta.transpose() * m * eta.conjugate();
}

// (2/pi)^N / det W * sum c_rs exp(-2 (xi - K_s)^T W^{-1} conj(xi - K_r)).
inline Complex gaussian_sum(const CoherentMixture& state, const ComplexVector& xi, const ComplexMatrix& theta,
                            const ComplexMatrix& width) {
    const auto lu = width.partialPivLu();
    const Complex det = lu.determinant();
    const double n = static_cast<double>(state.modes());
    Complex total = 0.0;
    for (std::size_t b = 0; b < state.branches().size(); ++b) {
        const auto& comps = state.branches()[b].components;
        std::vector<ComplexVector> shift(comps.size());
        std::vector<ComplexVector> solved(comps.size());
        for (std::size_t k = 0; k < comps.size(); ++k) {
            shift[k] = xi - theta * comps[k].beta;
            // W^{-1} conj(xi - K_r)
            solved[k] = lu.solve(ComplexVector(shift[k].conjugate()));
        }
        for (std::size_t r = 0; r < comps.size(); ++r) {
            for (std::size_t s = 0; s < comps.size(); ++s) {
                const Complex expo = -2.0 * Complex(shift[s].transpose() * solved[r]);
                total += std::exp(state.log_coefficient(b, r, s) + expo);
            }
        }
    }
    return std::pow(2.0 / kPi, n) / det * total;
}

}  // namespace detail

// Normal-ordered chi(eta) = Tr[rho(t) exp(eta a^dagger) exp(-eta^* a)].
inline Complex char_function(const CoherentMixture& state, const ComplexVector& eta, const PropagatorBundle& b) {
    detail::require_bundle(state.modes(), b);
    detail::require_point(state.modes(), eta);
    const Complex width = -0.5 * detail::quadratic(eta, b.j);
    Complex total = 0.0;
    for (std::size_t br = 0; br < state.branches().size(); ++br) {
        const auto& comps = state.branches()[br].components;
        std::vector<ComplexVector> k(comps.size());
        for (std::size_t i = 0; i < comps.size(); ++i) k[i] = k_vector(b.theta, comps[i].beta);
        for (std::size_t r = 0; r < comps.size(); ++r) {
            for (std::size_t s = 0; s < comps.size(); ++s) {
                const Complex expo = Complex(eta.transpose() * k[r].conjugate()) - Complex(eta.conjugate().transpose() * k[s]);
                total += std::exp(state.log_coefficient(br, r, s) + expo + width);
            }
        }
    }
    return total;
}

// <y| exp(eta a^dagger) exp(-eta^* a) |x> for one mode.
inline Complex fock_char_element(int y, int x, Complex eta) {
    Complex total = 0.0;
    const double lx = std::lgamma(x + 1.0);
    const double ly = std::lgamma(y + 1.0);
    for (int j = std::max(0, x - y); j <= x; ++j) {
        const int p = y - x + j;
        const double logc = 0.5 * (lx + ly) - std::lgamma(j + 1.0) - std::lgamma(x - j + 1.0) - std::lgamma(p + 1.0);
        total += std::exp(logc) * std::pow(-std::conj(eta), j) * std::pow(eta, p);
    }
    return total;
}

// chi_t(eta) = chi_0(eta Theta^*) exp(-eta^T J conj(eta) / 2).
inline Complex char_function_fock(const FockMixture& state, const ComplexVector& eta, const PropagatorBundle& b) {
    detail::require_bundle(state.modes(), b);
    detail::require_point(state.modes(), eta);
    const ComplexVector evolved = b.theta.conjugate().transpose() * eta;
    const std::size_t n = state.modes();
    Complex total = 0.0;
    for (const auto& br : state.branches()) {
        for (const auto& ket : br.terms) {
            for (const auto& bra : br.terms) {
                Complex term = br.weight * ket.coefficient * std::conj(bra.coefficient);
                for (std::size_t m = 0; m < n && term != 0.0; ++m) {
                    term *= fock_char_element(bra.occupation[m], ket.occupation[m], evolved(static_cast<Eigen::Index>(m)));
                }
                total += term;
            }
        }
    }
    return total * std::exp(-0.5 * detail::quadratic(eta, b.j));
}

// Glauber-Sudarshan P function; needs a nonsingular width J.
inline Complex p_function(const CoherentMixture& state, const ComplexVector& xi, const PropagatorBundle& b) {
    detail::require_bundle(state.modes(), b);
    detail::require_point(state.modes(), xi);
    const Complex det = b.j.determinant();
    if (std::abs(det) < 1e-14) {
        throw Error(Errc::SingularWidth, "P function diverges: |det J| = " + std::to_string(std::abs(det)));
    }
    return detail::gaussian_sum(state, xi, b.theta, b.j);
}

inline double wigner(const CoherentMixture& state, const ComplexVector& xi, const PropagatorBundle& b) {
    detail::require_bundle(state.modes(), b);
    detail::require_point(state.modes(), xi);
    return detail::gaussian_sum(state, xi, b.theta, b.j_tilde).real();
}

// Rotated-frame element W_rs of one branch (bra r, ket s): with x~ = U^T x,
// c_rs (2/pi)^N / prod D_m * exp(-2 sum_m (xi~ - K~_s)_m conj(xi~ - K~_r)_m / D_m).
inline Complex wigner_element(const CoherentMixture& state, std::size_t branch, std::size_t r, std::size_t s,
                              const ComplexVector& xi, const PropagatorBundle& b) {
    detail::require_bundle(state.modes(), b);
    detail::require_point(state.modes(), xi);
    const auto& comps = state.branches().at(branch).components;
    const ComplexVector ks = b.u.transpose() * (xi - k_vector(b.theta, comps.at(s).beta));
    const ComplexVector kr = b.u.transpose() * (xi - k_vector(b.theta, comps.at(r).beta));
    Complex expo = 0.0;
    double logdet = 0.0;
    for (Eigen::Index m = 0; m < ks.size(); ++m) {
        expo += -2.0 * ks(m) * std::conj(kr(m)) / b.dcoef(m);
        logdet += std::log(b.dcoef(m));
    }
    const double n = static_cast<double>(state.modes());
    return std::exp(state.log_coefficient(branch, r, s) + expo - logdet + n * std::log(2.0 / kPi));
}

// ---------------------------- chi -> W transform ------------------------------

struct QuadratureSpec {
    std::size_t nodes = 64;
    std::size_t max_nodes = 256;
    double tolerance = 1e-5;
};

using CharEvaluator = std::function<Complex(const ComplexVector&)>;

namespace detail {

// pi^{-2N} int chi(eta) exp(-|eta|^2/2) exp(sum conj(eta) xi - eta conj(xi)) d^2 eta
// on a tensor Gauss-Hermite grid with eta components sqrt(2) (u + i v).
inline double char_transform(const CharEvaluator& chi, const ComplexVector& xi, std::size_t nodes) {
    const quad::Rule& rule = quad::gauss_hermite_cached(nodes);
    const Eigen::Index n = xi.size();
    const std::size_t dims = static_cast<std::size_t>(2 * n);
    const double root2 = std::sqrt(2.0);
    std::vector<std::size_t> idx(dims, 0);
    ComplexVector eta(n);
    double total = 0.0;
    while (true) {
        double weight = 1.0;
        for (Eigen::Index m = 0; m < n; ++m) {
            const std::size_t iu = idx[static_cast<std::size_t>(2 * m)];
            const std::size_t iv = idx[static_cast<std::size_t>(2 * m + 1)];
            eta(m) = Complex(root2 * rule.nodes[iu], root2 * rule.nodes[iv]);
            weight *= 2.0 * rule.weights[iu] * rule.weights[iv];
        }
        Complex phase = 0.0;
        for (Eigen::Index m = 0; m < n; ++m) phase += std::conj(eta(m)) * xi(m) - eta(m) * std::conj(xi(m));
        total += weight * (chi(eta) * std::exp(phase)).real();

        std::size_t d = 0;
        while (d < dims && ++idx[d] == rule.size()) idx[d++] = 0;
        if (d == dims) break;
    }
    return total / std::pow(kPi, 2.0 * static_cast<double>(n));
}

}  // namespace detail

// Wigner value from a normal-ordered characteristic function; node count doubles until
// successive results agree to the tolerance.
inline double wigner_from_char(const CharEvaluator& chi, const ComplexVector& xi, const QuadratureSpec& spec = {}) {
    require(xi.size() >= 1 && xi.size() <= 2, Errc::InvalidArgument, "wigner_from_char supports N <= 2");
    require(spec.nodes >= 2 && spec.max_nodes >= spec.nodes, Errc::InvalidArgument, "wigner_from_char: bad node counts");
    std::size_t nodes = spec.nodes;
    double previous = detail::char_transform(chi, xi, nodes);
    double change = std::numeric_limits<double>::infinity();
    while (nodes * 2 <= spec.max_nodes) {
        nodes *= 2;
        const double current = detail::char_transform(chi, xi, nodes);
        change = std::abs(current - previous);
        if (change <= spec.tolerance) return current;
        previous = current;
    }
    throw Error(Errc::QuadratureNotConverged, "Wigner transform changed by " + std::to_string(change) + " at " +
                                                  std::to_string(nodes) + " nodes");
}

}  // namespace bosonet
