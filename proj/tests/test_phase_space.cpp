#include "common.hpp"

#include <gtest/gtest.h>

using namespace bosonet;
using bosonet::testing::cvec;
using bosonet::testing::single_mode;

namespace {

PropagatorBundle with_width(PropagatorBundle b, const ComplexMatrix& j) {
    b.j = j;
    return b;
}

// int f d^2 xi over [-l, l]^2 by tensor Gauss-Legendre.
template <class F>
double box_integral(F&& f, double l, std::size_t nodes) {
    const quad::Rule rule = quad::gauss_legendre(nodes);
    double total = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        for (std::size_t k = 0; k < rule.size(); ++k) {
            total += rule.weights[i] * rule.weights[k] * f(Complex(l * rule.nodes[i], l * rule.nodes[k]));
        }
    }
    return total * l * l;
}

}  // namespace

TEST(PhaseSpace, CoherentMixtureNormalizes) {
    const CoherentMixture cat = build_cat_family(1, 1, 0, 1.0, 0.0, 1);
    const auto& comps = cat.branches()[0].components;
    ASSERT_EQ(comps.size(), 2u);
    const double expected = 1.0 / std::sqrt(2.0 * (1.0 + std::exp(-2.0)));
    EXPECT_NEAR(std::abs(comps[0].amplitude), expected, 1e-14);
}

TEST(PhaseSpace, NullSuperpositionRejected) {
    try {
        build_cat_family(2, 0, 0, 1.0, 0.5, -1);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NullState);
    }
}

TEST(PhaseSpace, WeightsMustSumToOne) {
    EXPECT_THROW(CoherentMixture::make({CoherentBranch{0.4, {CoherentComponent{1.0, cvec({1.0})}}}}), Error);
}

TEST(PhaseSpace, CatFamilyLayout) {
    const CoherentMixture cat = build_cat_family(4, 2, 1, 2.0, 0.5, 1);
    const auto& c = cat.branches()[0].components;
    EXPECT_EQ(c[0].beta(0), Complex(2.0));
    EXPECT_EQ(c[0].beta(2), Complex(-2.0));
    EXPECT_EQ(c[0].beta(3), Complex(0.5));
    EXPECT_EQ(c[1].beta(1), Complex(-2.0));
    EXPECT_EQ(c[1].beta(2), Complex(2.0));
    EXPECT_EQ(c[1].beta(3), Complex(0.5));
}

TEST(PhaseSpace, CharacteristicFunctionProperties) {
    std::mt19937_64 rng(31);
    const auto inst = bosonet::testing::random_instance(rng, 3);
    const PropagatorBundle b = bosonet::testing::make_propagator(inst.h, inst.gamma, inst.upsilon).bundle(1.3);
    const CoherentMixture cat = build_cat_family(3, 2, 1, Complex(0.8, 0.3), 0.0, -1);
    EXPECT_NEAR(std::abs(char_function(cat, ComplexVector::Zero(3), b) - 1.0), 0.0, 1e-13);
    const ComplexVector eta = cvec({Complex(0.2, -0.4), Complex(0.7, 0.1), Complex(-0.3, 0.5)});
    EXPECT_NEAR(std::abs(char_function(cat, ComplexVector(-eta), b) - std::conj(char_function(cat, eta, b))), 0.0, 1e-13);
}

TEST(PhaseSpace, CoherentStateCharacteristicFunction) {
    // Pure coherent state at t = 0: chi = exp(eta conj(beta) - conj(eta) beta).
    const PropagatorBundle b = single_mode(1.0, 0.1, 0.5).bundle(0.0);
    const ComplexVector beta = cvec({Complex(0.6, -0.2)});
    const ComplexVector eta = cvec({Complex(0.3, 0.8)});
    const Complex expected = std::exp(eta(0) * std::conj(beta(0)) - std::conj(eta(0)) * beta(0));
    EXPECT_NEAR(std::abs(char_function(CoherentMixture::coherent(beta), eta, b) - expected), 0.0, 1e-14);
}

TEST(PhaseSpace, CoherentWignerIsGaussian) {
    const Propagator prop = single_mode(1.0, 0.2, 0.5);
    const PropagatorBundle b = prop.bundle(3.0);
    const ComplexVector beta = cvec({Complex(1.0, 0.5)});
    const CoherentMixture state = CoherentMixture::coherent(beta);
    const ComplexVector k = k_vector(b.theta, beta);
    const double d = b.dcoef(0);
    const ComplexVector xi = cvec({k(0) + Complex(0.3, -0.2)});
    const double expected = 2.0 / (kPi * d) * std::exp(-2.0 * std::norm(xi(0) - k(0)) / d);
    EXPECT_NEAR(wigner(state, xi, b), expected, 1e-14);
}

TEST(PhaseSpace, PSubstitutionIdentity) {
    std::mt19937_64 rng(37);
    const auto inst = bosonet::testing::random_instance(rng, 2);
    const PropagatorBundle b = bosonet::testing::make_propagator(inst.h, inst.gamma, inst.upsilon).bundle(2.0);
    const CoherentMixture cat = build_cat_family(2, 1, 1, 1.2, 0.0, 1);
    const PropagatorBundle sub = with_width(b, b.j_tilde);
    for (const Complex x : {Complex(0.0, 0.0), Complex(0.4, -0.9), Complex(-1.3, 0.2)}) {
        const ComplexVector xi = cvec({x, 0.5 * x});
        EXPECT_NEAR(std::abs(p_function(cat, xi, sub) - wigner(cat, xi, b)), 0.0, 1e-12);
    }
}

TEST(PhaseSpace, WignerIsGaussianSmoothedP) {
    // W(xi) = int P(zeta) (2/pi) exp(-2 |xi - zeta|^2) d^2 zeta.
    const PropagatorBundle b = single_mode(1.0, 0.2, 1.0).bundle(4.0);
    const CoherentMixture cat = build_cat_family(1, 1, 0, 1.0, 0.0, 1);
    const quad::Rule rule = quad::gauss_hermite(48);
    for (const Complex x : {Complex(0.1, 0.0), Complex(-0.5, 0.7)}) {
        double total = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            for (std::size_t k = 0; k < rule.size(); ++k) {
                const Complex zeta = x + Complex(rule.nodes[i], rule.nodes[k]) / std::sqrt(2.0);
                total += rule.weights[i] * rule.weights[k] * p_function(cat, cvec({zeta}), b).real();
            }
        }
        EXPECT_NEAR(total / kPi, wigner(cat, cvec({x}), b), 1e-10);
    }
}

TEST(PhaseSpace, SingularPRejected) {
    const PropagatorBundle b = single_mode(1.0, 0.2, 0.5).bundle(0.0);
    try {
        p_function(CoherentMixture::coherent(cvec({1.0})), cvec({0.0}), b);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::SingularWidth);
    }
}

TEST(PhaseSpace, WignerNormalization) {
    const PropagatorBundle b = single_mode(1.0, 0.2, 0.5).bundle(1.5);
    const CoherentMixture cat = build_cat_family(1, 1, 0, 1.5, 0.0, -1);
    const double total = box_integral([&](Complex x) { return wigner(cat, cvec({x}), b); }, 8.0, 160);
    EXPECT_NEAR(total, 1.0, 1e-6);
}

TEST(PhaseSpace, RotatedElementsSumToWigner) {
    std::mt19937_64 rng(41);
    const auto inst = bosonet::testing::random_instance(rng, 3);
    const PropagatorBundle b = bosonet::testing::make_propagator(inst.h, inst.gamma, inst.upsilon).bundle(0.7);
    const CoherentMixture cat = build_cat_family(3, 3, 0, Complex(0.5, 0.5), 0.0, 1);
    const ComplexVector xi = cvec({Complex(0.1, 0.2), Complex(-0.3, 0.0), Complex(0.4, -0.4)});
    Complex sum = 0.0;
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t s = 0; s < 2; ++s) sum += wigner_element(cat, 0, r, s, xi, b);
    EXPECT_NEAR(sum.real(), wigner(cat, xi, b), 1e-13);
    EXPECT_NEAR(sum.imag(), 0.0, 1e-13);
}

TEST(PhaseSpace, WignerFromCharMatchesClosedForm) {
    const PropagatorBundle b = single_mode(1.0, 0.2, 0.5).bundle(1.0);
    const CoherentMixture cat = build_cat_family(1, 1, 0, 1.0, 0.0, 1);
    const CharEvaluator chi = [&](const ComplexVector& eta) { return char_function(cat, eta, b); };
    for (const Complex x : {Complex(0.0, 0.0), Complex(0.8, 0.3), Complex(-0.2, -1.1)}) {
        EXPECT_NEAR(wigner_from_char(chi, cvec({x})), wigner(cat, cvec({x}), b), 1e-6);
    }
}

TEST(PhaseSpace, FockOneWignerAtOrigin) {
    const PropagatorBundle b = single_mode(1.0, 0.2, 0.5).bundle(0.0);
    const FockMixture one = FockMixture::number_state({1});
    const CharEvaluator chi = [&](const ComplexVector& eta) { return char_function_fock(one, eta, b); };
    EXPECT_NEAR(wigner_from_char(chi, cvec({0.0})), -2.0 / kPi, 1e-6);
}

TEST(PhaseSpace, FockCharacteristicElements) {
    // <0|e^{eta a+} e^{-eta* a}|0> = 1, <1|...|1> = 1 - |eta|^2, <1|...|0> = eta.
    const Complex eta(0.3, -0.7);
    EXPECT_NEAR(std::abs(fock_char_element(0, 0, eta) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(fock_char_element(1, 1, eta) - (1.0 - std::norm(eta))), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(fock_char_element(1, 0, eta) - eta), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(fock_char_element(0, 1, eta) + std::conj(eta)), 0.0, 1e-15);
}

TEST(PhaseSpace, FockVacuumMatchesCoherentVacuum) {
    const PropagatorBundle b = single_mode(1.0, 0.2, 0.5).bundle(2.0);
    const ComplexVector eta = cvec({Complex(0.4, 0.1)});
    EXPECT_NEAR(std::abs(char_function_fock(FockMixture::number_state({0}), eta, b) -
                         char_function(CoherentMixture::coherent(cvec({0.0})), eta, b)),
                0.0, 1e-15);
}

TEST(PhaseSpace, WignerFromCharRejectsLargeNetworks) {
    const CharEvaluator chi = [](const ComplexVector&) { return Complex(1.0); };
    EXPECT_THROW(wigner_from_char(chi, ComplexVector::Zero(3)), Error);
}
