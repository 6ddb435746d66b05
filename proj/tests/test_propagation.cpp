#include "common.hpp"

#include <gtest/gtest.h>

using namespace bosonet;
using bosonet::testing::make_propagator;
using bosonet::testing::random_instance;

TEST(Propagation, ThetaStartsAtIdentity) {
    std::mt19937_64 rng(1);
    const auto inst = random_instance(rng, 4);
    const DissipativeMatrix hd = dissipative_matrix(inst.h, inst.gamma);
    EXPECT_LT(max_abs(ComplexMatrix(theta(hd, 0.0) - ComplexMatrix::Identity(4, 4))), 1e-12);
}

TEST(Propagation, ThetaSemigroup) {
    std::mt19937_64 rng(2);
    for (Eigen::Index n = 1; n <= 5; ++n) {
        const auto inst = random_instance(rng, n);
        const DissipativeMatrix hd = dissipative_matrix(inst.h, inst.gamma);
        EXPECT_LT(max_abs(ComplexMatrix(theta(hd, 1.7) - theta(hd, 0.4) * theta(hd, 1.3))), 1e-12);
    }
}

TEST(Propagation, ThetaSolvesLinearFlow) {
    std::mt19937_64 rng(4);
    const auto inst = random_instance(rng, 3);
    const DissipativeMatrix hd = dissipative_matrix(inst.h, inst.gamma);
    const double t = 0.9;
    const double h = 1e-5;
    const ComplexMatrix derivative = (theta(hd, t + h) - theta(hd, t - h)) / (2.0 * h);
    EXPECT_LT(max_abs(ComplexMatrix(derivative + hd.hd * theta(hd, t))), 1e-8);
}

TEST(Propagation, WidthSolvesLyapunovFlow) {
    std::mt19937_64 rng(6);
    const auto inst = random_instance(rng, 3);
    const Propagator prop = make_propagator(inst.h, inst.gamma, inst.upsilon);
    const ComplexMatrix& hd = prop.generator().hd;
    const double t = 1.1;
    const double h = 1e-5;
    const ComplexMatrix derivative = (prop.bundle(t + h).j - prop.bundle(t - h).j) / (2.0 * h);
    const ComplexMatrix j = prop.bundle(t).j;
    const ComplexMatrix rhs = -(hd.conjugate() * j + j * hd.transpose()) + (inst.upsilon + inst.upsilon.transpose()).cast<Complex>();
    EXPECT_LT(max_abs(ComplexMatrix(derivative - rhs)), 1e-8);
}

TEST(Propagation, WidthLimits) {
    std::mt19937_64 rng(8);
    const auto inst = random_instance(rng, 3);
    const Propagator prop = make_propagator(inst.h, inst.gamma, inst.upsilon);
    EXPECT_LT(max_abs(prop.bundle(0.0).j), 1e-14);
    EXPECT_LT(max_abs(ComplexMatrix(prop.bundle(400.0).j - prop.stationary().pi)), 1e-10);
    EXPECT_LT(max_abs(ComplexMatrix(prop.asymptotic().j - prop.stationary().pi)), 1e-15);
}

TEST(Propagation, RotatedFrameDiagonalizes) {
    std::mt19937_64 rng(10);
    for (Eigen::Index n = 1; n <= 5; ++n) {
        const auto inst = random_instance(rng, n);
        const PropagatorBundle b = make_propagator(inst.h, inst.gamma, inst.upsilon).bundle(2.0);
        EXPECT_LT(max_abs(ComplexMatrix(b.u.adjoint() * b.u - ComplexMatrix::Identity(n, n))), 1e-12);
        const ComplexMatrix diag = b.u.adjoint() * b.j_tilde * b.u;
        EXPECT_LT(max_abs(ComplexMatrix(diag - ComplexMatrix(b.dcoef.cast<Complex>().asDiagonal()))), 1e-12);
        for (Eigen::Index m = 0; m < n; ++m) EXPECT_GE(b.dcoef(m), 1.0 - 1e-12);
        for (Eigen::Index m = 1; m < n; ++m) EXPECT_LE(b.dcoef(m - 1), b.dcoef(m));
    }
}

TEST(Propagation, DiffusionCoefficientsGrowMonotonically) {
    const Propagator prop = bosonet::testing::single_mode(1.0, 0.2, 0.7);
    double previous = 1.0;
    for (double t : linspace(0.0, 30.0, 61)) {
        const double d = prop.bundle(t).dcoef(0);
        EXPECT_GE(d, previous - 1e-14);
        EXPECT_NEAR(d, 1.0 + 2.0 * 0.7 * (1.0 - std::exp(-0.2 * t)), 1e-12);
        previous = d;
    }
}

TEST(Propagation, FreePropagatorIsUnitary) {
    const NormalModes modes = normal_modes(build_hamiltonian(NetworkSpec::degenerate_symmetric(3, 1.0, 0.2)));
    const Propagator prop = Propagator::free(modes);
    EXPECT_TRUE(prop.is_free());
    for (double t : {0.0, 0.5, 7.0}) {
        const PropagatorBundle b = prop.bundle(t);
        EXPECT_TRUE(is_dissipation_free(b));
        for (Eigen::Index m = 0; m < 3; ++m) EXPECT_NEAR(b.dcoef(m), 1.0, 1e-14);
    }
    EXPECT_THROW(prop.asymptotic(), Error);
    EXPECT_THROW(prop.generator(), Error);
}

TEST(Propagation, FreeMatchesMatrixExponential) {
    const CouplingMatrix h = build_hamiltonian(NetworkSpec::degenerate_symmetric(2, 1.0, 0.3));
    const Propagator prop = Propagator::free(normal_modes(h));
    const double t = 2.3;
    // exp(-i H t) for H = [[a, b], [b, a]]
    const Complex e1 = std::exp(Complex(0.0, -1.3 * t));
    const Complex e2 = std::exp(Complex(0.0, -0.7 * t));
    ComplexMatrix expected(2, 2);
    expected << 0.5 * (e1 + e2), 0.5 * (e1 - e2), 0.5 * (e1 - e2), 0.5 * (e1 + e2);
    EXPECT_LT(max_abs(ComplexMatrix(prop.bundle(t).theta - expected)), 1e-14);
}

TEST(Propagation, DissipativeBundleIsNotDissipationFree) {
    EXPECT_FALSE(is_dissipation_free(bosonet::testing::single_mode(1.0, 0.1, 0.0).bundle(1.0)));
}

TEST(Propagation, NegativeTimeRejected) {
    const Propagator prop = bosonet::testing::single_mode(1.0, 0.1, 0.0);
    EXPECT_THROW(prop.bundle(-1.0), Error);
}

TEST(Propagation, Linspace) {
    const auto v = linspace(0.0, 1.0, 5);
    ASSERT_EQ(v.size(), 5u);
    EXPECT_EQ(v.front(), 0.0);
    EXPECT_EQ(v.back(), 1.0);
    EXPECT_EQ(v[2], 0.5);
    EXPECT_EQ(linspace(3.0, 4.0, 1).front(), 3.0);
    EXPECT_THROW(linspace(0.0, 1.0, 0), Error);
}
