#include "common.hpp"

#include <gtest/gtest.h>

using namespace bosonet;
using bosonet::testing::cvec;
using bosonet::testing::single_mode;

TEST(Metrics, MeanDiffusionTime) {
    RealMatrix ups = RealMatrix::Zero(2, 2);
    ups(0, 0) = 0.05;
    ups(1, 1) = 0.15;
    ups(0, 1) = ups(1, 0) = 0.07;
    EXPECT_NEAR(mean_diffusion_time(ups).value(), 5.0, 1e-13);
    EXPECT_TRUE(mean_diffusion_time(RealMatrix::Zero(3, 3)).is_infinite());
}

TEST(Metrics, DirectionalTimesMatchExactSlopes) {
    std::mt19937_64 rng(43);
    const auto inst = bosonet::testing::random_instance(rng, 3);
    const Propagator prop = bosonet::testing::make_propagator(inst.h, inst.gamma, inst.upsilon);
    const std::vector<Time> dir = directional_diffusion_times(prop);
    const RealVector exact = directional_diffusion_rates(inst.upsilon);
    ASSERT_EQ(dir.size(), 3u);
    for (Eigen::Index m = 0; m < 3; ++m) EXPECT_NEAR(dir[static_cast<std::size_t>(m)].rate(), exact(m), 1e-5 * exact.maxCoeff());
}

TEST(Metrics, DirectionalTimesFlatAtZeroTemperature) {
    const Propagator prop = single_mode(1.0, 0.1, 0.0);
    EXPECT_TRUE(directional_diffusion_times(prop).front().is_infinite());
}

TEST(Metrics, DecayFunctionStartsAtOne) {
    std::mt19937_64 rng(47);
    const auto inst = bosonet::testing::random_instance(rng, 3);
    const Propagator prop = bosonet::testing::make_propagator(inst.h, inst.gamma, inst.upsilon);
    const CoherentMixture cat = build_cat_family(3, 2, 1, Complex(1.0, 0.4), 0.0, 1);
    EXPECT_NEAR(decay_function(cat, 0, 1, prop.bundle(0.0)), 1.0, 1e-13);
    EXPECT_THROW(decay_function(cat, 1, 1, prop.bundle(0.0)), Error);
}

TEST(Metrics, DecayFunctionZeroTemperatureIdentity) {
    const Propagator prop = single_mode(1.0, 0.3, 0.0);
    const ComplexVector a = cvec({Complex(1.1, 0.2)});
    const ComplexVector b = cvec({Complex(-0.4, 0.9)});
    const CoherentMixture state = CoherentMixture::make({CoherentBranch{1.0, {CoherentComponent{1.0, a}, CoherentComponent{1.0, b}}}});
    for (double t : linspace(0.0, 10.0, 11)) {
        const PropagatorBundle bundle = prop.bundle(t);
        const ComplexVector ka = k_vector(bundle.theta, a);
        const ComplexVector kb = k_vector(bundle.theta, b);
        const double ratio = std::exp(std::real(log_overlap(a, b)) - std::real(log_overlap(ka, kb)));
        EXPECT_NEAR(decay_function(state, 0, 1, bundle), std::pow(ratio, 4), 1e-12);
    }
}

TEST(Metrics, InterferenceTimeSolvesThreshold) {
    const Propagator prop = single_mode(1.0, 0.1, 0.5);
    const CoherentMixture cat = build_cat_family(1, 1, 0, 1.0, 0.0, 1);
    const Time tau = interference_decay_time(cat, prop, linspace(0.0, 50.0, 200));
    ASSERT_TRUE(tau.is_finite());
    const PropagatorBundle b = prop.bundle(tau.value());
    EXPECT_NEAR(log_decay_function(cat, 0, 1, b), -4.0 / b.dcoef(0), 1e-6);
}

TEST(Metrics, InterferenceTimeNeedsLongEnoughGrid) {
    const Propagator prop = single_mode(1.0, 0.01, 0.5);
    const CoherentMixture cat = build_cat_family(1, 1, 0, 1.0, 0.0, 1);
    try {
        interference_decay_time(cat, prop, linspace(0.0, 0.01, 3));
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NoBracket);
    }
}

TEST(Metrics, FreeEvolutionNeverDecoheres) {
    const NormalModes modes = normal_modes(build_hamiltonian(NetworkSpec::degenerate_symmetric(2, 1.0, 0.1)));
    const Propagator prop = Propagator::free(modes);
    const CoherentMixture cat = build_cat_family(2, 2, 0, 1.0, 0.0, 1);
    EXPECT_TRUE(interference_decay_time(cat, prop, linspace(0.0, 100.0, 50)).is_infinite());
    for (double t : {0.0, 3.0, 40.0}) EXPECT_NEAR(linear_entropy(cat, prop.bundle(t)), 0.0, 1e-10);
}

TEST(Metrics, DecoherenceTimeIsHarmonicSum) {
    EXPECT_NEAR(decoherence_time(Time::finite(2.0), Time::finite(2.0)).value(), 1.0, 1e-15);
    EXPECT_EQ(decoherence_time(Time::infinite(), Time::finite(3.0)).value(), 3.0);
    EXPECT_TRUE(decoherence_time(Time::infinite(), Time::infinite()).is_infinite());
}

TEST(Metrics, NaiveEstimatorPole) {
    EXPECT_TRUE(std::isinf(naive_cat_decoherence_time(0.25, 0.1, 0.5)));
    EXPECT_GT(naive_cat_decoherence_time(1.0, 0.1, 0.5), 0.0);
    EXPECT_LT(naive_cat_decoherence_time(0.2, 0.1, 0.5), 0.0);
}

TEST(Metrics, PurityOfCoherentStateIsInverseWidth) {
    const Propagator prop = single_mode(1.0, 0.2, 0.8);
    const CoherentMixture state = CoherentMixture::coherent(cvec({Complex(0.7, 0.1)}));
    for (double t : {0.0, 1.0, 5.0}) {
        const PropagatorBundle b = prop.bundle(t);
        EXPECT_NEAR(purity(state, b), 1.0 / b.dcoef(0), 1e-13);
    }
}

TEST(Metrics, PureStatesHaveUnitPurity) {
    std::mt19937_64 rng(53);
    const auto inst = bosonet::testing::random_instance(rng, 3);
    const Propagator prop = bosonet::testing::make_propagator(inst.h, inst.gamma, inst.upsilon);
    const CoherentMixture cat = build_cat_family(3, 1, 2, Complex(0.9, -0.3), 0.0, -1);
    EXPECT_NEAR(purity(cat, prop.bundle(0.0)), 1.0, 1e-12);
    EXPECT_LT(purity(cat, prop.bundle(2.0)), 1.0);
}

TEST(Metrics, MixtureOfDistantStatesHasHalfPurity) {
    const PropagatorBundle b = single_mode(1.0, 0.2, 0.0).bundle(0.0);
    const CoherentMixture mix = CoherentMixture::make({CoherentBranch{0.5, {CoherentComponent{1.0, cvec({8.0})}}},
                                                       CoherentBranch{0.5, {CoherentComponent{1.0, cvec({-8.0})}}}});
    EXPECT_NEAR(purity(mix, b), 0.5, 1e-12);
}

TEST(Metrics, ConcurrenceOfProductStateVanishes) {
    const NormalModes modes = normal_modes(build_hamiltonian(NetworkSpec::degenerate_symmetric(2, 1.0, 0.0)));
    const PropagatorBundle b = Propagator::free(modes).bundle(1.0);
    const CoherentMixture product = CoherentMixture::coherent(cvec({Complex(0.8, 0.2), Complex(-0.5, 0.3)}));
    EXPECT_NEAR(concurrence(product, {0}, b), 0.0, 1e-6);
}

TEST(Metrics, ConcurrenceOfEntangledCatIsSymmetric) {
    const NormalModes modes = normal_modes(build_hamiltonian(NetworkSpec::degenerate_symmetric(2, 1.0, 0.1)));
    const PropagatorBundle b = Propagator::free(modes).bundle(0.5);
    const CoherentMixture cat = build_cat_family(2, 2, 0, 1.5, 0.0, 1);
    const double ab = concurrence(cat, {0}, b);
    const double ba = concurrence(cat, {1}, b);
    EXPECT_GT(ab, 0.1);
    EXPECT_NEAR(ab, ba, 1e-5);
    // Widely separated two-mode cat: reduced state is an equal mixture, 1 - Tr rho_A^2 = 1/2.
    const CoherentMixture wide = build_cat_family(2, 2, 0, 5.0, 0.0, 1);
    EXPECT_NEAR(concurrence(wide, {0}, b), 0.5, 1e-6);
}

TEST(Metrics, ConcurrenceNeedsDissipationFreeBundle) {
    const Propagator prop = bosonet::testing::make_propagator(build_hamiltonian(NetworkSpec::degenerate_symmetric(2, 1.0, 0.1)),
                                                              0.1 * RealMatrix::Identity(2, 2), RealMatrix::Zero(2, 2));
    const CoherentMixture cat = build_cat_family(2, 2, 0, 1.0, 0.0, 1);
    try {
        concurrence(cat, {0}, prop.bundle(1.0));
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::Precondition);
    }
}
