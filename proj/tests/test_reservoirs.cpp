#include "common.hpp"

#include <gtest/gtest.h>

using namespace bosonet;

TEST(Reservoirs, MeanOccupation) {
    EXPECT_EQ(mean_occupation(0.0, 1.0), 0.0);
    EXPECT_NEAR(mean_occupation(1.0 / std::log(3.0), 1.0), 0.5, 1e-14);
    EXPECT_NEAR(mean_occupation(1.0 / std::log(2.0), 1.0), 1.0, 1e-14);
    EXPECT_THROW(mean_occupation(1.0, 0.0), Error);
}

TEST(Reservoirs, TemperatureRoundTrip) {
    for (double nbar : {0.0, 1e-3, 0.5, 1.0, 7.0}) {
        for (double omega : {0.3, 1.0, 4.0}) {
            EXPECT_NEAR(mean_occupation(temperature_for_occupation(nbar, omega), omega), nbar, 1e-12 * std::max(1.0, nbar));
        }
    }
}

TEST(Reservoirs, ProfileShapes) {
    const auto lor = SpectralProfile::lorentzian(0.2, 1.0, 0.5);
    EXPECT_DOUBLE_EQ(lor(1.0), 0.2);
    EXPECT_DOUBLE_EQ(lor(1.5), 0.1);
    const auto band = SpectralProfile::gaussian_band(0.2, 1.0, 0.5);
    EXPECT_DOUBLE_EQ(band(1.0), 0.2);
    EXPECT_NEAR(band(1.5), 0.2 * std::exp(-0.5), 1e-15);
    EXPECT_DOUBLE_EQ(SpectralProfile::white_noise(0.3)(17.0), 0.3);
}

TEST(Reservoirs, WeakRatesAreDiagonal) {
    const NetworkSpec spec = NetworkSpec::degenerate_symmetric(3, 1.0, 0.01);
    const auto res = ReservoirSpec::identical(3, SpectralProfile::white_noise(0.1), temperature_for_occupation(0.5, 1.0));
    const RateMatrices r = rates_weak(res, spec);
    for (Eigen::Index m = 0; m < 3; ++m) {
        EXPECT_NEAR(r.gamma(m, m), 0.3, 1e-15);
        EXPECT_NEAR(r.upsilon(m, m), 0.15, 1e-12);
    }
    EXPECT_EQ(r.gamma(0, 1), 0.0);
}

TEST(Reservoirs, DistinctWhiteNoiseIsScalar) {
    // Sum_l C_ln C_lm = delta_mn for identical white-noise reservoirs.
    const NetworkSpec spec = NetworkSpec::degenerate_symmetric(4, 1.0, 0.2);
    const NormalModes modes = normal_modes(build_hamiltonian(spec));
    const auto res = ReservoirSpec::identical(4, SpectralProfile::white_noise(0.1), 0.0);
    const RateMatrices r = rates_distinct(res, modes);
    EXPECT_LT((r.gamma - 0.4 * RealMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_EQ(r.upsilon.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Reservoirs, DistinctRatesAreSymmetricPsd) {
    std::mt19937_64 rng(3);
    for (Eigen::Index n = 1; n <= 5; ++n) {
        const auto inst = bosonet::testing::random_instance(rng, n);
        const NormalModes modes = normal_modes(inst.h);
        const auto res = ReservoirSpec::identical(static_cast<std::size_t>(n), SpectralProfile::lorentzian(0.1, 2.0, 0.7), 0.8);
        const RateMatrices r = rates_distinct(res, modes);
        EXPECT_LT((r.gamma - r.gamma.transpose()).cwiseAbs().maxCoeff(), 1e-14);
        Eigen::SelfAdjointEigenSolver<RealMatrix> s(r.upsilon);
        EXPECT_GE(s.eigenvalues().minCoeff(), -1e-14);
    }
}

TEST(Reservoirs, UncoupledDistinctMatchesWeak) {
    RealVector omega(3);
    omega << 0.9, 1.0, 1.3;
    NetworkSpec spec;
    spec.omega = omega;
    spec.lambda = RealMatrix::Zero(3, 3);
    const auto res = ReservoirSpec::identical(3, SpectralProfile::gaussian_band(0.1, 1.0, 0.4), 0.6);
    const RateMatrices weak = rates_weak(res, spec);
    const RateMatrices distinct = rates_distinct(res, normal_modes(build_hamiltonian(spec)));
    EXPECT_LT((weak.gamma - distinct.gamma).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((weak.upsilon - distinct.upsilon).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Reservoirs, OverlapFactors) {
    const auto a = SpectralProfile::lorentzian(0.1, 1.0, 0.5);
    EXPECT_EQ(profile_overlap(a, a), 1.0);
    EXPECT_EQ(profile_overlap(SpectralProfile::white_noise(0.1), SpectralProfile::white_noise(0.2)), 1.0);
    EXPECT_EQ(profile_overlap(SpectralProfile::white_noise(0.1), a), 0.0);
    const double far = profile_overlap(SpectralProfile::gaussian_band(0.1, 1.0, 0.1), SpectralProfile::gaussian_band(0.1, 3.0, 0.1));
    EXPECT_LT(far, 1e-10);
    const double near = profile_overlap(SpectralProfile::gaussian_band(0.1, 1.0, 0.3), SpectralProfile::gaussian_band(0.1, 1.1, 0.3));
    EXPECT_GT(near, 0.9);
    EXPECT_LT(near, 1.0);
}

TEST(Reservoirs, CommonNeedsOneTemperature) {
    const NormalModes modes = normal_modes(build_hamiltonian(NetworkSpec::degenerate_symmetric(2, 1.0, 0.1)));
    ReservoirSpec res = ReservoirSpec::identical(2, SpectralProfile::white_noise(0.1), 0.5, true);
    res.temperature[1] = 0.6;
    try {
        rates_common(res, modes);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::Configuration);
    }
}

TEST(Reservoirs, CommonWithZeroOverlapMatchesDistinct) {
    const NormalModes modes = normal_modes(build_hamiltonian(NetworkSpec::degenerate_symmetric(3, 1.0, 0.15)));
    ReservoirSpec res = ReservoirSpec::identical(3, SpectralProfile::lorentzian(0.1, 1.0, 0.5), 0.7, true);
    res.overlap = RealMatrix::Identity(3, 3);
    const RateMatrices common = rates_common(res, modes);
    const RateMatrices distinct = rates_distinct(res, modes);
    EXPECT_LT((common.gamma - distinct.gamma).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((common.upsilon - distinct.upsilon).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Reservoirs, CommonRatesArePsd) {
    const NormalModes modes = normal_modes(build_hamiltonian(NetworkSpec::degenerate_symmetric(3, 1.0, 0.15)));
    const auto res = ReservoirSpec::identical(3, SpectralProfile::white_noise(0.1), 0.7, true);
    const RateMatrices r = rates_common(res, modes);
    Eigen::SelfAdjointEigenSolver<RealMatrix> g(r.gamma);
    Eigen::SelfAdjointEigenSolver<RealMatrix> u(r.upsilon);
    EXPECT_GE(g.eigenvalues().minCoeff(), -1e-14);
    EXPECT_GE(u.eigenvalues().minCoeff(), -1e-14);
}
