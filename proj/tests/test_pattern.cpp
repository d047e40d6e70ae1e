// SPDX-License-Identifier: Apache-2.0
//
// hmimo - correlation, efficiency and capacity models for dense MIMO arrays
// Copyright (C) 2026 The hmimo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "oracles.hpp"

#include <hmimo/correlation.hpp>
#include <hmimo/ecc.hpp>
#include <hmimo/pattern.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace hmimo;

namespace
{
    const AngularGrid &grid1()
    {
        static const AngularGrid g = AngularGrid::full_sphere(1.0);
        return g;
    }

    RadiationPattern phi_polarized_isotropic(const AngularGrid &g)
    {
        return {g, std::vector<cplx>(g.size(), cplx{}), std::vector<cplx>(g.size(), cplx(1.0, 0.0))};
    }
} // namespace

TEST(AngularGrid, FullSphereShape)
{
    const auto &g = grid1();
    EXPECT_EQ(g.n_theta(), 181u);
    EXPECT_EQ(g.n_phi(), 360u);
    EXPECT_TRUE(g.phi_periodic());

    double solid_angle = 0.0;
    for (std::size_t it = 0; it < g.n_theta(); ++it)
        for (std::size_t ip = 0; ip < g.n_phi(); ++ip)
            solid_angle += g.weight(it, ip);
    EXPECT_NEAR(solid_angle, 4.0 * pi, 4.0 * pi * 1e-4);
}

TEST(AngularGrid, RejectsBadAxes)
{
    EXPECT_THROW(AngularGrid({0.0}, {0.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(AngularGrid({0.0, 1.0, 3.0}, {0.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(AngularGrid({1.0, 0.0}, {0.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(AngularGrid({0.0, 200.0}, {0.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(AngularGrid({0.0, 90.0}, {0.0, 360.0}), std::invalid_argument);
    EXPECT_THROW(AngularGrid::full_sphere(0.7), std::invalid_argument);
}

TEST(RadiationPattern, RejectsInvalidSamples)
{
    const auto g = AngularGrid::full_sphere(10.0);
    EXPECT_THROW(RadiationPattern(g, std::vector<cplx>(3), std::vector<cplx>(3)), std::invalid_argument);
    EXPECT_THROW(RadiationPattern(g, std::vector<cplx>(g.size()), std::vector<cplx>(g.size())), std::invalid_argument);
    std::vector<cplx> bad(g.size(), 1.0);
    bad[5] = cplx(std::nan(""), 0.0);
    EXPECT_THROW(RadiationPattern(g, bad, std::vector<cplx>(g.size())), std::invalid_argument);
}

TEST(Synthesis, DirectivityMatchesClosedForm)
{
    // Closed form for a hemispherical cos^q field pattern: D = 2 (2q + 1).
    const auto p = synthesize_isolated_pattern(0.75, 0.95);
    EXPECT_NEAR(p.directivity(), 5.0, 5.0 * 0.02);
    const auto uniform = synthesize_isolated_pattern(0.0, 1.0);
    EXPECT_NEAR(uniform.directivity(), 2.0, 2.0 * 0.01);
    const auto q2 = synthesize_isolated_pattern(2.0, 1.0);
    EXPECT_NEAR(q2.directivity(), 10.0, 10.0 * 0.02);
}

TEST(Synthesis, ElementParametersMatchIsolatedDipole)
{
    const auto p = synthesize_isolated_pattern(0.75, 0.95);
    EXPECT_NEAR(p.radiated_power() / (4.0 * pi), 0.95, 1e-12);
    EXPECT_NEAR(p.directivity(), 5.0, 0.1);

    // Lower hemisphere is exactly zero.
    const auto &g = p.grid();
    for (std::size_t it = 0; it < g.n_theta(); ++it)
    {
        if (g.theta_deg()[it] <= 90.0)
            continue;
        for (std::size_t ip = 0; ip < g.n_phi(); ++ip)
            ASSERT_EQ(p.e_theta()[g.index(it, ip)], cplx{});
    }
}

TEST(Synthesis, RejectsBadParameters)
{
    EXPECT_THROW(synthesize_isolated_pattern(-0.1, 0.9), std::invalid_argument);
    EXPECT_THROW(synthesize_isolated_pattern(1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(synthesize_isolated_pattern(1.0, 1.5), std::invalid_argument);
}

TEST(Translate, ZeroShiftIsIdentity)
{
    const auto p = synthesize_isolated_pattern(0.75, 0.95);
    const auto t = translate_pattern(p, Vec3::Zero());
    EXPECT_EQ(t.e_theta(), p.e_theta());
    EXPECT_EQ(t.e_phi(), p.e_phi());
}

TEST(Translate, HalfWavelengthAlongXFlipsEndfireSample)
{
    const auto &g = grid1();
    const auto t = translate_pattern(isotropic_pattern(g), Vec3(0.5, 0.0, 0.0));
    const auto v = t.e_theta()[g.index(90, 0)];
    EXPECT_NEAR(v.real(), -1.0, 1e-12);
    EXPECT_NEAR(v.imag(), 0.0, 1e-12);
}

TEST(Translate, PreservesMagnitudes)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const auto g = AngularGrid::full_sphere(5.0);
    std::vector<cplx> et(g.size()), ep(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
    {
        et[i] = {u(rng), u(rng)};
        ep[i] = {u(rng), u(rng)};
    }
    const RadiationPattern p(g, et, ep);
    for (int trial = 0; trial < 5; ++trial)
    {
        const auto t = translate_pattern(p, Vec3(u(rng), u(rng), u(rng)));
        for (std::size_t i = 0; i < g.size(); ++i)
        {
            ASSERT_NEAR(std::abs(t.e_theta()[i]), std::abs(et[i]), 1e-14 * (1.0 + std::abs(et[i])));
            ASSERT_NEAR(std::abs(t.e_phi()[i]), std::abs(ep[i]), 1e-14 * (1.0 + std::abs(ep[i])));
        }
    }
    EXPECT_THROW(translate_pattern(p, Vec3(std::nan(""), 0, 0)), std::invalid_argument);
}

TEST(Ecc, SelfCorrelationIsExactlyOne)
{
    const auto p = synthesize_isolated_pattern(0.75, 0.95);
    const auto aps = AngularPowerSpectrum::uniform(p.grid());
    EXPECT_EQ(ecc(p, p, aps), cplx(1.0, 0.0));
    const auto copy = p;
    EXPECT_EQ(ecc(p, copy, aps), cplx(1.0, 0.0));
}

TEST(Ecc, OrthogonalPolarizationsAreUncorrelated)
{
    const auto &g = grid1();
    const auto aps = AngularPowerSpectrum::uniform(g);
    EXPECT_EQ(ecc(isotropic_pattern(g), phi_polarized_isotropic(g), aps), cplx{});
}

TEST(Ecc, HalfWavelengthIsotropicPairIsUncorrelated)
{
    const auto &g = grid1();
    const auto iso = isotropic_pattern(g);
    const auto aps = AngularPowerSpectrum::uniform(g);
    const auto rho = ecc(translate_pattern(iso, Vec3(-0.25, 0, 0)), translate_pattern(iso, Vec3(0.25, 0, 0)), aps);
    EXPECT_LT(std::abs(rho), 1e-3);
}

TEST(Ecc, ReproducesFullSphereCorrelation)
{
    const auto &g = grid1();
    const auto iso = isotropic_pattern(g);
    const auto aps = AngularPowerSpectrum::uniform(g);
    for (double d : {0.1, 0.25, 0.5, 1.0})
    {
        const auto rho = ecc(iso, translate_pattern(iso, Vec3(d, 0, 0)), aps);
        EXPECT_NEAR(std::abs(rho - corr3d(d, PolarRange3D::full_sphere()).value), 0.0, 1e-3) << "d = " << d;
        EXPECT_NEAR(rho.real(), oracle::sinc_correlation(d), 1e-3) << "d = " << d;
    }
}

TEST(Ecc, ScaleInvariance)
{
    const auto g = AngularGrid::full_sphere(2.0);
    const auto a = translate_pattern(synthesize_isolated_pattern(0.75, 0.95, g), Vec3(0.0, 0, 0));
    const auto b = translate_pattern(synthesize_isolated_pattern(0.75, 0.95, g), Vec3(0.3, 0.1, 0));
    const auto aps = AngularPowerSpectrum::uniform(g);
    const cplx ref = ecc(a, b, aps);
    for (double s : {1e-3, 0.5, 7.0, 1e4})
    {
        std::vector<cplx> scaled = b.e_theta();
        for (auto &v : scaled)
            v *= s;
        const RadiationPattern bs(g, scaled, b.e_phi());
        EXPECT_NEAR(std::abs(ecc(a, bs, aps) - ref), 0.0, 1e-12) << "scale " << s;
    }
}

TEST(Ecc, GridRefinementConverges)
{
    for (double d : {0.2, 0.4, 0.75})
    {
        cplx coarse, fine;
        for (double step : {2.0, 1.0})
        {
            const auto g = AngularGrid::full_sphere(step);
            const auto e = synthesize_isolated_pattern(0.75, 0.95, g);
            const auto rho = ecc(e, translate_pattern(e, Vec3(d, 0, 0)), AngularPowerSpectrum::uniform(g));
            (step == 2.0 ? coarse : fine) = rho;
        }
        EXPECT_LT(std::abs(coarse - fine), 1e-3) << "d = " << d;
    }
}

TEST(Ecc, XpdWeightsThetaTerm)
{
    const auto &g = grid1();
    // Mixed-polarization pattern: theta part correlated with `a`, phi part not.
    const auto a = isotropic_pattern(g);
    std::vector<cplx> et(g.size(), cplx(1.0, 0.0)), ep(g.size(), cplx(1.0, 0.0));
    const RadiationPattern b(g, et, ep);
    const AngularPowerSpectrum strong(g, std::vector<double>(g.size(), 1.0), std::vector<double>(g.size(), 1.0), 4.0);
    // G_ab = kappa, G_aa = kappa, G_bb = kappa + 1  ->  rho = sqrt(kappa / (kappa + 1))
    EXPECT_NEAR(ecc(a, b, strong).real(), std::sqrt(4.0 / 5.0), 1e-12);
    EXPECT_NEAR(ecc(a, b, AngularPowerSpectrum::uniform(g)).real(), std::sqrt(0.5), 1e-12);
}

TEST(Ecc, Errors)
{
    const auto g1 = AngularGrid::full_sphere(1.0), g2 = AngularGrid::full_sphere(2.0);
    const auto p1 = isotropic_pattern(g1), p2 = isotropic_pattern(g2);
    EXPECT_THROW(ecc(p1, p2, AngularPowerSpectrum::uniform(g1)), std::invalid_argument);

    // Theta-only pattern under a spectrum with no theta-polarized power.
    const AngularPowerSpectrum phi_only(g1, std::vector<double>(g1.size(), 0.0), std::vector<double>(g1.size(), 1.0));
    EXPECT_THROW(ecc(p1, p1, phi_only), std::invalid_argument);

    EXPECT_THROW(AngularPowerSpectrum(g1, std::vector<double>(g1.size(), 0.0), std::vector<double>(g1.size(), 0.0)),
                 std::invalid_argument);
    EXPECT_THROW(AngularPowerSpectrum(g1, std::vector<double>(g1.size(), -1.0), std::vector<double>(g1.size(), 1.0)),
                 std::invalid_argument);
}

TEST(CorrelationMatrix, SinglePattern)
{
    const auto &g = grid1();
    const auto phi = correlation_matrix({isotropic_pattern(g)}, AngularPowerSpectrum::uniform(g));
    ASSERT_EQ(phi.size(), 1);
    EXPECT_EQ(phi(0, 0), cplx(1.0, 0.0));
}

TEST(CorrelationMatrix, TwoHalfWavelengthElements)
{
    const auto &g = grid1();
    const auto iso = isotropic_pattern(g);
    const auto phi = correlation_matrix({translate_pattern(iso, Vec3(-0.25, 0, 0)), translate_pattern(iso, Vec3(0.25, 0, 0))},
                                        AngularPowerSpectrum::uniform(g));
    EXPECT_LT(std::abs(phi(0, 1)), 1e-3);
    EXPECT_EQ(phi(1, 0), std::conj(phi(0, 1)));
}

TEST(CorrelationMatrix, HermitianUnitDiagonalPsd)
{
    const auto g = AngularGrid::full_sphere(2.0);
    const auto e = synthesize_isolated_pattern(0.75, 0.95, g);
    std::vector<RadiationPattern> patterns;
    for (int i = 0; i < 9; ++i)
        patterns.push_back(translate_pattern(e, Vec3(0.05 * i * i - 1.0, 0.1 * (i % 3), 0.0)));
    const auto phi = correlation_matrix(patterns, AngularPowerSpectrum::uniform(g), 3);

    EXPECT_EQ((phi.matrix() - phi.matrix().adjoint()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(phi.matrix().trace(), cplx(9.0, 0.0));
    EXPECT_GE(phi.eigenvalues().minCoeff(), -1e-12);
    for (Eigen::Index m = 0; m < 9; ++m)
        for (Eigen::Index n = 0; n < 9; ++n)
            EXPECT_LE(std::abs(phi(m, n)), 1.0 + 1e-9);

    // Worker count does not change the result.
    const auto serial = correlation_matrix(patterns, AngularPowerSpectrum::uniform(g), 1);
    EXPECT_EQ(serial.matrix(), phi.matrix());
}

TEST(CorrelationMatrix, RepairsIndefiniteInput)
{
    // |rho| = 0.9 pairwise with a sign pattern that cannot be a Gram matrix.
    MatrixC m(3, 3);
    m << 1.0, 0.9, 0.9,
        0.0, 1.0, -0.9,
        0.0, 0.0, 1.0;
    const auto phi = CorrelationMatrix::from_upper(m);
    EXPECT_TRUE(phi.was_repaired());
    EXPECT_GE(phi.eigenvalues().minCoeff(), -1e-12);
    EXPECT_EQ(phi.matrix().trace(), cplx(3.0, 0.0));
    EXPECT_EQ((phi.matrix() - phi.matrix().adjoint()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_NEAR(phi.squared_magnitude(0, 1), std::norm(phi(0, 1)), 0.0);
}

TEST(CorrelationMatrix, RejectsNonHermitian)
{
    MatrixC m = MatrixC::Identity(2, 2);
    m(0, 1) = 0.5;
    m(1, 0) = 0.2;
    EXPECT_THROW(CorrelationMatrix::from_hermitian(m), std::invalid_argument);
    EXPECT_THROW(correlation_matrix({}, AngularPowerSpectrum::uniform(grid1())), std::invalid_argument);
}
