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


#include <hmimo/array.hpp>

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <random>

using namespace hmimo;

TEST(DofLimit, Examples)
{
    EXPECT_EQ(dof_limit_planar(0.0), 0.0);
    EXPECT_NEAR(dof_limit_planar(1.0), 3.14159265358979, 1e-12);
    EXPECT_NEAR(dof_limit_planar(2.0), 12.5663706143592, 1e-12);
    EXPECT_THROW(dof_limit_planar(-1.0), std::invalid_argument);
}

TEST(SaturationCount, Examples)
{
    EXPECT_EQ(saturation_count_1d(2.0), 5u);
    EXPECT_EQ(saturation_count_1d(0.0), 1u);
    EXPECT_EQ(saturation_count_1d(3.5), 8u);
    EXPECT_EQ(saturation_count_1d(2.0 - 1e-12), 5u);
    EXPECT_EQ(saturation_count_1d(2.2), 5u);
    EXPECT_THROW(saturation_count_1d(-0.5), std::invalid_argument);
}

TEST(Hannan, Examples)
{
    EXPECT_NEAR(hannan_efficiency(0.5, 0.5), pi / 4.0, 1e-12);
    EXPECT_NEAR(hannan_efficiency(2.0 / 9.0, 1.0), 0.6981, 1e-4);
    EXPECT_EQ(hannan_efficiency(1.0, 1.0), 0.95);
    EXPECT_EQ(hannan_efficiency(1.0, 1.0, 1.0), 1.0);
    EXPECT_THROW(hannan_efficiency(0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(hannan_efficiency(1.0, -1.0), std::invalid_argument);
    EXPECT_THROW(hannan_efficiency(1.0, 1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(hannan_efficiency(1.0, 1.0, 1.5), std::invalid_argument);
}

TEST(Hannan, MonotoneAndContinuousAtCap)
{
    double prev = 0.0;
    for (int i = 1; i <= 400; ++i)
    {
        const double e = hannan_efficiency(0.0025 * i, 1.0);
        EXPECT_GE(e, prev);
        prev = e;
    }
    prev = 0.0;
    for (int i = 1; i <= 400; ++i)
    {
        const double e = hannan_efficiency(0.3, 0.0025 * i);
        EXPECT_GE(e, prev);
        prev = e;
    }
    const double crossover = 0.95 / pi;
    EXPECT_NEAR(hannan_efficiency(crossover - 1e-9, 1.0), hannan_efficiency(crossover + 1e-9, 1.0), 1e-8);
}

TEST(Hannan, TwoWavelengthSweepColumn)
{
    const double expected[] = {0.95, 0.95, 0.898, 0.698, 0.483};
    const std::size_t counts[] = {3, 5, 7, 9, 13};
    for (int i = 0; i < 5; ++i)
    {
        const auto layout = ArrayLayout::uniform_1d(counts[i], 2.0, 1.0);
        EXPECT_NEAR(hannan_efficiencies(layout).mean(), expected[i], 1e-3) << "n = " << counts[i];
    }
}

TEST(Hannan, PlanarApertureMatchesDofLimit)
{
    // An L x L aperture cut into n x n cells: total cell efficiency (uncapped)
    // adds up to the planar DOF limit.
    for (auto [l, n] : {std::pair{1.0, 4}, std::pair{2.0, 10}, std::pair{3.5, 7}})
    {
        const double cell = l / n;
        const double total = double(n * n) * hannan_efficiency(cell, cell, 1.0);
        EXPECT_NEAR(total, dof_limit_planar(l), 1e-12 * dof_limit_planar(l)) << "L = " << l;
        EXPECT_LT(pi * cell * cell, 1.0);
    }
}

TEST(ArrayLayout, Uniform1D)
{
    const auto a = ArrayLayout::uniform_1d(9, 2.0);
    EXPECT_EQ(a.size(), 9u);
    EXPECT_EQ(a.spacing(), 2.0 / 9.0);
    EXPECT_NEAR(a.positions().front().x(), -a.positions().back().x(), 1e-15);
    for (std::size_t i = 1; i < a.size(); ++i)
        EXPECT_NEAR((a.positions()[i] - a.positions()[i - 1]).norm(), 2.0 / 9.0, 1e-15);
    EXPECT_THROW(ArrayLayout::uniform_1d(0, 2.0), std::invalid_argument);
    EXPECT_THROW(ArrayLayout::uniform_1d(3, 0.0), std::invalid_argument);
    EXPECT_THROW(ArrayLayout({Vec3::Zero(), Vec3::Zero()}, 1.0, 1.0, 2.0), std::invalid_argument);
    EXPECT_THROW(ArrayLayout({Vec3::Zero()}, 0.0, 1.0, 2.0), std::invalid_argument);
}

TEST(EmbeddedEfficiency, Examples)
{
    EXPECT_EQ(embedded_efficiency(ScatteringMatrix(MatrixC::Zero(3, 3)), 1), 1.0);

    MatrixC reflect = MatrixC::Zero(2, 2);
    reflect(0, 0) = cplx(0.0, 1.0);
    EXPECT_EQ(embedded_efficiency(ScatteringMatrix(reflect), 0), 0.0);

    MatrixC s(2, 2);
    s << 0.3, 0.1, cplx(0.0, 0.2), 0.0;
    EXPECT_NEAR(embedded_efficiency(ScatteringMatrix(s), 0), 0.87, 1e-15);
}

TEST(EmbeddedEfficiency, Errors)
{
    const ScatteringMatrix s(MatrixC::Zero(2, 2));
    EXPECT_THROW(embedded_efficiency(s, 2), std::out_of_range);
    EXPECT_THROW(embedded_efficiency(s, -1), std::out_of_range);

    MatrixC active = MatrixC::Zero(2, 2);
    active(0, 1) = 0.8;
    active(1, 1) = 0.8;
    const ScatteringMatrix a(active);
    EXPECT_FALSE(a.is_passive());
    EXPECT_THROW(embedded_efficiency(a, 1), std::invalid_argument);
    EXPECT_NO_THROW(embedded_efficiency(a, 0));

    MatrixC edge = MatrixC::Zero(1, 1);
    edge(0, 0) = std::sqrt(1.0 + 5e-10);
    EXPECT_EQ(embedded_efficiency(ScatteringMatrix(edge), 0), 0.0);

    EXPECT_THROW(ScatteringMatrix(MatrixC::Zero(2, 3)), std::invalid_argument);
}

TEST(EmbeddedEfficiency, RandomPassiveMatricesStayInRange)
{
    std::mt19937_64 rng(42);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial)
    {
        const int n = 1 + trial % 8;
        MatrixC m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m(i, j) = cplx(g(rng), g(rng));
        for (int j = 0; j < n; ++j)
            m.col(j) *= std::sqrt(u(rng)) / m.col(j).norm();
        const auto e = efficiency_vector(ScatteringMatrix(m));
        for (std::size_t k = 0; k < e.size(); ++k)
        {
            ASSERT_GE(e[k], 0.0);
            ASSERT_LE(e[k], 1.0);
        }
    }
}

TEST(EfficiencyMatrix, Examples)
{
    EXPECT_EQ(efficiency_matrix(EfficiencyVector({1.0, 1.0})), MatrixR::Ones(2, 2));
    const auto x = efficiency_matrix(EfficiencyVector({0.87, 0.87}));
    EXPECT_NEAR(x(0, 1), 0.87, 1e-15);
    EXPECT_NEAR(x(1, 0), 0.87, 1e-15);
    MatrixR expected = MatrixR::Zero(2, 2);
    expected(0, 0) = 1.0;
    EXPECT_EQ(efficiency_matrix(EfficiencyVector({1.0, 0.0})), expected);
    EXPECT_THROW(EfficiencyVector({1.2}), std::invalid_argument);
    EXPECT_THROW(EfficiencyVector({-0.1}), std::invalid_argument);
    EXPECT_THROW(EfficiencyVector({}), std::invalid_argument);
}

TEST(EfficiencyMatrix, RankOnePsd)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> e(7);
    for (auto &v : e)
        v = u(rng);
    const auto x = efficiency_matrix(EfficiencyVector(e));
    EXPECT_EQ(x, x.transpose());
    for (int i = 0; i < 7; ++i)
        EXPECT_NEAR(x(i, i), e[std::size_t(i)], 1e-15);
    Eigen::SelfAdjointEigenSolver<MatrixR> es(x);
    const auto ev = es.eigenvalues();
    EXPECT_GE(ev.minCoeff(), -1e-12);
    EXPECT_LT(std::abs(ev[ev.size() - 2]), 1e-10);
}
