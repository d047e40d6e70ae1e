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

#ifndef HMIMO_ARRAY_HPP
#define HMIMO_ARRAY_HPP

#include "common.hpp"

#include <algorithm>
#include <vector>

namespace hmimo
{
    // Element positions and unit-cell size, lengths in wavelengths.
    class ArrayLayout
    {
    public:
        ArrayLayout(std::vector<Vec3> positions, double cell_dx, double cell_dy, double aperture_lx)
            : positions_(std::move(positions)), cell_dx_(cell_dx), cell_dy_(cell_dy), aperture_lx_(aperture_lx)
        {
            if (positions_.empty())
                throw std::invalid_argument("ArrayLayout: at least one element is required.");
            if (!(cell_dx > 0.0) || !(cell_dy > 0.0) || !std::isfinite(cell_dx) || !std::isfinite(cell_dy))
                throw std::invalid_argument("ArrayLayout: cell dimensions must be positive.");
            if (!(aperture_lx >= 0.0) || !std::isfinite(aperture_lx))
                throw std::invalid_argument("ArrayLayout: aperture length must be non-negative.");
            for (std::size_t i = 0; i < positions_.size(); ++i)
            {
                if (!positions_[i].allFinite())
                    throw std::invalid_argument("ArrayLayout: element positions must be finite.");
                for (std::size_t j = 0; j < i; ++j)
                    if (positions_[i] == positions_[j])
                        throw std::invalid_argument("ArrayLayout: element positions must be distinct.");
            }
        }

        // n elements filling an aperture of length lx along x: cell width lx/n,
        // positions centred on the origin with spacing lx/n.
        static ArrayLayout uniform_1d(std::size_t n, double aperture_lx, double cell_dy = 1.0)
        {
            if (n == 0)
                throw std::invalid_argument("ArrayLayout::uniform_1d: element count must be >= 1.");
            if (!(aperture_lx > 0.0) || !std::isfinite(aperture_lx))
                throw std::invalid_argument("ArrayLayout::uniform_1d: aperture length must be positive.");
            const double dx = aperture_lx / double(n);
            std::vector<Vec3> pos(n);
            for (std::size_t i = 0; i < n; ++i)
                pos[i] = Vec3((double(i) - 0.5 * double(n - 1)) * dx, 0.0, 0.0);
            return {std::move(pos), dx, cell_dy, aperture_lx};
        }

        std::size_t size() const { return positions_.size(); }
        const std::vector<Vec3> &positions() const { return positions_; }
        double cell_dx() const { return cell_dx_; }
        double cell_dy() const { return cell_dy_; }
        double aperture_lx() const { return aperture_lx_; }
        double spacing() const { return cell_dx_; }

    private:
        std::vector<Vec3> positions_;
        double cell_dx_, cell_dy_, aperture_lx_;
    };

    // Upper bound on the number of independent channels of an L x L planar
    // aperture in a half-space isotropic environment: pi L^2.
    inline double dof_limit_planar(double aperture_l)
    {
        if (!(aperture_l >= 0.0) || !std::isfinite(aperture_l))
            throw std::invalid_argument("dof_limit_planar: aperture length must be non-negative.");
        return pi * aperture_l * aperture_l;
    }

    // Element count beyond which a line aperture of length lx stops adding
    // diversity: 2 lx + 1, truncated to an integer (snapped when within 1e-9).
    inline std::size_t saturation_count_1d(double aperture_lx)
    {
        if (!(aperture_lx >= 0.0) || !std::isfinite(aperture_lx))
            throw std::invalid_argument("saturation_count_1d: aperture length must be non-negative.");
        const double v = 2.0 * aperture_lx + 1.0;
        const double nearest = std::round(v);
        return static_cast<std::size_t>(std::abs(v - nearest) <= 1e-9 ? nearest : std::floor(v));
    }

    inline constexpr double default_efficiency_cap = 0.95;

    // Embedded-efficiency ceiling of a dx x dy unit cell: min(cap, pi dx dy).
    inline double hannan_efficiency(double cell_dx, double cell_dy, double cap = default_efficiency_cap)
    {
        if (!(cell_dx > 0.0) || !(cell_dy > 0.0) || !std::isfinite(cell_dx) || !std::isfinite(cell_dy))
            throw std::invalid_argument("hannan_efficiency: cell dimensions must be positive.");
        if (!(cap > 0.0) || cap > 1.0)
            throw std::invalid_argument("hannan_efficiency: cap must be in (0, 1].");
        return std::min(cap, pi * cell_dx * cell_dy);
    }

    // N-port scattering matrix at one frequency.
    class ScatteringMatrix
    {
    public:
        static constexpr double passivity_tolerance = 1e-9;

        explicit ScatteringMatrix(MatrixC s) : s_(std::move(s))
        {
            if (s_.rows() != s_.cols() || s_.rows() == 0)
                throw std::invalid_argument("ScatteringMatrix: matrix must be square and non-empty.");
            if (!s_.allFinite())
                throw std::invalid_argument("ScatteringMatrix: non-finite entry.");
        }

        Eigen::Index ports() const { return s_.rows(); }
        const MatrixC &matrix() const { return s_; }
        cplx operator()(Eigen::Index m, Eigen::Index n) const { return s_(m, n); }

        // Total power leaving all ports when port n is driven with unit power.
        double column_power(Eigen::Index n) const { return s_.col(n).squaredNorm(); }

        bool is_passive() const
        {
            for (Eigen::Index n = 0; n < ports(); ++n)
                if (column_power(n) > 1.0 + passivity_tolerance)
                    return false;
            return true;
        }

    private:
        MatrixC s_;
    };

    class EfficiencyVector
    {
    public:
        explicit EfficiencyVector(std::vector<double> e) : e_(std::move(e))
        {
            if (e_.empty())
                throw std::invalid_argument("EfficiencyVector: at least one element is required.");
            for (double v : e_)
                if (!(v >= 0.0 && v <= 1.0))
                    throw std::invalid_argument("EfficiencyVector: efficiencies must lie in [0, 1].");
        }

        static EfficiencyVector unit(std::size_t n) { return EfficiencyVector(std::vector<double>(n, 1.0)); }

        std::size_t size() const { return e_.size(); }
        double operator[](std::size_t i) const { return e_[i]; }
        const std::vector<double> &values() const { return e_; }

        double mean() const
        {
            double s = 0.0;
            for (double v : e_)
                s += v;
            return s / double(e_.size());
        }

    private:
        std::vector<double> e_;
    };

    // Lossless-antenna embedded efficiency of port n: 1 - sum_m |S_mn|^2.
    inline double embedded_efficiency(const ScatteringMatrix &s, Eigen::Index n)
    {
        if (n < 0 || n >= s.ports())
            throw std::out_of_range("embedded_efficiency: port index " + std::to_string(n) + " out of range.");
        const double p = s.column_power(n);
        if (p > 1.0 + ScatteringMatrix::passivity_tolerance)
            throw std::invalid_argument("embedded_efficiency: column " + std::to_string(n) +
                                        " violates passivity (power " + detail::format_roundtrip(p) + ").");
        return std::clamp(1.0 - p, 0.0, 1.0);
    }

    inline EfficiencyVector efficiency_vector(const ScatteringMatrix &s)
    {
        std::vector<double> e(static_cast<std::size_t>(s.ports()));
        for (Eigen::Index n = 0; n < s.ports(); ++n)
            e[static_cast<std::size_t>(n)] = embedded_efficiency(s, n);
        return EfficiencyVector(std::move(e));
    }

    inline EfficiencyVector hannan_efficiencies(const ArrayLayout &layout, double cap = default_efficiency_cap)
    {
        return EfficiencyVector(std::vector<double>(layout.size(), hannan_efficiency(layout.cell_dx(), layout.cell_dy(), cap)));
    }

    // Xi = sqrt(e) sqrt(e)^T.
    inline MatrixR efficiency_matrix(const EfficiencyVector &e)
    {
        Eigen::VectorXd root(static_cast<Eigen::Index>(e.size()));
        for (std::size_t i = 0; i < e.size(); ++i)
            root[static_cast<Eigen::Index>(i)] = std::sqrt(e[i]);
        return root * root.transpose();
    }
} // namespace hmimo

#endif
