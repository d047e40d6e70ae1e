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

#ifndef HMIMO_PATTERN_HPP
#define HMIMO_PATTERN_HPP

#include "common.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace hmimo
{
    // Regular (theta, phi) sampling grid. Sample positions are kept in degrees
    // exactly as given so that file round trips reproduce them bit for bit.
    // Theta is measured from +z in [0, 180], phi from +x in [0, 360).
    class AngularGrid
    {
    public:
        static constexpr double spacing_tolerance = 1e-6; // degrees

        AngularGrid(std::vector<double> theta_deg, std::vector<double> phi_deg)
            : theta_deg_(std::move(theta_deg)), phi_deg_(std::move(phi_deg))
        {
            check_axis(theta_deg_, "theta");
            check_axis(phi_deg_, "phi");
            if (theta_deg_.front() < -spacing_tolerance || theta_deg_.back() > 180.0 + spacing_tolerance)
                throw std::invalid_argument("AngularGrid: theta samples must lie in [0, 180] degrees.");
            if (phi_deg_.front() < -spacing_tolerance || phi_deg_.back() >= 360.0 - spacing_tolerance)
                throw std::invalid_argument("AngularGrid: phi samples must lie in [0, 360) degrees.");
            theta_step_ = (theta_deg_.back() - theta_deg_.front()) / double(theta_deg_.size() - 1);
            phi_step_ = (phi_deg_.back() - phi_deg_.front()) / double(phi_deg_.size() - 1);
            phi_periodic_ = std::abs(phi_step_ * double(phi_deg_.size()) - 360.0) <= spacing_tolerance * double(phi_deg_.size());
            build_weights();
        }

        // Theta in [0, 180] inclusive, phi in [0, 360) exclusive, both at step_deg.
        static AngularGrid full_sphere(double step_deg = 1.0)
        {
            if (!(step_deg > 0.0) || !std::isfinite(step_deg))
                throw std::invalid_argument("AngularGrid::full_sphere: step must be positive.");
            const double nt = 180.0 / step_deg, np = 360.0 / step_deg;
            if (std::abs(nt - std::round(nt)) > 1e-9 || std::abs(np - std::round(np)) > 1e-9)
                throw std::invalid_argument("AngularGrid::full_sphere: step must divide 180 degrees.");
            std::vector<double> th(std::size_t(std::round(nt)) + 1), ph(std::size_t(std::round(np)));
            for (std::size_t i = 0; i < th.size(); ++i)
                th[i] = step_deg * double(i);
            for (std::size_t j = 0; j < ph.size(); ++j)
                ph[j] = step_deg * double(j);
            return {std::move(th), std::move(ph)};
        }

        std::size_t n_theta() const { return theta_deg_.size(); }
        std::size_t n_phi() const { return phi_deg_.size(); }
        std::size_t size() const { return n_theta() * n_phi(); }
        std::size_t index(std::size_t it, std::size_t ip) const { return it * n_phi() + ip; }

        const std::vector<double> &theta_deg() const { return theta_deg_; }
        const std::vector<double> &phi_deg() const { return phi_deg_; }
        double theta(std::size_t it) const { return deg2rad(theta_deg_[it]); }
        double phi(std::size_t ip) const { return deg2rad(phi_deg_[ip]); }
        bool phi_periodic() const { return phi_periodic_; }

        // Solid-angle weight of sample (it, ip): trapezoid in theta times sin(theta),
        // trapezoid in phi (plain rectangle rule when phi covers a full period).
        double weight(std::size_t it, std::size_t ip) const { return theta_weight_[it] * phi_weight_[ip]; }

        bool same_as(const AngularGrid &o) const
        {
            auto close = [](const std::vector<double> &a, const std::vector<double> &b)
            {
                if (a.size() != b.size())
                    return false;
                for (std::size_t i = 0; i < a.size(); ++i)
                    if (std::abs(a[i] - b[i]) > 1e-9)
                        return false;
                return true;
            };
            return close(theta_deg_, o.theta_deg_) && close(phi_deg_, o.phi_deg_);
        }

    private:
        static void check_axis(const std::vector<double> &v, const char *name)
        {
            if (v.size() < 2)
                throw std::invalid_argument(std::string("AngularGrid: at least 2 ") + name + " samples required.");
            for (double x : v)
                if (!std::isfinite(x))
                    throw std::invalid_argument(std::string("AngularGrid: non-finite ") + name + " sample.");
            const double step = (v.back() - v.front()) / double(v.size() - 1);
            if (!(step > 0.0))
                throw std::invalid_argument(std::string("AngularGrid: ") + name + " samples must be strictly increasing.");
            for (std::size_t i = 0; i < v.size(); ++i)
                if (std::abs(v[i] - (v.front() + step * double(i))) > spacing_tolerance)
                    throw std::invalid_argument(std::string("AngularGrid: ") + name + " samples are not uniformly spaced.");
        }

        void build_weights()
        {
            const double dt = deg2rad(theta_step_), dp = deg2rad(phi_step_);
            theta_weight_.resize(n_theta());
            for (std::size_t i = 0; i < n_theta(); ++i)
            {
                const double end = (i == 0 || i + 1 == n_theta()) ? 0.5 : 1.0;
                theta_weight_[i] = end * dt * std::sin(theta(i));
            }
            phi_weight_.assign(n_phi(), dp);
            if (!phi_periodic_)
                phi_weight_.front() = phi_weight_.back() = 0.5 * dp;
        }

        std::vector<double> theta_deg_, phi_deg_;
        double theta_step_ = 0.0, phi_step_ = 0.0;
        bool phi_periodic_ = false;
        std::vector<double> theta_weight_, phi_weight_;
    };

    // Complex far-field samples of one element, row-major (theta outer, phi inner).
    class RadiationPattern
    {
    public:
        RadiationPattern(AngularGrid grid, std::vector<cplx> e_theta, std::vector<cplx> e_phi)
            : grid_(std::move(grid)), e_theta_(std::move(e_theta)), e_phi_(std::move(e_phi))
        {
            if (e_theta_.size() != grid_.size() || e_phi_.size() != grid_.size())
                throw std::invalid_argument("RadiationPattern: sample count does not match the grid.");
            for (std::size_t i = 0; i < e_theta_.size(); ++i)
                if (!std::isfinite(e_theta_[i].real()) || !std::isfinite(e_theta_[i].imag()) ||
                    !std::isfinite(e_phi_[i].real()) || !std::isfinite(e_phi_[i].imag()))
                    throw std::invalid_argument("RadiationPattern: non-finite field sample.");
            if (!(radiated_power() > 0.0))
                throw std::invalid_argument("RadiationPattern: total radiated power must be positive.");
        }

        const AngularGrid &grid() const { return grid_; }
        const std::vector<cplx> &e_theta() const { return e_theta_; }
        const std::vector<cplx> &e_phi() const { return e_phi_; }

        double power_density(std::size_t i) const { return std::norm(e_theta_[i]) + std::norm(e_phi_[i]); }

        // Closed-surface integral of |E_theta|^2 + |E_phi|^2.
        double radiated_power() const
        {
            double p = 0.0;
            for (std::size_t it = 0; it < grid_.n_theta(); ++it)
                for (std::size_t ip = 0; ip < grid_.n_phi(); ++ip)
                    p += grid_.weight(it, ip) * power_density(grid_.index(it, ip));
            return p;
        }

        double directivity() const
        {
            double peak = 0.0;
            for (std::size_t i = 0; i < grid_.size(); ++i)
                peak = std::max(peak, power_density(i));
            return 4.0 * pi * peak / radiated_power();
        }

    private:
        AngularGrid grid_;
        std::vector<cplx> e_theta_, e_phi_;
    };

    // Angular power spectrum of the propagation environment with XPD kappa.
    class AngularPowerSpectrum
    {
    public:
        AngularPowerSpectrum(AngularGrid grid, std::vector<double> p_theta, std::vector<double> p_phi, double xpd = 1.0)
            : grid_(std::move(grid)), p_theta_(std::move(p_theta)), p_phi_(std::move(p_phi)), xpd_(xpd)
        {
            if (p_theta_.size() != grid_.size() || p_phi_.size() != grid_.size())
                throw std::invalid_argument("AngularPowerSpectrum: sample count does not match the grid.");
            if (!(xpd > 0.0) || !std::isfinite(xpd))
                throw std::invalid_argument("AngularPowerSpectrum: XPD must be positive and finite.");
            bool any = false;
            for (std::size_t i = 0; i < p_theta_.size(); ++i)
            {
                if (!(p_theta_[i] >= 0.0) || !(p_phi_[i] >= 0.0) || !std::isfinite(p_theta_[i]) || !std::isfinite(p_phi_[i]))
                    throw std::invalid_argument("AngularPowerSpectrum: samples must be finite and non-negative.");
                any = any || p_theta_[i] > 0.0 || p_phi_[i] > 0.0;
            }
            if (!any)
                throw std::invalid_argument("AngularPowerSpectrum: spectrum is identically zero.");
        }

        // Isotropic, polarization-balanced environment: P = 1 everywhere, kappa = 1.
        static AngularPowerSpectrum uniform(const AngularGrid &grid)
        {
            return {grid, std::vector<double>(grid.size(), 1.0), std::vector<double>(grid.size(), 1.0), 1.0};
        }

        const AngularGrid &grid() const { return grid_; }
        const std::vector<double> &p_theta() const { return p_theta_; }
        const std::vector<double> &p_phi() const { return p_phi_; }
        double xpd() const { return xpd_; }

    private:
        AngularGrid grid_;
        std::vector<double> p_theta_, p_phi_;
        double xpd_;
    };

    // Theta-polarized cos^q(theta) element over the upper hemisphere, zero below
    // the ground plane. The closed-form directivity is 2(2q + 1); q = 0.75 gives 5.
    // Amplitude is set so that |E|^2 reads as gain: radiated_power / 4pi == efficiency.
    inline RadiationPattern synthesize_isolated_pattern(double exponent, double efficiency,
                                                        const AngularGrid &grid = AngularGrid::full_sphere(1.0))
    {
        if (!std::isfinite(exponent) || exponent < 0.0)
            throw std::invalid_argument("synthesize_isolated_pattern: exponent must be >= 0.");
        if (!(efficiency > 0.0) || efficiency > 1.0)
            throw std::invalid_argument("synthesize_isolated_pattern: efficiency must be in (0, 1].");

        std::vector<cplx> et(grid.size()), ep(grid.size(), cplx{});
        for (std::size_t it = 0; it < grid.n_theta(); ++it)
        {
            const double th = grid.theta(it);
            const double mag = th <= pi / 2.0 ? std::pow(std::max(std::cos(th), 0.0), exponent) : 0.0;
            for (std::size_t ip = 0; ip < grid.n_phi(); ++ip)
                et[grid.index(it, ip)] = mag;
        }

        double power = 0.0;
        for (std::size_t it = 0; it < grid.n_theta(); ++it)
            for (std::size_t ip = 0; ip < grid.n_phi(); ++ip)
                power += grid.weight(it, ip) * std::norm(et[grid.index(it, ip)]);
        if (!(power > 0.0))
            throw std::invalid_argument("synthesize_isolated_pattern: grid does not cover the upper hemisphere.");

        const double scale = std::sqrt(4.0 * pi * efficiency / power);
        for (auto &v : et)
            v *= scale;
        return {grid, std::move(et), std::move(ep)};
    }

    // Unit-amplitude theta-polarized point source.
    inline RadiationPattern isotropic_pattern(const AngularGrid &grid = AngularGrid::full_sphere(1.0))
    {
        return {grid, std::vector<cplx>(grid.size(), cplx(1.0, 0.0)), std::vector<cplx>(grid.size(), cplx{})};
    }

    // Embedded pattern of an uncoupled element displaced to `position`:
    // every sample picks up exp(j k_Omega . r).
    inline RadiationPattern translate_pattern(const RadiationPattern &p, const Vec3 &position)
    {
        if (!position.allFinite())
            throw std::invalid_argument("translate_pattern: position must be finite.");
        const auto &g = p.grid();
        std::vector<cplx> et = p.e_theta(), ep = p.e_phi();
        for (std::size_t it = 0; it < g.n_theta(); ++it)
        {
            const double st = std::sin(g.theta(it)), ct = std::cos(g.theta(it));
            for (std::size_t ip = 0; ip < g.n_phi(); ++ip)
            {
                const double ph = g.phi(ip);
                const double kr = k0 * (st * std::cos(ph) * position.x() + st * std::sin(ph) * position.y() + ct * position.z());
                const cplx shift = std::polar(1.0, kr);
                const auto i = g.index(it, ip);
                et[i] *= shift;
                ep[i] *= shift;
            }
        }
        return {g, std::move(et), std::move(ep)};
    }
} // namespace hmimo

#endif
