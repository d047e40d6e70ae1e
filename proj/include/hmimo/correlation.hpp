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

#ifndef HMIMO_CORRELATION_HPP
#define HMIMO_CORRELATION_HPP

#include "common.hpp"
#include "quadrature.hpp"

#include <cstddef>

namespace hmimo
{
    // Uniform azimuthal sector of arriving plane waves (2-D multipath).
    // Angles are measured from the array axis (x). The half-plane Clarke case
    // is width = pi centred on broadside (pi/2), i.e. phi in [0, pi].
    class AngularSpread2D
    {
    public:
        AngularSpread2D(double center_azimuth, double width)
            : center_(center_azimuth), width_(width)
        {
            detail::require_finite(center_azimuth, "AngularSpread2D: center azimuth");
            detail::require_finite(width, "AngularSpread2D: width");
            if (!(width > 0.0) || width > pi)
                throw std::invalid_argument("AngularSpread2D: width must be in (0, pi].");
        }

        static AngularSpread2D clarke() { return {pi / 2.0, pi}; }
        static AngularSpread2D from_degrees(double width_deg, double center_deg = 90.0)
        {
            return {deg2rad(center_deg), deg2rad(width_deg)};
        }

        double center_azimuth() const { return center_; }
        double width() const { return width_; }
        double lower() const { return center_ - 0.5 * width_; }
        double upper() const { return center_ + 0.5 * width_; }

    private:
        double center_;
        double width_;
    };

    // Polar-angle band [theta_min, theta_max] with full azimuth, theta measured from +z.
    class PolarRange3D
    {
    public:
        PolarRange3D(double theta_min, double theta_max)
            : theta_min_(theta_min), theta_max_(theta_max)
        {
            detail::require_finite(theta_min, "PolarRange3D: theta_min");
            detail::require_finite(theta_max, "PolarRange3D: theta_max");
            if (theta_min < 0.0 || theta_max > pi)
                throw std::invalid_argument("PolarRange3D: limits must lie in [0, pi].");
            if (!(theta_min < theta_max))
                throw std::invalid_argument("PolarRange3D: degenerate range (theta_min must be < theta_max).");
        }

        static PolarRange3D full_sphere() { return {0.0, pi}; }
        static PolarRange3D from_degrees(double min_deg, double max_deg) { return {deg2rad(min_deg), deg2rad(max_deg)}; }

        double theta_min() const { return theta_min_; }
        double theta_max() const { return theta_max_; }

    private:
        double theta_min_;
        double theta_max_;
    };

    struct CorrelationValue
    {
        cplx value;
        double magnitude() const { return std::abs(value); }
        double real() const { return value.real(); }
    };

    namespace detail
    {
        inline void check_distance(double d, const char *fn)
        {
            if (!std::isfinite(d))
                throw std::invalid_argument(std::string(fn) + ": distance must be finite.");
            if (d < 0.0)
                throw std::invalid_argument(std::string(fn) + ": distance must be non-negative.");
        }
    } // namespace detail

    // Correlation between two point receivers separated by d along x, averaged
    // over plane waves arriving uniformly within the spread:
    //   R(d) = (1/w) * integral exp(j k0 d cos(phi)) dphi
    // The Clarke spread (width pi) gives J0(k0 d).
    inline CorrelationValue clarke2d(double d, const AngularSpread2D &spread, const QuadratureOptions &opts = {})
    {
        detail::check_distance(d, "clarke2d");
        const double a = spread.lower(), b = spread.upper();

        QuadratureOptions scaled = opts;
        scaled.abs_tolerance = opts.abs_tolerance * spread.width();

        const auto num = integrate_adaptive([d](double phi)
                                            { return std::exp(cplx(0.0, k0 * d * std::cos(phi))); },
                                            a, b, scaled);
        const auto den = integrate_adaptive([](double)
                                            { return 1.0; },
                                            a, b, scaled);
        return {num.value / den.value};
    }

    // Deterministic sum over K plane waves at phi_n = lower + width * n / K, n = 1..K.
    inline CorrelationValue planewave_superposition(double d, const AngularSpread2D &spread, std::size_t num_waves)
    {
        detail::check_distance(d, "planewave_superposition");
        if (num_waves == 0)
            throw std::invalid_argument("planewave_superposition: number of plane waves must be >= 1.");

        cplx sum{};
        const double step = spread.width() / static_cast<double>(num_waves);
        for (std::size_t n = 1; n <= num_waves; ++n)
        {
            const double phi = spread.lower() + step * static_cast<double>(n);
            sum += std::exp(cplx(0.0, k0 * d * std::cos(phi)));
        }
        return {sum / static_cast<double>(num_waves)};
    }

    // 3-D correlation for receivers separated by d along x with plane waves
    // uniformly distributed over the solid angle of the polar band:
    //   R(d) = int exp(j k . r) sin(theta) dtheta dphi / (same at d = 0)
    // The full sphere gives sin(k0 d) / (k0 d).
    inline CorrelationValue corr3d(double d, const PolarRange3D &range, const QuadratureOptions &opts = {})
    {
        detail::check_distance(d, "corr3d");

        // Error budget split between the azimuth and polar passes.
        const double solid_angle = two_pi * (std::cos(range.theta_min()) - std::cos(range.theta_max()));
        QuadratureOptions inner = opts;
        inner.abs_tolerance = 0.25 * opts.abs_tolerance * two_pi;
        QuadratureOptions outer = opts;
        outer.abs_tolerance = 0.25 * opts.abs_tolerance * solid_angle;

        auto band_integral = [&](double dist)
        {
            return integrate_adaptive(
                       [&](double theta)
                       {
                           const double st = std::sin(theta);
                           const double kx = k0 * dist * st;
                           const auto az = integrate_adaptive([kx](double phi)
                                                              { return std::exp(cplx(0.0, kx * std::cos(phi))); },
                                                              0.0, two_pi, inner);
                           return az.value * st;
                       },
                       range.theta_min(), range.theta_max(), outer)
                .value;
        };

        return {band_integral(d) / band_integral(0.0)};
    }
} // namespace hmimo

#endif
