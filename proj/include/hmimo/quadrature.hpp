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

#ifndef HMIMO_QUADRATURE_HPP
#define HMIMO_QUADRATURE_HPP

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace hmimo
{
    struct QuadratureOptions
    {
        double abs_tolerance = 1e-8;
        std::size_t max_intervals = 2000;
    };

    template <typename T>
    struct QuadratureResult
    {
        T value{};
        double error_estimate = 0.0;
        std::size_t intervals = 0;
        bool converged = false;
    };

    namespace detail
    {
        template <typename T>
        struct GkSegment
        {
            double a, b;
            T value;
            double error;
        };

        // 7-point Gauss / 15-point Kronrod pair on [a, b]. Node and weight tables come from Boost.Math.
        template <typename F>
        auto gauss_kronrod15(F &f, double a, double b)
        {
            using T = decltype(f(a));
            using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
            using g7 = boost::math::quadrature::gauss<double, 7>;
            const auto &x = gk::abscissa();
            const auto &wk = gk::weights();
            const auto &wg = g7::weights();

            const double mid = 0.5 * (a + b);
            const double half = 0.5 * (b - a);

            const T fc = f(mid);
            T kronrod = fc * wk[0];
            T gauss = fc * wg[0];
            for (std::size_t i = 1; i < x.size(); ++i)
            {
                const T sum = f(mid + half * x[i]) + f(mid - half * x[i]);
                kronrod += sum * wk[i];
                if (i % 2 == 0)
                    gauss += sum * wg[i / 2];
            }
            using std::abs;
            return GkSegment<T>{a, b, kronrod * half, static_cast<double>(abs((kronrod - gauss) * half))};
        }
    } // namespace detail

    // Globally adaptive Gauss-Kronrod integration with an absolute error target.
    // The interval with the largest error estimate is bisected until the summed
    // estimate drops below the tolerance or the interval cap is reached.
    // Works for any T closed under +, scalar * and abs (double, std::complex<double>).
    template <typename F>
    auto integrate_adaptive(F &&f, double a, double b, const QuadratureOptions &opts = {})
    {
        using T = decltype(f(a));
        std::vector<detail::GkSegment<T>> segments;
        segments.reserve(64);
        segments.push_back(detail::gauss_kronrod15(f, a, b));

        auto total_error = [&]
        {
            double e = 0.0;
            for (const auto &s : segments)
                e += s.error;
            return e;
        };

        QuadratureResult<T> result;
        double err = total_error();
        while (err > opts.abs_tolerance && segments.size() < opts.max_intervals)
        {
            auto worst = std::max_element(segments.begin(), segments.end(),
                                          [](const auto &l, const auto &r)
                                          { return l.error < r.error; });
            const double lo = worst->a, hi = worst->b, m = 0.5 * (lo + hi);
            *worst = detail::gauss_kronrod15(f, lo, m);
            segments.push_back(detail::gauss_kronrod15(f, m, hi));
            err = total_error();
        }

        // Sum left to right so the result does not depend on refinement history.
        std::sort(segments.begin(), segments.end(), [](const auto &l, const auto &r)
                  { return l.a < r.a; });
        T value{};
        for (const auto &s : segments)
            value += s.value;

        result.value = value;
        result.error_estimate = err;
        result.intervals = segments.size();
        result.converged = err <= opts.abs_tolerance;
        return result;
    }
} // namespace hmimo

#endif
