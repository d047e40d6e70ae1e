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

#ifndef HMIMO_SWEEP_HPP
#define HMIMO_SWEEP_HPP

#include "array.hpp"
#include "capacity.hpp"
#include "correlation.hpp"
#include "ecc.hpp"
#include "pattern.hpp"
#include "pattern_io.hpp"
#include "scenario.hpp"
#include "touchstone.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace hmimo
{
    struct SweepRow
    {
        std::size_t n_x = 0;
        double spacing = 0.0;
        double diversity = 0.0;
        double mean_efficiency = 0.0;
        double capacity_mean = 0.0;
        double capacity_stderr = 0.0;
    };

    inline constexpr std::string_view sweep_csv_header = "n_x,spacing,diversity,mean_efficiency,capacity_mean,capacity_stderr";

    namespace detail
    {
        inline std::string format_9g(double v)
        {
            char buf[48];
            std::snprintf(buf, sizeof(buf), "%.9g", v);
            return buf;
        }

        // Analytic models depend only on the separation; cache per distinct distance.
        template <typename Model>
        CorrelationMatrix pairwise_analytic(const ArrayLayout &layout, Model &&model)
        {
            const auto n = static_cast<Eigen::Index>(layout.size());
            std::map<double, cplx> cache;
            MatrixC phi = MatrixC::Identity(n, n);
            for (Eigen::Index m = 0; m < n; ++m)
                for (Eigen::Index k = m + 1; k < n; ++k)
                {
                    const double d = (layout.positions()[k] - layout.positions()[m]).norm();
                    auto it = cache.find(d);
                    if (it == cache.end())
                        it = cache.emplace(d, model(d)).first;
                    phi(m, k) = it->second;
                }
            return CorrelationMatrix::from_upper(phi);
        }
    } // namespace detail

    // Correlation matrix of the receive array from the configured source.
    // The analytic models take the pairwise separation as lying along the array axis.
    inline CorrelationMatrix build_correlation(const ScenarioConfig &cfg, const ArrayLayout &layout, unsigned workers = 0)
    {
        switch (cfg.correlation)
        {
        case CorrelationSource::Analytic2D:
            return detail::pairwise_analytic(layout, [&](double d)
                                             { return clarke2d(d, cfg.spread).value; });
        case CorrelationSource::Analytic3D:
            return detail::pairwise_analytic(layout, [&](double d)
                                             { return corr3d(d, cfg.polar_range).value; });
        case CorrelationSource::SynthesizedPatterns:
        {
            const auto grid = AngularGrid::full_sphere(cfg.grid_step_deg);
            const auto element = cfg.element == ElementModel::Isotropic
                                     ? isotropic_pattern(grid)
                                     : synthesize_isolated_pattern(cfg.exponent, default_efficiency_cap, grid);
            std::vector<RadiationPattern> embedded;
            embedded.reserve(layout.size());
            for (const auto &pos : layout.positions())
                embedded.push_back(translate_pattern(element, pos));
            const auto aps = AngularPowerSpectrum(grid, std::vector<double>(grid.size(), 1.0),
                                                  std::vector<double>(grid.size(), 1.0), cfg.xpd);
            return correlation_matrix(embedded, aps, workers);
        }
        case CorrelationSource::PatternFiles:
        {
            const auto it = cfg.pattern_files.find(layout.size());
            if (it == cfg.pattern_files.end())
                throw std::invalid_argument("build_correlation: no pattern files for " + std::to_string(layout.size()) + " elements.");
            std::vector<RadiationPattern> embedded;
            for (const auto &path : it->second)
                embedded.push_back(load_pattern_file(path));
            const auto &grid = embedded.front().grid();
            const auto aps = AngularPowerSpectrum(grid, std::vector<double>(grid.size(), 1.0),
                                                  std::vector<double>(grid.size(), 1.0), cfg.xpd);
            return correlation_matrix(embedded, aps, workers);
        }
        }
        throw std::logic_error("build_correlation: unhandled source");
    }

    inline EfficiencyVector build_efficiency(const ScenarioConfig &cfg, const ArrayLayout &layout)
    {
        switch (cfg.efficiency)
        {
        case EfficiencySource::Unit:
            return EfficiencyVector::unit(layout.size());
        case EfficiencySource::Hannan:
            return hannan_efficiencies(layout, cfg.efficiency_cap);
        case EfficiencySource::TouchstoneFile:
        {
            const auto it = cfg.touchstone_files.find(layout.size());
            if (it == cfg.touchstone_files.end())
                throw std::invalid_argument("build_efficiency: no Touchstone file for " + std::to_string(layout.size()) + " elements.");
            return efficiency_vector(load_touchstone(it->second, cfg.frequency_hz));
        }
        }
        throw std::logic_error("build_efficiency: unhandled source");
    }

    inline SweepRow run_point(const ScenarioConfig &cfg, std::size_t n_x, unsigned workers = 0)
    {
        const auto layout = ArrayLayout::uniform_1d(n_x, cfg.aperture_lx, cfg.cell_dy);
        const auto phi = build_correlation(cfg, layout, workers);
        const auto eff = build_efficiency(cfg, layout);

        ChannelScenario scenario;
        scenario.n_t = n_x;
        scenario.n_r = n_x;
        scenario.snr_gamma = cfg.snr_linear();
        scenario.spacing = layout.spacing();
        scenario.n_half_wavelength = saturation_count_1d(cfg.aperture_lx);

        const auto cap = ergodic_capacity(covariance(phi, eff), scenario, cfg.realizations, cfg.seed, workers);
        return {n_x, layout.spacing(), diversity(phi), eff.mean(), cap.mean_bits_per_s_per_hz, cap.std_error};
    }

    // One row per element count, in configuration order.
    inline std::vector<SweepRow> run_sweep(const ScenarioConfig &cfg, unsigned workers = 0)
    {
        std::vector<SweepRow> rows;
        rows.reserve(cfg.counts.size());
        for (auto n : cfg.counts)
            rows.push_back(run_point(cfg, n, workers));
        return rows;
    }

    inline std::string format_sweep_csv(const std::vector<SweepRow> &rows)
    {
        std::string out(sweep_csv_header);
        out += '\n';
        for (const auto &r : rows)
        {
            out += std::to_string(r.n_x);
            for (double v : {r.spacing, r.diversity, r.mean_efficiency, r.capacity_mean, r.capacity_stderr})
            {
                out += ',';
                out += detail::format_9g(v);
            }
            out += '\n';
        }
        return out;
    }

    // Writes via a sibling temporary and rename, so readers never see a partial file.
    inline void write_file_atomic(const std::filesystem::path &path, const std::string &content)
    {
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
            out << content;
            out.flush();
            if (!out)
                throw std::runtime_error("write failed for '" + tmp.string() + "'");
        }
        std::error_code ec;
        std::filesystem::rename(tmp, path, ec);
        if (ec)
        {
            std::filesystem::remove(tmp);
            throw std::runtime_error("cannot move '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
        }
    }

    // ---- correlation curves ------------------------------------------------

    struct Clarke2DCurve
    {
        AngularSpread2D spread = AngularSpread2D::clarke();
    };
    struct PlaneWaveCurve
    {
        AngularSpread2D spread = AngularSpread2D::clarke();
        std::size_t num_waves = 10000;
    };
    struct Corr3DCurve
    {
        PolarRange3D range = PolarRange3D::full_sphere();
    };
    using CurveModel = std::variant<Clarke2DCurve, PlaneWaveCurve, Corr3DCurve>;

    // Inclusive grid d_min, d_min + step, ... up to d_max.
    inline std::vector<double> distance_grid(double d_min, double d_max, double step)
    {
        if (!std::isfinite(d_min) || !std::isfinite(d_max) || !std::isfinite(step) || !(step > 0.0))
            throw std::invalid_argument("distance_grid: bounds must be finite and step positive.");
        if (d_min < 0.0 || d_max < d_min)
            throw std::invalid_argument("distance_grid: need 0 <= d_min <= d_max.");
        const auto n = static_cast<std::size_t>(std::floor((d_max - d_min) / step + 1e-9)) + 1;
        std::vector<double> d(n);
        for (std::size_t i = 0; i < n; ++i)
            d[i] = d_min + step * double(i);
        return d;
    }

    inline CorrelationValue evaluate_curve(const CurveModel &model, double d)
    {
        return std::visit([d](const auto &m) -> CorrelationValue
                          {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, Clarke2DCurve>)
                return clarke2d(d, m.spread);
            else if constexpr (std::is_same_v<M, PlaneWaveCurve>)
                return planewave_superposition(d, m.spread, m.num_waves);
            else
                return corr3d(d, m.range); },
                          model);
    }

    // CSV rows "d,re,im,magnitude" for external plotting.
    inline std::string emit_correlation_curve(const CurveModel &model, const std::vector<double> &d_grid)
    {
        if (d_grid.empty())
            throw std::invalid_argument("emit_correlation_curve: distance grid is empty.");
        std::string out = "d,re,im,magnitude\n";
        for (double d : d_grid)
        {
            const auto v = evaluate_curve(model, d);
            out += detail::format_9g(d) + ',' + detail::format_9g(v.value.real()) + ',' +
                   detail::format_9g(v.value.imag()) + ',' + detail::format_9g(v.magnitude()) + '\n';
        }
        return out;
    }
} // namespace hmimo

#endif
