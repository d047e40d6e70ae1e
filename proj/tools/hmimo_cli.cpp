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


// hmimo command-line front end.
//
//   hmimo corr2d     [--spread-deg 180] [--center-deg 90] [--planewaves K] [grid] [--out f]
//   hmimo corr3d     [--theta-min-deg 0] [--theta-max-deg 180] [grid] [--out f]
//   hmimo ecc        (--pattern f.csv ... | --count N --aperture L) [--xpd k] [--out f]
//   hmimo efficiency (--touchstone f.sNp --frequency-hz F | --dx a --dy b [--cap c])
//   hmimo capacity   --config f.ini [--nx N] [--seed S] [--realizations R]
//   hmimo sweep      --config f.ini [--seed S] [--realizations R] [--out f]
//
// grid: --d-min 0 --d-max 3 --d-step 0.01. Worker threads come from HMIMO_WORKERS.

#include <hmimo/hmimo.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <optional>

using namespace hmimo;

namespace
{
    struct GridArgs
    {
        double d_min = 0.0, d_max = 3.0, d_step = 0.01;

        void add(CLI::App &app)
        {
            app.add_option("--d-min", d_min, "First separation, wavelengths")->capture_default_str();
            app.add_option("--d-max", d_max, "Last separation, wavelengths")->capture_default_str();
            app.add_option("--d-step", d_step, "Separation step, wavelengths")->capture_default_str();
        }
        std::vector<double> grid() const { return distance_grid(d_min, d_max, d_step); }
    };

    void emit(const std::string &content, const std::string &out)
    {
        if (out.empty() || out == "-")
            std::cout << content;
        else
            write_file_atomic(out, content);
    }

    std::string matrix_csv(const CorrelationMatrix &phi)
    {
        std::string s = "m,n,re,im,magnitude_sq\n";
        for (Eigen::Index m = 0; m < phi.size(); ++m)
            for (Eigen::Index n = 0; n < phi.size(); ++n)
                s += std::to_string(m) + ',' + std::to_string(n) + ',' + detail::format_9g(phi(m, n).real()) + ',' +
                     detail::format_9g(phi(m, n).imag()) + ',' + detail::format_9g(phi.squared_magnitude(m, n)) + '\n';
        return s;
    }

    ScenarioConfig load_config(const std::string &path, std::optional<std::uint64_t> seed, std::optional<std::size_t> reals)
    {
        auto cfg = parse_config(path);
        if (seed)
            cfg.seed = *seed;
        if (reals)
        {
            if (*reals == 0)
                throw ConfigError("--realizations must be >= 1");
            cfg.realizations = *reals;
        }
        return cfg;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"hmimo: correlation, efficiency and capacity of dense MIMO arrays"};
    app.require_subcommand(1);

    // corr2d
    auto *corr2d_cmd = app.add_subcommand("corr2d", "2-D correlation versus separation");
    double spread_deg = 180.0, center_deg = 90.0;
    std::size_t planewaves = 0;
    GridArgs grid2;
    std::string out;
    corr2d_cmd->add_option("--spread-deg", spread_deg, "Angular spread, degrees")->capture_default_str();
    corr2d_cmd->add_option("--center-deg", center_deg, "Spread centre azimuth, degrees")->capture_default_str();
    corr2d_cmd->add_option("--planewaves", planewaves, "Use a K-wave discrete sum instead of quadrature");
    grid2.add(*corr2d_cmd);
    corr2d_cmd->add_option("--out", out, "Output CSV (default stdout)");

    // corr3d
    auto *corr3d_cmd = app.add_subcommand("corr3d", "3-D correlation versus separation");
    double theta_min_deg = 0.0, theta_max_deg = 180.0;
    GridArgs grid3;
    corr3d_cmd->add_option("--theta-min-deg", theta_min_deg, "Lower polar angle, degrees")->capture_default_str();
    corr3d_cmd->add_option("--theta-max-deg", theta_max_deg, "Upper polar angle, degrees")->capture_default_str();
    grid3.add(*corr3d_cmd);
    corr3d_cmd->add_option("--out", out, "Output CSV (default stdout)");

    // ecc
    auto *ecc_cmd = app.add_subcommand("ecc", "Correlation matrix from radiation patterns");
    std::vector<std::string> pattern_paths;
    std::size_t count = 0;
    double aperture = 2.0, exponent = 0.75, grid_step = 1.0, xpd = 1.0;
    std::string element = "cos-power";
    auto *pat_opt = ecc_cmd->add_option("--pattern", pattern_paths, "Embedded pattern CSV files, one per element");
    auto *count_opt = ecc_cmd->add_option("--count", count, "Synthesize a uniform line array of N elements");
    pat_opt->excludes(count_opt);
    ecc_cmd->add_option("--aperture", aperture, "Line aperture, wavelengths")->capture_default_str();
    ecc_cmd->add_option("--element", element, "cos-power or isotropic")->capture_default_str()->check(CLI::IsMember({"cos-power", "isotropic"}));
    ecc_cmd->add_option("--exponent", exponent, "cos^q exponent")->capture_default_str();
    ecc_cmd->add_option("--grid-step-deg", grid_step, "Angular grid step, degrees")->capture_default_str();
    ecc_cmd->add_option("--xpd", xpd, "Cross-polarization discrimination")->capture_default_str();
    ecc_cmd->add_option("--out", out, "Output CSV (default stdout)");

    // efficiency
    auto *eff_cmd = app.add_subcommand("efficiency", "Embedded efficiencies");
    std::string touchstone;
    double frequency_hz = 0.0, dx = 0.0, dy = 1.0, cap = default_efficiency_cap;
    auto *ts_opt = eff_cmd->add_option("--touchstone", touchstone, "Touchstone .sNp file")->check(CLI::ExistingFile);
    auto *freq_opt = eff_cmd->add_option("--frequency-hz", frequency_hz, "Target frequency, Hz");
    auto *dx_opt = eff_cmd->add_option("--dx", dx, "Cell width, wavelengths");
    eff_cmd->add_option("--dy", dy, "Cell height, wavelengths")->capture_default_str();
    eff_cmd->add_option("--cap", cap, "Efficiency cap")->capture_default_str();
    ts_opt->needs(freq_opt);
    ts_opt->excludes(dx_opt);

    // capacity / sweep
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> realizations, nx;
    auto *cap_cmd = app.add_subcommand("capacity", "Ergodic capacity for one element count");
    cap_cmd->add_option("--config", config, "Scenario INI file")->required();
    cap_cmd->add_option("--nx", nx, "Element count (default: first in config)");
    cap_cmd->add_option("--seed", seed, "Override the configured seed");
    cap_cmd->add_option("--realizations", realizations, "Override the realization count");

    auto *sweep_cmd = app.add_subcommand("sweep", "Sweep element counts at fixed aperture");
    sweep_cmd->add_option("--config", config, "Scenario INI file")->required();
    sweep_cmd->add_option("--seed", seed, "Override the configured seed");
    sweep_cmd->add_option("--realizations", realizations, "Override the realization count");
    sweep_cmd->add_option("--out", out, "Output CSV (default: [run] output, else stdout)");

    CLI11_PARSE(app, argc, argv);

    try
    {
        const unsigned workers = resolve_workers();

        if (*corr2d_cmd)
        {
            const auto spread = AngularSpread2D::from_degrees(spread_deg, center_deg);
            const CurveModel model = planewaves > 0 ? CurveModel(PlaneWaveCurve{spread, planewaves}) : CurveModel(Clarke2DCurve{spread});
            emit(emit_correlation_curve(model, grid2.grid()), out);
        }
        else if (*corr3d_cmd)
        {
            emit(emit_correlation_curve(Corr3DCurve{PolarRange3D::from_degrees(theta_min_deg, theta_max_deg)}, grid3.grid()), out);
        }
        else if (*ecc_cmd)
        {
            std::vector<RadiationPattern> patterns;
            if (!pattern_paths.empty())
            {
                for (const auto &p : pattern_paths)
                    patterns.push_back(load_pattern_file(p));
            }
            else if (count > 0)
            {
                const auto g = AngularGrid::full_sphere(grid_step);
                const auto el = element == "isotropic" ? isotropic_pattern(g) : synthesize_isolated_pattern(exponent, default_efficiency_cap, g);
                const auto layout = ArrayLayout::uniform_1d(count, aperture);
                for (const auto &pos : layout.positions())
                    patterns.push_back(translate_pattern(el, pos));
            }
            else
                throw std::invalid_argument("ecc: give --pattern files or --count");
            const auto &g = patterns.front().grid();
            const AngularPowerSpectrum aps(g, std::vector<double>(g.size(), 1.0), std::vector<double>(g.size(), 1.0), xpd);
            const auto phi = correlation_matrix(patterns, aps, workers);
            emit(matrix_csv(phi), out);
            std::cerr << "diversity: " << detail::format_9g(diversity(phi)) << (phi.was_repaired() ? " (PSD repair applied)" : "") << '\n';
        }
        else if (*eff_cmd)
        {
            if (!touchstone.empty())
            {
                const auto e = efficiency_vector(load_touchstone(touchstone, frequency_hz));
                std::cout << "port,efficiency\n";
                for (std::size_t i = 0; i < e.size(); ++i)
                    std::cout << i + 1 << ',' << detail::format_9g(e[i]) << '\n';
                std::cout << "# mean " << detail::format_9g(e.mean()) << '\n';
            }
            else if (*dx_opt)
                std::cout << detail::format_9g(hannan_efficiency(dx, dy, cap)) << '\n';
            else
                throw std::invalid_argument("efficiency: give --touchstone/--frequency-hz or --dx");
        }
        else if (*cap_cmd)
        {
            const auto cfg = load_config(config, seed, realizations);
            const auto row = run_point(cfg, nx.value_or(cfg.counts.front()), workers);
            std::cout << format_sweep_csv({row});
        }
        else if (*sweep_cmd)
        {
            const auto cfg = load_config(config, seed, realizations);
            const auto csv = format_sweep_csv(run_sweep(cfg, workers));
            if (out.empty() && cfg.output)
                out = cfg.output->string();
            emit(csv, out);
            if (!out.empty() && out != "-")
                std::cerr << "wrote " << out << '\n';
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "hmimo: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
