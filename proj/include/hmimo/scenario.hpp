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

#ifndef HMIMO_SCENARIO_HPP
#define HMIMO_SCENARIO_HPP

// Sweep configuration, INI style. Comments are whole lines starting with ';' or '#'.
//
//   [array]
//   ; lengths in wavelengths
//   aperture = 2
//   cell_dy = 1
//   counts = 3, 5, 7, 9, 13
//
//   [correlation]
//   source = synthesized-patterns
//
//   [efficiency]
//   source = hannan
//
//   [run]
//   snr_db = 10
//   realizations = 10000
//   seed = 1
//   output = sweep.csv
//
// correlation source: analytic-2d | analytic-3d | synthesized-patterns | pattern-files
// efficiency source:  unit | hannan | touchstone-file
//
// Source-specific keys:
//   analytic-2d           spread_deg (180), center_deg (90)
//   analytic-3d           theta_min_deg (0), theta_max_deg (180)
//   synthesized-patterns  element = cos-power | isotropic, exponent (0.75), grid_step_deg (1), xpd (1)
//   pattern-files         xpd (1); section [patterns] with n<count> = file1.csv, file2.csv, ...
//   hannan                cap (0.95)
//   touchstone-file       frequency_hz; section [touchstone] with n<count> = file.sNp
//
// Relative file names are resolved against the directory of the config file.

#include "array.hpp"
#include "capacity.hpp"
#include "common.hpp"
#include "correlation.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

namespace hmimo
{
    class ConfigError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    enum class CorrelationSource
    {
        Analytic2D,
        Analytic3D,
        SynthesizedPatterns,
        PatternFiles
    };

    enum class EfficiencySource
    {
        Unit,
        Hannan,
        TouchstoneFile
    };

    enum class ElementModel
    {
        CosPower,
        Isotropic
    };

    struct ScenarioConfig
    {
        double aperture_lx = 2.0;
        double cell_dy = 1.0;
        std::vector<std::size_t> counts;

        CorrelationSource correlation = CorrelationSource::SynthesizedPatterns;
        AngularSpread2D spread = AngularSpread2D::clarke();
        PolarRange3D polar_range = PolarRange3D::full_sphere();
        ElementModel element = ElementModel::CosPower;
        double exponent = 0.75;
        double grid_step_deg = 1.0;
        double xpd = 1.0;
        std::map<std::size_t, std::vector<std::filesystem::path>> pattern_files;

        EfficiencySource efficiency = EfficiencySource::Hannan;
        double efficiency_cap = default_efficiency_cap;
        double frequency_hz = 0.0;
        std::map<std::size_t, std::filesystem::path> touchstone_files;

        double snr_db = 10.0;
        std::size_t realizations = default_realizations;
        std::uint64_t seed = 1;
        std::optional<std::filesystem::path> output;

        double snr_linear() const { return std::pow(10.0, snr_db / 10.0); }
    };

    inline std::string to_string(CorrelationSource s)
    {
        switch (s)
        {
        case CorrelationSource::Analytic2D:
            return "analytic-2d";
        case CorrelationSource::Analytic3D:
            return "analytic-3d";
        case CorrelationSource::SynthesizedPatterns:
            return "synthesized-patterns";
        case CorrelationSource::PatternFiles:
            return "pattern-files";
        }
        return "?";
    }

    inline std::string to_string(EfficiencySource s)
    {
        switch (s)
        {
        case EfficiencySource::Unit:
            return "unit";
        case EfficiencySource::Hannan:
            return "hannan";
        case EfficiencySource::TouchstoneFile:
            return "touchstone-file";
        }
        return "?";
    }

    inline std::uint64_t parse_seed(std::string_view raw, const std::string &what)
    {
        raw = detail::trim(raw);
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
        if (raw.empty() || ec != std::errc{} || ptr != raw.data() + raw.size())
            throw ConfigError(what + ": expected an unsigned 64-bit integer, got '" + std::string(raw) + "'");
        return v;
    }

    namespace detail
    {
        using boost::property_tree::ptree;

        class ConfigReader
        {
        public:
            ConfigReader(const ptree &tree, std::filesystem::path base_dir)
                : tree_(tree), base_(std::move(base_dir)) {}

            ScenarioConfig read()
            {
                for (const auto &[name, node] : tree_)
                {
                    if (!node.data().empty())
                        throw ConfigError("key '" + name + "' must appear inside a section");
                    if (!known_sections().count(name))
                        throw ConfigError("unknown section [" + name + "]");
                }

                ScenarioConfig c;
                check_keys("array", {"aperture", "cell_dy", "counts"});
                c.aperture_lx = number("array", "aperture", std::nullopt);
                if (!(c.aperture_lx > 0.0))
                    throw ConfigError("[array] aperture: must be positive");
                c.cell_dy = number("array", "cell_dy", 1.0);
                if (!(c.cell_dy > 0.0))
                    throw ConfigError("[array] cell_dy: must be positive");
                c.counts = count_list("array", "counts");

                read_correlation(c);
                read_efficiency(c);

                check_keys("run", {"snr_db", "realizations", "seed", "output"});
                c.snr_db = number("run", "snr_db", 10.0);
                const double reals = number("run", "realizations", double(default_realizations));
                if (!(reals >= 1.0) || reals != std::floor(reals))
                    throw ConfigError("[run] realizations: must be a positive integer");
                c.realizations = static_cast<std::size_t>(reals);
                if (auto s = text("run", "seed"))
                    c.seed = parse_seed(*s, "[run] seed");
                if (auto o = text("run", "output"))
                    c.output = resolve(*o);
                return c;
            }

        private:
            static const std::set<std::string> &known_sections()
            {
                static const std::set<std::string> s{"array", "correlation", "efficiency", "run", "patterns", "touchstone"};
                return s;
            }

            void read_correlation(ScenarioConfig &c)
            {
                const auto src = text("correlation", "source");
                if (!src)
                    throw ConfigError("[correlation] source: required (analytic-2d, analytic-3d, synthesized-patterns or pattern-files)");
                if (*src == "analytic-2d")
                {
                    c.correlation = CorrelationSource::Analytic2D;
                    check_keys("correlation", {"source", "spread_deg", "center_deg"});
                    try
                    {
                        c.spread = AngularSpread2D::from_degrees(number("correlation", "spread_deg", 180.0),
                                                                 number("correlation", "center_deg", 90.0));
                    }
                    catch (const std::invalid_argument &e)
                    {
                        throw ConfigError(std::string("[correlation] spread_deg: ") + e.what());
                    }
                }
                else if (*src == "analytic-3d")
                {
                    c.correlation = CorrelationSource::Analytic3D;
                    check_keys("correlation", {"source", "theta_min_deg", "theta_max_deg"});
                    try
                    {
                        c.polar_range = PolarRange3D::from_degrees(number("correlation", "theta_min_deg", 0.0),
                                                                   number("correlation", "theta_max_deg", 180.0));
                    }
                    catch (const std::invalid_argument &e)
                    {
                        throw ConfigError(std::string("[correlation] theta range: ") + e.what());
                    }
                }
                else if (*src == "synthesized-patterns")
                {
                    c.correlation = CorrelationSource::SynthesizedPatterns;
                    check_keys("correlation", {"source", "element", "exponent", "grid_step_deg", "xpd"});
                    const auto el = text("correlation", "element").value_or("cos-power");
                    if (el == "cos-power")
                        c.element = ElementModel::CosPower;
                    else if (el == "isotropic")
                        c.element = ElementModel::Isotropic;
                    else
                        throw ConfigError("[correlation] element: expected 'cos-power' or 'isotropic', got '" + el + "'");
                    if (c.element == ElementModel::Isotropic && has("correlation", "exponent"))
                        throw ConfigError("[correlation] exponent: only valid with element = cos-power");
                    c.exponent = number("correlation", "exponent", 0.75);
                    if (!(c.exponent >= 0.0))
                        throw ConfigError("[correlation] exponent: must be >= 0");
                    c.grid_step_deg = number("correlation", "grid_step_deg", 1.0);
                    c.xpd = number("correlation", "xpd", 1.0);
                }
                else if (*src == "pattern-files")
                {
                    c.correlation = CorrelationSource::PatternFiles;
                    check_keys("correlation", {"source", "xpd"});
                    c.xpd = number("correlation", "xpd", 1.0);
                }
                else
                    throw ConfigError("[correlation] source: unknown value '" + *src + "'");

                if (c.xpd <= 0.0)
                    throw ConfigError("[correlation] xpd: must be positive");

                const bool want_patterns = c.correlation == CorrelationSource::PatternFiles;
                if (!want_patterns && tree_.get_child_optional("patterns"))
                    throw ConfigError("[patterns] section given but [correlation] source is '" + to_string(c.correlation) + "'");
                if (want_patterns)
                {
                    for (const auto &[n, files] : per_count_entries("patterns", c.counts))
                    {
                        const auto label = "[patterns] n" + std::to_string(n);
                        std::vector<std::filesystem::path> paths;
                        for (const auto &f : split_list(files))
                            paths.push_back(existing_file(f, label));
                        if (paths.size() != n)
                            throw ConfigError(label + ": expected " + std::to_string(n) + " pattern files, got " +
                                              std::to_string(paths.size()));
                        c.pattern_files[n] = std::move(paths);
                    }
                }
            }

            void read_efficiency(ScenarioConfig &c)
            {
                const auto src = text("efficiency", "source");
                if (!src)
                    throw ConfigError("[efficiency] source: required (unit, hannan or touchstone-file)");
                if (*src == "unit")
                {
                    c.efficiency = EfficiencySource::Unit;
                    check_keys("efficiency", {"source"});
                }
                else if (*src == "hannan")
                {
                    c.efficiency = EfficiencySource::Hannan;
                    check_keys("efficiency", {"source", "cap"});
                    c.efficiency_cap = number("efficiency", "cap", default_efficiency_cap);
                    if (!(c.efficiency_cap > 0.0 && c.efficiency_cap <= 1.0))
                        throw ConfigError("[efficiency] cap: must be in (0, 1]");
                }
                else if (*src == "touchstone-file")
                {
                    c.efficiency = EfficiencySource::TouchstoneFile;
                    check_keys("efficiency", {"source", "frequency_hz"});
                    c.frequency_hz = number("efficiency", "frequency_hz", std::nullopt);
                    if (!(c.frequency_hz > 0.0))
                        throw ConfigError("[efficiency] frequency_hz: must be positive");
                }
                else
                    throw ConfigError("[efficiency] source: unknown value '" + *src + "'");

                const bool want_touchstone = c.efficiency == EfficiencySource::TouchstoneFile;
                if (!want_touchstone && tree_.get_child_optional("touchstone"))
                    throw ConfigError("[touchstone] section given but [efficiency] source is '" + to_string(c.efficiency) + "'");
                if (want_touchstone)
                    for (const auto &[n, file] : per_count_entries("touchstone", c.counts))
                    {
                        const auto label = "[touchstone] n" + std::to_string(n);
                        auto path = existing_file(std::string(trim(file)), label);
                        if (touchstone_ports_hint(path) != n)
                            throw ConfigError(label + ": file '" + path.string() + "' is not a " + std::to_string(n) + "-port file");
                        c.touchstone_files[n] = std::move(path);
                    }
            }

            static std::size_t touchstone_ports_hint(const std::filesystem::path &p)
            {
                const auto ext = p.extension().string();
                if (ext.size() < 4)
                    return 0;
                std::size_t n = 0;
                std::from_chars(ext.data() + 2, ext.data() + ext.size() - 1, n);
                return n;
            }

            // Entries n<count> = value; every count in the sweep must be covered.
            std::map<std::size_t, std::string> per_count_entries(const std::string &section, const std::vector<std::size_t> &counts) const
            {
                std::map<std::size_t, std::string> out;
                if (const auto node = tree_.get_child_optional(section))
                    for (const auto &[key, value] : *node)
                    {
                        const auto n = key_count(key);
                        if (n == 0)
                            throw ConfigError("[" + section + "] " + key + ": keys must be n<count>, e.g. n9");
                        out[n] = value.data();
                    }
                for (auto n : counts)
                    if (!out.count(n))
                        throw ConfigError("[" + section + "] n" + std::to_string(n) + ": missing entry for element count " + std::to_string(n));
                return out;
            }

            static std::size_t key_count(const std::string &key)
            {
                if (key.size() < 2 || key[0] != 'n')
                    return 0;
                std::size_t n = 0;
                auto [ptr, ec] = std::from_chars(key.data() + 1, key.data() + key.size(), n);
                return (ec == std::errc{} && ptr == key.data() + key.size()) ? n : 0;
            }

            std::filesystem::path resolve(const std::string &name) const
            {
                std::filesystem::path p(name);
                return p.is_absolute() ? p : base_ / p;
            }

            std::filesystem::path existing_file(const std::string &name, const std::string &what) const
            {
                auto p = resolve(name);
                if (!std::filesystem::is_regular_file(p))
                    throw ConfigError(what + ": file '" + p.string() + "' does not exist");
                return p;
            }

            bool has(const std::string &section, const std::string &key) const
            {
                return tree_.get_optional<std::string>(ptree::path_type(section + "/" + key, '/')).has_value();
            }

            std::optional<std::string> text(const std::string &section, const std::string &key) const
            {
                const auto v = tree_.get_optional<std::string>(ptree::path_type(section + "/" + key, '/'));
                if (!v)
                    return std::nullopt;
                return std::string(trim(*v));
            }

            double number(const std::string &section, const std::string &key, std::optional<double> fallback) const
            {
                const auto raw = text(section, key);
                if (!raw)
                {
                    if (!fallback)
                        throw ConfigError("[" + section + "] " + key + ": required field is missing");
                    return *fallback;
                }
                const auto v = parse_double(*raw);
                if (!v || !std::isfinite(*v))
                    throw ConfigError("[" + section + "] " + key + ": expected a number, got '" + *raw + "'");
                return *v;
            }

            std::vector<std::size_t> count_list(const std::string &section, const std::string &key) const
            {
                const auto raw = text(section, key);
                if (!raw)
                    throw ConfigError("[" + section + "] " + key + ": required field is missing");
                std::vector<std::size_t> out;
                for (const auto &item : split_list(*raw))
                {
                    std::size_t n = 0;
                    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), n);
                    if (ec != std::errc{} || ptr != item.data() + item.size() || n == 0)
                        throw ConfigError("[" + section + "] " + key + ": '" + item + "' is not a positive integer");
                    if (std::find(out.begin(), out.end(), n) != out.end())
                        throw ConfigError("[" + section + "] " + key + ": duplicate element count " + item);
                    out.push_back(n);
                }
                if (out.empty())
                    throw ConfigError("[" + section + "] " + key + ": at least one element count is required");
                return out;
            }

            static std::vector<std::string> split_list(std::string_view raw)
            {
                std::vector<std::string> out;
                std::string cur;
                for (char ch : raw)
                {
                    if (ch == ',' || ch == ' ' || ch == '\t' || ch == '[' || ch == ']')
                    {
                        if (!cur.empty())
                            out.push_back(std::move(cur));
                        cur.clear();
                    }
                    else
                        cur.push_back(ch);
                }
                if (!cur.empty())
                    out.push_back(std::move(cur));
                return out;
            }

            void check_keys(const std::string &section, std::initializer_list<const char *> allowed) const
            {
                const auto node = tree_.get_child_optional(section);
                if (!node)
                    return;
                for (const auto &[key, value] : *node)
                {
                    bool ok = false;
                    for (const char *a : allowed)
                        ok = ok || key == a;
                    if (!ok)
                        throw ConfigError("[" + section + "] " + key + ": unknown key");
                }
            }

            const ptree &tree_;
            std::filesystem::path base_;
        };
    } // namespace detail

    inline ScenarioConfig parse_config_text(const std::string &text, const std::filesystem::path &base_dir = ".",
                                            const std::string &source = "<config>")
    {
        boost::property_tree::ptree tree;
        std::istringstream in(text);
        try
        {
            boost::property_tree::ini_parser::read_ini(in, tree);
        }
        catch (const boost::property_tree::ini_parser_error &e)
        {
            throw ConfigError(source + ":" + std::to_string(e.line()) + ": " + e.message());
        }
        try
        {
            return detail::ConfigReader(tree, base_dir).read();
        }
        catch (const ConfigError &e)
        {
            throw ConfigError(source + ": " + e.what());
        }
    }

    inline ScenarioConfig parse_config(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open config file '" + path.string() + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_config_text(buf.str(), path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path(),
                                 path.string());
    }
} // namespace hmimo

#endif
