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

#ifndef HMIMO_TOUCHSTONE_HPP
#define HMIMO_TOUCHSTONE_HPP

// Touchstone v1 (.sNp) S-parameter files.
//
// Supported subset:
//   ! comment                     (anywhere; rest of line ignored)
//   # <Hz|kHz|MHz|GHz> S <RI|MA|DB> R <ref>
//   <freq> <N*N value pairs>      (each frequency record starts a new line and
//                                  may wrap onto continuation lines)
//
// Pair order is S11 S21 S12 S22 for 2-port files and row-major
// (S11 S12 ... S1N S21 ...) for every other port count. MA and DB angles are
// in degrees.

#include "array.hpp"
#include "common.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace hmimo
{
    enum class TouchstoneFormat
    {
        RealImag,
        MagAngle,
        DbAngle
    };

    struct TouchstoneData
    {
        std::size_t ports = 0;
        TouchstoneFormat format = TouchstoneFormat::MagAngle;
        double reference_ohms = 50.0;
        std::vector<double> frequencies_hz;
        std::vector<ScatteringMatrix> matrices;

        // Index of the sample closest to target_hz; on a tie the lower frequency wins.
        std::size_t nearest_index(double target_hz) const
        {
            if (frequencies_hz.empty())
                throw std::invalid_argument("TouchstoneData: no frequency points.");
            std::size_t best = 0;
            double best_dist = std::abs(frequencies_hz[0] - target_hz);
            const double tie = 1e-9 * std::max(std::abs(target_hz), 1.0);
            for (std::size_t i = 1; i < frequencies_hz.size(); ++i)
            {
                const double d = std::abs(frequencies_hz[i] - target_hz);
                if (d < best_dist - tie)
                {
                    best = i;
                    best_dist = d;
                }
            }
            return best;
        }
    };

    namespace detail
    {
        inline std::string upper(std::string_view s)
        {
            std::string out(s);
            for (auto &c : out)
                c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
            return out;
        }

        // (row, col) of the k-th value pair in a record.
        inline std::pair<Eigen::Index, Eigen::Index> touchstone_slot(std::size_t k, std::size_t ports)
        {
            const auto n = static_cast<Eigen::Index>(ports);
            const auto i = static_cast<Eigen::Index>(k);
            if (ports == 2)
                return {i % n, i / n};
            return {i / n, i % n};
        }

        inline cplx touchstone_value(double a, double b, TouchstoneFormat f)
        {
            switch (f)
            {
            case TouchstoneFormat::RealImag:
                return {a, b};
            case TouchstoneFormat::MagAngle:
                return std::polar(a, deg2rad(b));
            case TouchstoneFormat::DbAngle:
                return std::polar(std::pow(10.0, a / 20.0), deg2rad(b));
            }
            return {};
        }
    } // namespace detail

    inline TouchstoneData read_touchstone(std::istream &in, std::size_t ports, const std::string &source = "<stream>")
    {
        if (ports == 0)
            throw std::invalid_argument("read_touchstone: port count must be >= 1.");

        TouchstoneData data;
        data.ports = ports;
        double unit_scale = 1e9;
        bool have_options = false;

        const std::size_t per_record = 1 + 2 * ports * ports;
        std::vector<double> record;
        std::size_t record_line = 0;

        auto finish_record = [&]()
        {
            MatrixC s(static_cast<Eigen::Index>(ports), static_cast<Eigen::Index>(ports));
            for (std::size_t k = 0; k < ports * ports; ++k)
            {
                const auto [r, c] = detail::touchstone_slot(k, ports);
                s(r, c) = detail::touchstone_value(record[1 + 2 * k], record[2 + 2 * k], data.format);
            }
            const double f = record[0] * unit_scale;
            if (!data.frequencies_hz.empty() && !(f > data.frequencies_hz.back()))
                throw ParseError(source, record_line, "frequencies must be strictly increasing");
            if (!s.allFinite())
                throw ParseError(source, record_line, "non-finite S-parameter value");
            data.frequencies_hz.push_back(f);
            data.matrices.emplace_back(std::move(s));
            record.clear();
        };

        std::string text;
        std::size_t line_no = 0;
        while (std::getline(in, text))
        {
            ++line_no;
            std::string_view line = text;
            if (auto bang = line.find('!'); bang != std::string_view::npos)
                line = line.substr(0, bang);
            line = detail::trim(line);
            if (line.empty())
                continue;

            if (line.front() == '#')
            {
                if (have_options)
                    continue; // only the first option line is significant
                if (!record.empty() || !data.frequencies_hz.empty())
                    throw ParseError(source, line_no, "option line must precede the data");
                have_options = true;
                std::istringstream opts{std::string(line.substr(1))};
                std::string tok;
                while (opts >> tok)
                {
                    const auto t = detail::upper(tok);
                    if (t == "HZ")
                        unit_scale = 1.0;
                    else if (t == "KHZ")
                        unit_scale = 1e3;
                    else if (t == "MHZ")
                        unit_scale = 1e6;
                    else if (t == "GHZ")
                        unit_scale = 1e9;
                    else if (t == "S")
                        ;
                    else if (t == "Y" || t == "Z" || t == "H" || t == "G")
                        throw ParseError(source, line_no, "malformed option line: only S parameters are supported, got '" + tok + "'");
                    else if (t == "RI")
                        data.format = TouchstoneFormat::RealImag;
                    else if (t == "MA")
                        data.format = TouchstoneFormat::MagAngle;
                    else if (t == "DB")
                        data.format = TouchstoneFormat::DbAngle;
                    else if (t == "R")
                    {
                        std::string ref;
                        const auto r = (opts >> ref) ? detail::parse_double(ref) : std::nullopt;
                        if (!r || !(*r > 0.0))
                            throw ParseError(source, line_no, "malformed option line: 'R' needs a positive reference impedance");
                        data.reference_ohms = *r;
                    }
                    else
                        throw ParseError(source, line_no, "malformed option line: unknown token '" + tok + "'");
                }
                continue;
            }

            std::istringstream values{std::string(line)};
            std::string tok;
            bool first = true;
            while (values >> tok)
            {
                const auto v = detail::parse_double(tok);
                if (!v)
                    throw ParseError(source, line_no, "malformed number '" + tok + "'");
                if (record.empty())
                {
                    if (!first)
                        throw ParseError(source, line_no, "frequency record must start on a new line; data row holds more values than a " +
                                                              std::to_string(ports) + "-port record");
                    record_line = line_no;
                }
                else if (first && ports >= 3)
                {
                    // Continuation lines start a matrix row or resume it after four pairs.
                    const std::size_t done = record.size() - 1;
                    if (done % 2 != 0 || (done / 2) % ports % 4 != 0)
                        throw ParseError(source, line_no, "matrix row of the record started on line " + std::to_string(record_line) +
                                                              " is incomplete; expected " + std::to_string(ports) + " value pairs per row");
                }
                first = false;
                record.push_back(*v);
                if (record.size() == per_record)
                    finish_record();
            }
        }

        if (!record.empty())
            throw ParseError(source, record_line, "record has " + std::to_string(record.size()) + " values, expected " +
                                                      std::to_string(per_record) + " for a " + std::to_string(ports) + "-port file");
        if (data.frequencies_hz.empty())
            throw ParseError(source, std::max<std::size_t>(line_no, 1), "no frequency points");
        return data;
    }

    // Port count from a ".sNp" extension (case-insensitive).
    inline std::size_t touchstone_ports_from_path(const std::filesystem::path &path)
    {
        const auto ext = detail::upper(path.extension().string());
        if (ext.size() >= 4 && ext[1] == 'S' && ext.back() == 'P')
        {
            std::size_t n = 0;
            const auto digits = std::string_view(ext).substr(2, ext.size() - 3);
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
            if (ec == std::errc{} && ptr == digits.data() + digits.size() && n > 0)
                return n;
        }
        throw std::invalid_argument("touchstone: cannot infer port count from file name '" + path.string() + "' (expected .sNp).");
    }

    inline TouchstoneData load_touchstone_file(const std::filesystem::path &path)
    {
        const auto ports = touchstone_ports_from_path(path);
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("load_touchstone: cannot open '" + path.string() + "'.");
        return read_touchstone(in, ports, path.string());
    }

    // S-matrix at the sampled frequency nearest target_hz (lower frequency on ties).
    inline ScatteringMatrix load_touchstone(const std::filesystem::path &path, double target_hz)
    {
        const auto data = load_touchstone_file(path);
        return data.matrices[data.nearest_index(target_hz)];
    }

    // Writes an RI-format file in Hz with round-trip decimal values, four pairs per line.
    inline void write_touchstone(const TouchstoneData &data, std::ostream &out)
    {
        if (data.frequencies_hz.size() != data.matrices.size())
            throw std::invalid_argument("write_touchstone: frequency and matrix counts differ.");
        out << "! hmimo touchstone export\n";
        out << "# HZ S RI R " << detail::format_roundtrip(data.reference_ohms) << '\n';
        const std::size_t n = data.ports;
        for (std::size_t f = 0; f < data.frequencies_hz.size(); ++f)
        {
            const auto &s = data.matrices[f];
            if (static_cast<std::size_t>(s.ports()) != n)
                throw std::invalid_argument("write_touchstone: matrix size does not match the port count.");
            out << detail::format_roundtrip(data.frequencies_hz[f]);
            for (std::size_t k = 0; k < n * n; ++k)
            {
                const auto [r, c] = detail::touchstone_slot(k, n);
                const bool row_start = n >= 3 && k % n == 0 && k > 0;
                const bool wrap = n >= 3 ? (k % n != 0 && k % n % 4 == 0) : false;
                if (row_start || wrap)
                    out << '\n';
                out << ' ' << detail::format_roundtrip(s(r, c).real()) << ' ' << detail::format_roundtrip(s(r, c).imag());
            }
            out << '\n';
        }
    }
} // namespace hmimo

#endif
