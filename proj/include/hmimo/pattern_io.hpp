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

#ifndef HMIMO_PATTERN_IO_HPP
#define HMIMO_PATTERN_IO_HPP

// Grid-CSV far-field format:
//
//   # optional comment lines
//   theta_deg,phi_deg,re_etheta,im_etheta,re_ephi,im_ephi
//   0,0,1,0,0,0
//   0,1,1,0,0,0
//   ...
//
// Rows are ordered theta-major (all phi samples of the first theta, then the
// next theta). Angles are in degrees; every theta row must carry the same phi
// samples and both axes must be uniformly spaced.

#include "common.hpp"
#include "pattern.hpp"

#include <array>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace hmimo
{
    inline constexpr std::string_view pattern_csv_header = "theta_deg,phi_deg,re_etheta,im_etheta,re_ephi,im_ephi";

    inline RadiationPattern read_pattern_csv(std::istream &in, const std::string &source = "<stream>")
    {
        static constexpr std::array<const char *, 6> columns = {"theta_deg", "phi_deg", "re_etheta",
                                                                "im_etheta", "re_ephi", "im_ephi"};
        struct Row
        {
            std::array<double, 6> v;
            std::size_t line;
        };

        std::vector<Row> rows;
        std::map<std::pair<double, double>, std::size_t> seen;
        bool have_header = false;
        std::string text;
        std::size_t line_no = 0;

        while (std::getline(in, text))
        {
            ++line_no;
            const auto line = detail::trim(text);
            if (line.empty() || line.front() == '#')
                continue;
            if (!have_header)
            {
                if (line != pattern_csv_header)
                    throw ParseError(source, line_no, "expected header '" + std::string(pattern_csv_header) + "'");
                have_header = true;
                continue;
            }

            Row row{{}, line_no};
            std::size_t col = 0, start = 0;
            while (true)
            {
                const auto comma = line.find(',', start);
                const auto field = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
                if (col >= columns.size())
                    throw ParseError(source, line_no, "too many columns (expected 6)");
                const auto value = detail::parse_double(field);
                if (!value)
                    throw ParseError(source, line_no, std::string("malformed number in column '") + columns[col] + "'");
                if (!std::isfinite(*value))
                    throw ParseError(source, line_no, std::string("non-finite value in column '") + columns[col] + "'");
                row.v[col++] = *value;
                if (comma == std::string_view::npos)
                    break;
                start = comma + 1;
            }
            if (col != columns.size())
                throw ParseError(source, line_no, "expected 6 columns, found " + std::to_string(col));

            const auto key = std::make_pair(row.v[0], row.v[1]);
            if (auto it = seen.find(key); it != seen.end())
                throw ParseError(source, line_no, "duplicate direction (theta " + detail::format_roundtrip(key.first) +
                                                      ", phi " + detail::format_roundtrip(key.second) +
                                                      ") first given on line " + std::to_string(it->second));
            seen.emplace(key, line_no);
            rows.push_back(row);
        }

        if (!have_header)
            throw ParseError(source, std::max<std::size_t>(line_no, 1), "missing header line");
        if (rows.empty())
            throw ParseError(source, line_no, "no data rows");

        // Recover the grid from the theta-major row order.
        std::vector<double> theta, phi;
        for (const auto &r : rows)
        {
            if (theta.empty() || r.v[0] != theta.back())
            {
                if (!theta.empty() && r.v[0] < theta.back())
                    throw ParseError(source, r.line, "theta values must be non-decreasing (rows are theta-major)");
                theta.push_back(r.v[0]);
            }
            if (theta.size() == 1)
            {
                if (!phi.empty() && r.v[1] <= phi.back())
                    throw ParseError(source, r.line, "phi values must increase within a theta row");
                phi.push_back(r.v[1]);
            }
        }
        for (std::size_t i = 0; i < rows.size(); ++i)
        {
            const auto &r = rows[i];
            const std::size_t ip = i % phi.size(), it = i / phi.size();
            if (it >= theta.size() || r.v[0] != theta[it] || r.v[1] != phi[ip])
                throw ParseError(source, r.line, "row does not continue the rectangular theta/phi grid "
                                                 "(expected theta " + detail::format_roundtrip(it < theta.size() ? theta[it] : r.v[0]) +
                                                     ", phi " + detail::format_roundtrip(phi[ip]) + ")");
        }
        if (rows.size() != theta.size() * phi.size())
            throw ParseError(source, rows.back().line, "incomplete grid: last theta row is missing phi samples");

        auto check_uniform = [&](const std::vector<double> &axis, const char *name, auto line_of)
        {
            if (axis.size() < 2)
                throw ParseError(source, rows.front().line, std::string("at least 2 ") + name + " samples required");
            // The first two samples fix the step; report the first row that breaks it.
            const double step = axis[1] - axis[0];
            for (std::size_t k = 2; k < axis.size(); ++k)
                if (std::abs(axis[k] - (axis.front() + step * double(k))) > AngularGrid::spacing_tolerance)
                    throw ParseError(source, line_of(k), std::string("non-uniform ") + name + " spacing");
        };
        check_uniform(theta, "theta", [&](std::size_t k)
                      { return rows[k * phi.size()].line; });
        check_uniform(phi, "phi", [&](std::size_t k)
                      { return rows[k].line; });

        std::vector<cplx> et(rows.size()), ep(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
        {
            et[i] = {rows[i].v[2], rows[i].v[3]};
            ep[i] = {rows[i].v[4], rows[i].v[5]};
        }
        try
        {
            return {AngularGrid(std::move(theta), std::move(phi)), std::move(et), std::move(ep)};
        }
        catch (const std::invalid_argument &e)
        {
            throw ParseError(source, rows.front().line, e.what());
        }
    }

    inline RadiationPattern load_pattern_file(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("load_pattern_file: cannot open '" + path.string() + "'.");
        return read_pattern_csv(in, path.string());
    }

    inline void write_pattern_csv(const RadiationPattern &p, std::ostream &out)
    {
        const auto &g = p.grid();
        out << "# hmimo radiation pattern, " << g.n_theta() << " x " << g.n_phi() << " samples\n";
        out << pattern_csv_header << '\n';
        for (std::size_t it = 0; it < g.n_theta(); ++it)
            for (std::size_t ip = 0; ip < g.n_phi(); ++ip)
            {
                const auto i = g.index(it, ip);
                out << detail::format_roundtrip(g.theta_deg()[it]) << ','
                    << detail::format_roundtrip(g.phi_deg()[ip]) << ','
                    << detail::format_roundtrip(p.e_theta()[i].real()) << ','
                    << detail::format_roundtrip(p.e_theta()[i].imag()) << ','
                    << detail::format_roundtrip(p.e_phi()[i].real()) << ','
                    << detail::format_roundtrip(p.e_phi()[i].imag()) << '\n';
            }
    }

    inline void save_pattern_file(const RadiationPattern &p, const std::filesystem::path &path)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("save_pattern_file: cannot open '" + path.string() + "' for writing.");
        write_pattern_csv(p, out);
        if (!out)
            throw std::runtime_error("save_pattern_file: write failed for '" + path.string() + "'.");
    }
} // namespace hmimo

#endif
