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

#ifndef HMIMO_COMMON_HPP
#define HMIMO_COMMON_HPP

#include <Eigen/Dense>

#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

namespace hmimo
{
    // All lengths in this library are expressed in free-space wavelengths.
    inline constexpr double pi = std::numbers::pi;
    inline constexpr double two_pi = 2.0 * std::numbers::pi;
    inline constexpr double k0 = two_pi; // free-space wavenumber for lambda0 = 1

    using cplx = std::complex<double>;
    using Vec3 = Eigen::Vector3d;
    using MatrixC = Eigen::MatrixXcd;
    using MatrixR = Eigen::MatrixXd;

    constexpr double deg2rad(double deg) { return deg * (pi / 180.0); }
    constexpr double rad2deg(double rad) { return rad * (180.0 / pi); }

    // Error raised by the text-format readers (pattern CSV, Touchstone, scenario
    // configuration). Carries the 1-based line number of the offending input.
    class ParseError : public std::runtime_error
    {
    public:
        ParseError(const std::string &source, std::size_t line, const std::string &what)
            : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

        std::size_t line() const noexcept { return line_; }

    private:
        std::size_t line_;
    };

    namespace detail
    {
        inline std::string_view trim(std::string_view s)
        {
            const auto first = s.find_first_not_of(" \t\r\n");
            if (first == std::string_view::npos)
                return {};
            const auto last = s.find_last_not_of(" \t\r\n");
            return s.substr(first, last - first + 1);
        }

        // Locale-independent strict parse; the whole (trimmed) token must be consumed.
        inline std::optional<double> parse_double(std::string_view token)
        {
            token = trim(token);
            if (!token.empty() && token.front() == '+')
                token.remove_prefix(1);
            double value = 0.0;
            const auto *end = token.data() + token.size();
            auto [ptr, ec] = std::from_chars(token.data(), end, value);
            if (token.empty() || ec != std::errc{} || ptr != end)
                return std::nullopt;
            return value;
        }

        // Shortest decimal representation that reads back to the identical double.
        inline std::string format_roundtrip(double value)
        {
            char buf[64];
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
            if (ec != std::errc{})
                throw std::runtime_error("format_roundtrip: conversion failed");
            return std::string(buf, ptr);
        }

        inline void require_finite(double v, const char *what)
        {
            if (!std::isfinite(v))
                throw std::invalid_argument(std::string(what) + " must be finite.");
        }
    } // namespace detail
} // namespace hmimo

#endif
