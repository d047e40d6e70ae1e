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

#ifndef HMIMO_CAPACITY_HPP
#define HMIMO_CAPACITY_HPP

#include "array.hpp"
#include "common.hpp"
#include "ecc.hpp"
#include "parallel.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cstdint>
#include <random>
#include <vector>

namespace hmimo
{
    // Receive covariance R = Phi o (sqrt(e) sqrt(e)^T).
    class CovarianceMatrix
    {
    public:
        static CovarianceMatrix from_matrix(MatrixC r)
        {
            if (r.rows() != r.cols() || r.rows() == 0)
                throw std::invalid_argument("CovarianceMatrix: matrix must be square and non-empty.");
            if (!r.allFinite())
                throw std::invalid_argument("CovarianceMatrix: non-finite entry.");
            const double scale = std::max(1.0, r.cwiseAbs().maxCoeff());
            if ((r - r.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
                throw std::invalid_argument("CovarianceMatrix: matrix is not Hermitian.");
            return CovarianceMatrix(std::move(r));
        }

        Eigen::Index size() const { return r_.rows(); }
        const MatrixC &matrix() const { return r_; }
        cplx operator()(Eigen::Index m, Eigen::Index n) const { return r_(m, n); }

    private:
        explicit CovarianceMatrix(MatrixC r) : r_(std::move(r)) {}
        MatrixC r_;
    };

    inline CovarianceMatrix covariance(const CorrelationMatrix &phi, const EfficiencyVector &e)
    {
        if (static_cast<std::size_t>(phi.size()) != e.size())
            throw std::invalid_argument("covariance: correlation matrix is " + std::to_string(phi.size()) + "x" +
                                        std::to_string(phi.size()) + " but " + std::to_string(e.size()) + " efficiencies were given.");
        const MatrixC xi = efficiency_matrix(e).cast<cplx>();
        return CovarianceMatrix::from_matrix(phi.matrix().cwiseProduct(xi));
    }

    struct ChannelScenario
    {
        std::size_t n_t = 1;
        std::size_t n_r = 1;
        double snr_gamma = 10.0;       // linear total SNR
        double spacing = 1.0;          // receive element spacing, wavelengths
        std::size_t n_half_wavelength = 1; // receive count at half-wavelength spacing

        void validate() const
        {
            if (n_t == 0 || n_r == 0)
                throw std::invalid_argument("ChannelScenario: antenna counts must be >= 1.");
            if (!(snr_gamma >= 0.0) || !std::isfinite(snr_gamma))
                throw std::invalid_argument("ChannelScenario: SNR must be finite and non-negative.");
            if (!(spacing > 0.0) || !std::isfinite(spacing))
                throw std::invalid_argument("ChannelScenario: spacing must be positive.");
            if (n_half_wavelength == 0)
                throw std::invalid_argument("ChannelScenario: half-wavelength count must be >= 1.");
        }
    };

    // Expected ||H_w||_F^2. Array gain stops growing once the receive spacing
    // reaches half a wavelength, so dense arrays are held at N_t * N_{lambda/2}.
    inline double hw_norm_target(const ChannelScenario &s)
    {
        s.validate();
        const double receive = s.spacing > 0.5 ? double(s.n_r) : double(s.n_half_wavelength);
        return double(s.n_t) * receive;
    }

    struct CapacityEstimate
    {
        double mean_bits_per_s_per_hz = 0.0;
        double std_error = 0.0;
        std::size_t n_realizations = 0;
        std::uint64_t seed = 0;

        bool operator==(const CapacityEstimate &) const = default;
    };

    inline constexpr std::size_t default_realizations = 10000;

    namespace detail
    {
        // Independent generator for realization `index`: the pair (seed, index) is
        // expanded through std::seed_seq, so results do not depend on which
        // worker draws them.
        inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index)
        {
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
            return std::mt19937_64(seq);
        }
    } // namespace detail

    // One n_r x n_t white channel draw (i.i.d. CN(0,1) entries, filled column by
    // column), scaled so that E||H||_F^2 equals hw_norm_target(scenario).
    inline MatrixC channel_realization(const ChannelScenario &scenario, std::uint64_t seed, std::uint64_t index)
    {
        const double scale = std::sqrt(hw_norm_target(scenario) / double(scenario.n_t * scenario.n_r));
        auto rng = detail::substream(seed, index);
        std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
        MatrixC h(static_cast<Eigen::Index>(scenario.n_r), static_cast<Eigen::Index>(scenario.n_t));
        for (Eigen::Index c = 0; c < h.cols(); ++c)
            for (Eigen::Index r = 0; r < h.rows(); ++r)
            {
                const double re = normal(rng);
                const double im = normal(rng);
                h(r, c) = scale * cplx(re, im);
            }
        return h;
    }

    // Monte Carlo estimate of E{ log2 det(I + gamma/N_t R H H^H) }.
    //
    // With R = A A^H the determinant equals det(I + gamma/N_t B^H B), B = A^H H,
    // which is Hermitian positive definite and is evaluated through a Cholesky
    // factor. Realizations are reduced in index order.
    inline CapacityEstimate ergodic_capacity(const CovarianceMatrix &r, const ChannelScenario &scenario,
                                             std::size_t n_realizations = default_realizations,
                                             std::uint64_t seed = 1, unsigned workers = 0)
    {
        scenario.validate();
        if (static_cast<std::size_t>(r.size()) != scenario.n_r)
            throw std::invalid_argument("ergodic_capacity: covariance is " + std::to_string(r.size()) + "x" +
                                        std::to_string(r.size()) + " but the scenario has " +
                                        std::to_string(scenario.n_r) + " receive antennas.");
        if (n_realizations == 0)
            throw std::invalid_argument("ergodic_capacity: at least one realization is required.");

        Eigen::SelfAdjointEigenSolver<MatrixC> es(r.matrix());
        const double min_eig = es.eigenvalues().minCoeff();
        if (min_eig < -1e-8 * double(r.size()))
            throw std::invalid_argument("ergodic_capacity: covariance is not positive semidefinite (smallest eigenvalue " +
                                        detail::format_roundtrip(min_eig) + ").");
        const MatrixC factor = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().cast<cplx>().asDiagonal();
        const MatrixC factor_h = factor.adjoint();
        const double snr_per_stream = scenario.snr_gamma / double(scenario.n_t);
        const auto n_t = static_cast<Eigen::Index>(scenario.n_t);

        std::vector<double> samples(n_realizations);
        parallel_for(n_realizations, workers, [&](std::size_t i)
                     {
            const MatrixC b = factor_h * channel_realization(scenario, seed, i);
            MatrixC m = MatrixC::Identity(n_t, n_t);
            m.noalias() += snr_per_stream * (b.adjoint() * b);
            Eigen::LLT<MatrixC> llt(m);
            double logdet = 0.0;
            for (Eigen::Index k = 0; k < n_t; ++k)
                logdet += std::log(llt.matrixLLT()(k, k).real());
            samples[i] = 2.0 * logdet / std::log(2.0); });

        double sum = 0.0;
        for (double v : samples)
            sum += v;
        const double mean = sum / double(n_realizations);
        double ss = 0.0;
        for (double v : samples)
            ss += (v - mean) * (v - mean);
        const double sd = n_realizations > 1 ? std::sqrt(ss / double(n_realizations - 1)) : 0.0;

        return {std::max(mean, 0.0), sd / std::sqrt(double(n_realizations)), n_realizations, seed};
    }

    // Equivalent number of uncorrelated antennas, (tr Phi)^2 / ||Phi||_F^2.
    inline double diversity(const MatrixC &phi)
    {
        if (phi.rows() == 0 || phi.rows() != phi.cols())
            throw std::invalid_argument("diversity: matrix must be square and non-empty.");
        const double tr = phi.trace().real();
        return tr * tr / phi.squaredNorm();
    }

    inline double diversity(const CorrelationMatrix &phi) { return diversity(phi.matrix()); }
} // namespace hmimo

#endif
