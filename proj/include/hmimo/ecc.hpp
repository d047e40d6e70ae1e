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

#ifndef HMIMO_ECC_HPP
#define HMIMO_ECC_HPP

#include "common.hpp"
#include "parallel.hpp"
#include "pattern.hpp"

#include <Eigen/Eigenvalues>

#include <vector>

namespace hmimo
{
    // Hermitian, unit-diagonal, positive semidefinite matrix of complex
    // pairwise correlations rho_mn.
    class CorrelationMatrix
    {
    public:
        static constexpr double hermitian_tolerance = 1e-9;

        // Builds from the upper triangle of `m` (diagonal is forced to 1, the lower
        // triangle is the conjugate). Negative eigenvalues are floored at zero and
        // the diagonal renormalized when the input is indefinite.
        static CorrelationMatrix from_upper(const MatrixC &m)
        {
            if (m.rows() != m.cols() || m.rows() == 0)
                throw std::invalid_argument("CorrelationMatrix: matrix must be square and non-empty.");
            if (!m.allFinite())
                throw std::invalid_argument("CorrelationMatrix: non-finite entry.");
            MatrixC phi = m;
            mirror_upper(phi);

            bool repaired = false;
            if (phi.rows() > 1)
            {
                Eigen::SelfAdjointEigenSolver<MatrixC> es(phi);
                if (es.eigenvalues().minCoeff() < 0.0)
                {
                    const Eigen::VectorXd floored = es.eigenvalues().cwiseMax(0.0);
                    MatrixC fixed = es.eigenvectors() * floored.asDiagonal() * es.eigenvectors().adjoint();
                    if (!(fixed.diagonal().real().minCoeff() > 0.0))
                        throw std::invalid_argument("CorrelationMatrix: repair left a zero diagonal entry.");
                    const Eigen::VectorXd inv_sqrt = fixed.diagonal().real().cwiseSqrt().cwiseInverse();
                    phi = inv_sqrt.asDiagonal() * fixed * inv_sqrt.asDiagonal();
                    mirror_upper(phi);
                    repaired = true;
                }
            }
            return CorrelationMatrix(std::move(phi), repaired);
        }

        // Accepts a full matrix that must already be Hermitian to within tolerance.
        static CorrelationMatrix from_hermitian(const MatrixC &m)
        {
            if (m.rows() != m.cols() || m.rows() == 0)
                throw std::invalid_argument("CorrelationMatrix: matrix must be square and non-empty.");
            if ((m - m.adjoint()).cwiseAbs().maxCoeff() > hermitian_tolerance)
                throw std::invalid_argument("CorrelationMatrix: matrix is not Hermitian.");
            return from_upper(m);
        }

        static CorrelationMatrix identity(Eigen::Index n) { return from_upper(MatrixC::Identity(n, n)); }

        Eigen::Index size() const { return phi_.rows(); }
        cplx operator()(Eigen::Index m, Eigen::Index n) const { return phi_(m, n); }
        const MatrixC &matrix() const { return phi_; }

        // |rho_mn|^2, the envelope-correlation form used for reporting.
        double squared_magnitude(Eigen::Index m, Eigen::Index n) const { return std::norm(phi_(m, n)); }

        Eigen::VectorXd eigenvalues() const
        {
            return Eigen::SelfAdjointEigenSolver<MatrixC>(phi_, Eigen::EigenvaluesOnly).eigenvalues();
        }

        bool was_repaired() const { return repaired_; }

    private:
        CorrelationMatrix(MatrixC phi, bool repaired) : phi_(std::move(phi)), repaired_(repaired) {}

        static void mirror_upper(MatrixC &phi)
        {
            for (Eigen::Index m = 0; m < phi.rows(); ++m)
            {
                phi(m, m) = cplx(1.0, 0.0);
                for (Eigen::Index n = m + 1; n < phi.cols(); ++n)
                    phi(n, m) = std::conj(phi(m, n));
            }
        }

        MatrixC phi_;
        bool repaired_ = false;
    };

    namespace detail
    {
        inline cplx pattern_overlap(const RadiationPattern &pm, const RadiationPattern &pn, const AngularPowerSpectrum &aps)
        {
            const auto &g = pm.grid();
            const auto &etm = pm.e_theta(), &epm = pm.e_phi();
            const auto &etn = pn.e_theta(), &epn = pn.e_phi();
            const auto &pt = aps.p_theta(), &pp = aps.p_phi();
            const double kappa = aps.xpd();

            cplx total{};
            for (std::size_t it = 0; it < g.n_theta(); ++it)
            {
                cplx row{};
                for (std::size_t ip = 0; ip < g.n_phi(); ++ip)
                {
                    const auto i = g.index(it, ip);
                    const cplx gmn = kappa * etm[i] * std::conj(etn[i]) * pt[i] + epm[i] * std::conj(epn[i]) * pp[i];
                    row += g.weight(it, ip) * gmn;
                }
                total += row;
            }
            return total;
        }

        inline void check_same_grid(const RadiationPattern &p, const AngularPowerSpectrum &aps, const char *fn)
        {
            if (!p.grid().same_as(aps.grid()))
                throw std::invalid_argument(std::string(fn) + ": pattern and power spectrum grids differ.");
        }
    } // namespace detail

    // Spatial correlation of two embedded patterns in the given environment:
    //   rho_mn = <G_mn> / sqrt(<G_mm> <G_nn>),
    //   G_mn = kappa E_theta,m E*_theta,n P_theta + E_phi,m E*_phi,n P_phi,
    // with <.> the sin(theta)-weighted quadrature over the grid.
    inline cplx ecc(const RadiationPattern &pm, const RadiationPattern &pn, const AngularPowerSpectrum &aps)
    {
        detail::check_same_grid(pm, aps, "ecc");
        detail::check_same_grid(pn, aps, "ecc");

        const double gmm = detail::pattern_overlap(pm, pm, aps).real();
        const double gnn = detail::pattern_overlap(pn, pn, aps).real();
        if (!(gmm > 0.0) || !(gnn > 0.0))
            throw std::invalid_argument("ecc: pattern receives zero power under the given spectrum.");
        if (&pm == &pn)
            return cplx(1.0, 0.0);
        return detail::pattern_overlap(pm, pn, aps) / std::sqrt(gmm * gnn);
    }

    // Pairwise ECC over all patterns. Off-diagonal pairs are evaluated in
    // parallel and assembled by index.
    inline CorrelationMatrix correlation_matrix(const std::vector<RadiationPattern> &patterns,
                                                const AngularPowerSpectrum &aps, unsigned workers = 0)
    {
        if (patterns.empty())
            throw std::invalid_argument("correlation_matrix: at least one pattern is required.");
        for (const auto &p : patterns)
            detail::check_same_grid(p, aps, "correlation_matrix");

        const auto n = static_cast<Eigen::Index>(patterns.size());
        std::vector<double> self(patterns.size());
        parallel_for(patterns.size(), workers, [&](std::size_t i)
                     { self[i] = detail::pattern_overlap(patterns[i], patterns[i], aps).real(); });
        for (double s : self)
            if (!(s > 0.0))
                throw std::invalid_argument("correlation_matrix: pattern receives zero power under the given spectrum.");

        std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
        for (Eigen::Index m = 0; m < n; ++m)
            for (Eigen::Index k = m + 1; k < n; ++k)
                pairs.emplace_back(m, k);

        std::vector<cplx> values(pairs.size());
        parallel_for(pairs.size(), workers, [&](std::size_t i)
                     {
            const auto [m, k] = pairs[i];
            values[i] = detail::pattern_overlap(patterns[m], patterns[k], aps) / std::sqrt(self[m] * self[k]); });

        MatrixC phi = MatrixC::Identity(n, n);
        for (std::size_t i = 0; i < pairs.size(); ++i)
            phi(pairs[i].first, pairs[i].second) = values[i];
        return CorrelationMatrix::from_upper(phi);
    }
} // namespace hmimo

#endif
