// shadowcorr - correlated shadow fading synthesis and C/I Monte Carlo engine
// Copyright (C) 2026 The shadowcorr authors
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

#ifndef SHADOWCORR_CORRELATION_HPP
#define SHADOWCORR_CORRELATION_HPP

#include "shadowcorr/geometry.hpp"
#include "shadowcorr/matrix.hpp"

#include <span>
#include <vector>

namespace shadowcorr
{
    enum class TableKind
    {
        Measured,
        Predicted,
    };

    // Shadowing cross-correlation coefficient as a function of the pair
    // geometry (theta, R_dB).
    //
    // theta_edges holds every bin boundary including the domain maximum, so
    // it has one more entry than there are theta bins: {0, 30, 60, 90, 180}.
    // rdb_edges holds only the lower edges; the last R_dB bin is unbounded:
    // {0, 2, 4} describes [0,2), [2,4), [4,inf).
    // Bins are half-open [lo, hi); the last theta bin is closed at 180.
    class CorrelationTable
    {
    public:
        // Throws Error(InvalidArgument) on malformed edges or coefficients.
        CorrelationTable(std::vector<double> theta_edges,
                         std::vector<double> rdb_edges,
                         std::vector<std::vector<double>> alphas);

        static CorrelationTable builtin(TableKind kind);

        std::size_t theta_bins() const noexcept { return theta_edges_.size() - 1; }
        std::size_t rdb_bins() const noexcept { return rdb_edges_.size(); }

        const std::vector<double> &theta_edges() const noexcept { return theta_edges_; }
        const std::vector<double> &rdb_edges() const noexcept { return rdb_edges_; }
        const std::vector<std::vector<double>> &alphas() const noexcept { return alphas_; }

        double alpha(std::size_t rdb_bin, std::size_t theta_bin) const;

        std::size_t theta_bin(double theta_deg) const;
        std::size_t rdb_bin(double r_db) const;

        double lookup(double theta_deg, double r_db) const;
        double lookup(const PairGeometry &g) const { return lookup(g.theta_deg, g.r_db); }

        friend bool operator==(const CorrelationTable &, const CorrelationTable &) = default;

    private:
        std::vector<double> theta_edges_;
        std::vector<double> rdb_edges_;
        std::vector<std::vector<double>> alphas_;
    };

    // Symmetric, unit-diagonal matrix of link cross-correlation coefficients.
    class CorrelationMatrix
    {
    public:
        // Throws Error(InvalidArgument) unless m is square, symmetric, has a
        // unit diagonal and entries in [-1, 1] (tolerance 1e-12).
        explicit CorrelationMatrix(Matrix m);

        static CorrelationMatrix identity(std::size_t n) { return CorrelationMatrix(Matrix::identity(n)); }

        std::size_t size() const noexcept { return m_.rows(); }
        double operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }
        const Matrix &matrix() const noexcept { return m_; }

        friend bool operator==(const CorrelationMatrix &, const CorrelationMatrix &) = default;

    private:
        Matrix m_;
    };

    // Lower-triangular L with L * L^T equal to the factored matrix.
    class CholeskyFactor
    {
    public:
        // Throws Error(InvalidArgument) unless l is square and lower-triangular.
        explicit CholeskyFactor(Matrix l);

        static CholeskyFactor identity(std::size_t n) { return CholeskyFactor(Matrix::identity(n)); }

        std::size_t size() const noexcept { return l_.rows(); }
        double operator()(std::size_t i, std::size_t j) const noexcept { return l_(i, j); }
        const Matrix &matrix() const noexcept { return l_; }

        // out = L * v
        void apply(std::span<const double> v, std::span<double> out) const noexcept;

        Matrix product_with_transpose() const { return l_ * l_.transposed(); }

    private:
        Matrix l_;
    };

    // M(i,i) = 1, M(i,j) = table.lookup(pair_geometry(mobile, s_i, s_j)).
    CorrelationMatrix build_matrix(Position mobile, std::span<const Position> stations,
                                   const CorrelationTable &table);

    inline constexpr double kDefaultEigenFloor = 1e-9;

    struct PsdRepair
    {
        CorrelationMatrix matrix;
        bool repaired = false;
        double min_eigenvalue = 0.0; // of the input
    };

    // Eigenvalue clipping followed by rescaling to a unit diagonal. Inputs whose
    // smallest eigenvalue is already >= floor are returned unchanged.
    PsdRepair repair_psd(const CorrelationMatrix &m, double floor = kDefaultEigenFloor);

    inline CorrelationMatrix ensure_psd(const CorrelationMatrix &m, double floor = kDefaultEigenFloor)
    {
        return repair_psd(m, floor).matrix;
    }

    double min_eigenvalue(const CorrelationMatrix &m);

    // Throws Error(NotPositiveSemiDefinite) on a pivot below -1e-10. Zero
    // pivots (rank-deficient PSD input) yield a zero column.
    CholeskyFactor cholesky(const CorrelationMatrix &m);
}

#endif
