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

#include "shadowcorr/correlation.hpp"
#include "shadowcorr/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace
{
    constexpr double kEntryTolerance = 1e-12;
    constexpr double kEigenTolerance = 1e-12;
    constexpr double kNegativePivotTolerance = 1e-10;
    constexpr double kZeroPivot = 1e-14;
    constexpr double kZeroPivotResidual = 1e-8;

    void check_edges(const std::vector<double> &edges, const char *name)
    {
        if (edges.empty())
            throw shadowcorr::Error(shadowcorr::ErrorCode::InvalidArgument, std::string(name) + ": no edges");
        if (edges.front() != 0.0)
            throw shadowcorr::Error(shadowcorr::ErrorCode::InvalidArgument, std::string(name) + ": first edge must be 0");
        for (std::size_t i = 0; i < edges.size(); ++i)
        {
            if (!std::isfinite(edges[i]))
                throw shadowcorr::Error(shadowcorr::ErrorCode::InvalidArgument, std::string(name) + ": non-finite edge");
            if (i > 0 && !(edges[i] > edges[i - 1]))
                throw shadowcorr::Error(shadowcorr::ErrorCode::InvalidArgument, std::string(name) + ": edges must be strictly ascending");
        }
    }

    Eigen::MatrixXd to_eigen(const shadowcorr::Matrix &m)
    {
        Eigen::MatrixXd e(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
        return e;
    }
}

// ------------------------------------------------------------------------
// CorrelationTable

shadowcorr::CorrelationTable::CorrelationTable(std::vector<double> theta_edges,
                                               std::vector<double> rdb_edges,
                                               std::vector<std::vector<double>> alphas)
    : theta_edges_(std::move(theta_edges)), rdb_edges_(std::move(rdb_edges)), alphas_(std::move(alphas))
{
    check_edges(theta_edges_, "theta_edges");
    check_edges(rdb_edges_, "rdb_edges");
    if (theta_edges_.size() < 2)
        throw Error(ErrorCode::InvalidArgument, "theta_edges: need at least one bin");
    if (theta_edges_.back() != 180.0)
        throw Error(ErrorCode::InvalidArgument, "theta_edges: last edge must be 180");
    if (alphas_.size() != rdb_bins())
        throw Error(ErrorCode::InvalidArgument, "alphas: expected " + std::to_string(rdb_bins()) + " rows (one per R_dB bin)");
    for (const auto &row : alphas_)
    {
        if (row.size() != theta_bins())
            throw Error(ErrorCode::InvalidArgument, "alphas: expected " + std::to_string(theta_bins()) + " columns (one per theta bin)");
        for (double a : row)
            if (!std::isfinite(a) || a < -1.0 || a > 1.0)
                throw Error(ErrorCode::InvalidArgument, "alphas: coefficient outside [-1, 1]");
    }
}

shadowcorr::CorrelationTable shadowcorr::CorrelationTable::builtin(TableKind kind)
{
    if (kind == TableKind::Predicted)
        return CorrelationTable({0.0, 30.0, 60.0, 90.0, 180.0},
                                {0.0, 2.0, 4.0},
                                {{0.8, 0.5, 0.4, 0.2},
                                 {0.6, 0.4, 0.4, 0.2},
                                 {0.4, 0.2, 0.2, 0.2}});

    // The measured table has no [60, 90) cell and only a lower bound above
    // 90 degrees; both are filled with 0.2.
    return CorrelationTable({0.0, 30.0, 60.0, 90.0, 180.0},
                            {0.0},
                            {{0.6, 0.25, 0.2, 0.2}});
}

double shadowcorr::CorrelationTable::alpha(std::size_t rdb_bin, std::size_t theta_bin) const
{
    if (rdb_bin >= rdb_bins() || theta_bin >= theta_bins())
        throw Error(ErrorCode::InvalidArgument, "CorrelationTable::alpha: bin index out of range");
    return alphas_[rdb_bin][theta_bin];
}

std::size_t shadowcorr::CorrelationTable::theta_bin(double theta_deg) const
{
    if (!(theta_deg >= 0.0) || theta_deg > 180.0 + 1e-9)
        throw Error(ErrorCode::InvalidArgument, "theta outside [0, 180]: " + std::to_string(theta_deg));
    const auto it = std::upper_bound(theta_edges_.begin(), theta_edges_.end(), theta_deg);
    const auto idx = static_cast<std::size_t>(it - theta_edges_.begin()) - 1;
    return std::min(idx, theta_bins() - 1);
}

std::size_t shadowcorr::CorrelationTable::rdb_bin(double r_db) const
{
    if (!(r_db >= 0.0))
        throw Error(ErrorCode::InvalidArgument, "R_dB must be non-negative: " + std::to_string(r_db));
    const auto it = std::upper_bound(rdb_edges_.begin(), rdb_edges_.end(), r_db);
    return static_cast<std::size_t>(it - rdb_edges_.begin()) - 1;
}

double shadowcorr::CorrelationTable::lookup(double theta_deg, double r_db) const
{
    return alphas_[rdb_bin(r_db)][theta_bin(theta_deg)];
}

// ------------------------------------------------------------------------
// CorrelationMatrix / CholeskyFactor

shadowcorr::CorrelationMatrix::CorrelationMatrix(Matrix m) : m_(std::move(m))
{
    if (!m_.is_square() || m_.rows() == 0)
        throw Error(ErrorCode::InvalidArgument, "CorrelationMatrix: must be square and non-empty");
    const std::size_t n = m_.rows();
    for (std::size_t i = 0; i < n; ++i)
    {
        if (std::abs(m_(i, i) - 1.0) > kEntryTolerance)
            throw Error(ErrorCode::InvalidArgument, "CorrelationMatrix: diagonal must be 1");
        for (std::size_t j = 0; j < n; ++j)
        {
            const double v = m_(i, j);
            if (!std::isfinite(v) || std::abs(v) > 1.0 + kEntryTolerance)
                throw Error(ErrorCode::InvalidArgument, "CorrelationMatrix: entries must lie in [-1, 1]");
            if (std::abs(v - m_(j, i)) > kEntryTolerance)
                throw Error(ErrorCode::InvalidArgument, "CorrelationMatrix: must be symmetric");
        }
    }
}

shadowcorr::CholeskyFactor::CholeskyFactor(Matrix l) : l_(std::move(l))
{
    if (!l_.is_square() || l_.rows() == 0)
        throw Error(ErrorCode::InvalidArgument, "CholeskyFactor: must be square and non-empty");
    for (std::size_t i = 0; i < l_.rows(); ++i)
        for (std::size_t j = 0; j < l_.cols(); ++j)
        {
            if (!std::isfinite(l_(i, j)))
                throw Error(ErrorCode::InvalidArgument, "CholeskyFactor: non-finite entry");
            if (j > i && l_(i, j) != 0.0)
                throw Error(ErrorCode::InvalidArgument, "CholeskyFactor: must be lower-triangular");
        }
}

void shadowcorr::CholeskyFactor::apply(std::span<const double> v, std::span<double> out) const noexcept
{
    const std::size_t n = l_.rows();
    for (std::size_t i = 0; i < n; ++i)
    {
        double acc = 0.0;
        for (std::size_t j = 0; j <= i; ++j)
            acc += l_(i, j) * v[j];
        out[i] = acc;
    }
}

// ------------------------------------------------------------------------

shadowcorr::CorrelationMatrix shadowcorr::build_matrix(Position mobile, std::span<const Position> stations,
                                                       const CorrelationTable &table)
{
    if (stations.empty())
        throw Error(ErrorCode::InvalidArgument, "build_matrix: need at least one station");
    const std::size_t n = stations.size();
    Matrix m = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        if (!(distance(mobile, stations[i]) > 0.0))
            throw Error(ErrorCode::DegenerateGeometry,
                        "build_matrix: mobile coincides with station " + std::to_string(i));
        for (std::size_t j = i + 1; j < n; ++j)
        {
            const double a = table.lookup(pair_geometry(mobile, stations[i], stations[j]));
            m(i, j) = a;
            m(j, i) = a;
        }
    }
    return CorrelationMatrix(std::move(m));
}

double shadowcorr::min_eigenvalue(const CorrelationMatrix &m)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_eigen(m.matrix()), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

shadowcorr::PsdRepair shadowcorr::repair_psd(const CorrelationMatrix &m, double floor)
{
    if (!(floor >= 0.0) || !(floor < 1.0))
        throw Error(ErrorCode::InvalidArgument, "repair_psd: eigenvalue floor must lie in [0, 1)");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_eigen(m.matrix()));
    Eigen::VectorXd w = solver.eigenvalues();
    const double w_min = w.minCoeff();
    if (w_min >= floor - kEigenTolerance)
        return {m, false, w_min};

    // Rescaling to a unit diagonal divides eigenvalues by at most
    // 1 + target - w_min, so clipping to this target keeps the result >= floor.
    const double target = std::max(floor, floor * (1.0 - w_min) / (1.0 - floor));
    for (Eigen::Index i = 0; i < w.size(); ++i)
        w(i) = std::max(w(i), target);
    const Eigen::MatrixXd &v = solver.eigenvectors();
    const Eigen::MatrixXd x = v * w.asDiagonal() * v.transpose();

    const std::size_t n = m.size();
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
    {
        out(i, i) = 1.0;
        const auto ii = static_cast<Eigen::Index>(i);
        for (std::size_t j = i + 1; j < n; ++j)
        {
            const auto jj = static_cast<Eigen::Index>(j);
            double r = 0.5 * (x(ii, jj) + x(jj, ii)) / std::sqrt(x(ii, ii) * x(jj, jj));
            r = std::clamp(r, -1.0, 1.0);
            out(i, j) = r;
            out(j, i) = r;
        }
    }
    return {CorrelationMatrix(std::move(out)), true, w_min};
}

shadowcorr::CholeskyFactor shadowcorr::cholesky(const CorrelationMatrix &m)
{
    const std::size_t n = m.size();
    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j)
    {
        double pivot = m(j, j);
        for (std::size_t k = 0; k < j; ++k)
            pivot -= l(j, k) * l(j, k);

        if (pivot < -kNegativePivotTolerance)
            throw Error(ErrorCode::NotPositiveSemiDefinite,
                        "cholesky: negative pivot " + std::to_string(pivot) + " at column " + std::to_string(j));

        if (pivot <= kZeroPivot)
        {
            // rank-deficient direction: the rest of the column must vanish too
            for (std::size_t i = j + 1; i < n; ++i)
            {
                double num = m(i, j);
                for (std::size_t k = 0; k < j; ++k)
                    num -= l(i, k) * l(j, k);
                if (std::abs(num) > kZeroPivotResidual)
                    throw Error(ErrorCode::NotPositiveSemiDefinite,
                                "cholesky: zero pivot with non-zero off-diagonal at column " + std::to_string(j));
            }
            continue;
        }

        const double d = std::sqrt(pivot);
        l(j, j) = d;
        for (std::size_t i = j + 1; i < n; ++i)
        {
            double num = m(i, j);
            for (std::size_t k = 0; k < j; ++k)
                num -= l(i, k) * l(j, k);
            l(i, j) = num / d;
        }
    }
    return CholeskyFactor(std::move(l));
}
