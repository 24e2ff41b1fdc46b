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

#include "shadowcorr/matrix.hpp"
#include "shadowcorr/error.hpp"

#include <algorithm>
#include <cmath>

shadowcorr::Matrix shadowcorr::Matrix::from_rows(const std::vector<std::vector<double>> &rows)
{
    const std::size_t n_rows = rows.size();
    const std::size_t n_cols = n_rows ? rows.front().size() : 0;
    Matrix m(n_rows, n_cols);
    for (std::size_t r = 0; r < n_rows; ++r)
    {
        if (rows[r].size() != n_cols)
            throw Error(ErrorCode::DimensionMismatch, "Matrix::from_rows: ragged rows");
        std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
    }
    return m;
}

shadowcorr::Matrix shadowcorr::Matrix::transposed() const
{
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

shadowcorr::Matrix shadowcorr::Matrix::operator*(const Matrix &rhs) const
{
    if (cols_ != rhs.rows_)
        throw Error(ErrorCode::DimensionMismatch, "Matrix product: inner dimensions differ");
    Matrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k)
        {
            const double a = (*this)(r, k);
            if (a == 0.0)
                continue;
            for (std::size_t c = 0; c < rhs.cols_; ++c)
                out(r, c) += a * rhs(k, c);
        }
    return out;
}

double shadowcorr::max_abs_diff(const Matrix &a, const Matrix &b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorCode::DimensionMismatch, "max_abs_diff: shapes differ");
    double m = 0.0;
    auto da = a.data();
    auto db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i)
        m = std::max(m, std::abs(da[i] - db[i]));
    return m;
}
