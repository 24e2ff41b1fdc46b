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

#ifndef SHADOWCORR_MATRIX_HPP
#define SHADOWCORR_MATRIX_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace shadowcorr
{
    // Dense row-major matrix of doubles.
    class Matrix
    {
    public:
        Matrix() = default;
        Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
            : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

        static Matrix identity(std::size_t n)
        {
            Matrix m(n, n);
            for (std::size_t i = 0; i < n; ++i)
                m(i, i) = 1.0;
            return m;
        }

        // rows must all have the same length
        static Matrix from_rows(const std::vector<std::vector<double>> &rows);

        std::size_t rows() const noexcept { return rows_; }
        std::size_t cols() const noexcept { return cols_; }
        bool is_square() const noexcept { return rows_ == cols_; }

        double &operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
        double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

        std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
        std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

        std::span<const double> data() const noexcept { return data_; }
        std::span<double> data() noexcept { return data_; }

        Matrix transposed() const;
        Matrix operator*(const Matrix &rhs) const;

        friend bool operator==(const Matrix &, const Matrix &) = default;

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<double> data_;
    };

    // Largest absolute entry-wise difference; matrices must have equal shape.
    double max_abs_diff(const Matrix &a, const Matrix &b);
}

#endif
