#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace cclab {

// Dense real matrix in row-major order. Relation matrices, their integer
// products and traces are stored exactly: nothing in this library exceeds
// 2^53, so double arithmetic on integer data is exact.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::initializer_list<double> entries);

    static Matrix identity(std::size_t n);
    static Matrix ones(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }

    Matrix transpose() const;
    // Entrywise (Schur) product.
    Matrix schur(const Matrix& other) const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(double s);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, double s) { return a *= s; }
    friend Matrix operator*(double s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);

    bool operator==(const Matrix&) const = default;

    double trace() const;
    double sum() const;
    double row_sum(std::size_t i) const;
    double col_sum(std::size_t j) const;
    double max_abs() const;
    double max_abs_diff(const Matrix& other) const;

    bool is_square() const { return rows_ == cols_; }
    bool is_symmetric(double eps) const;
    bool is_zero(double eps) const;
    // Every entry exactly 0.0 or 1.0.
    bool is_binary() const;
    bool is_integral(double eps = 1e-9) const;

    std::string shape_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

} // namespace cclab
