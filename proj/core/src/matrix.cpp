#include "cclab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cclab/errors.hpp"

namespace cclab {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (rows == 0 || cols == 0) {
        throw StructuralError("matrix dimensions must be positive");
    }
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::initializer_list<double> entries)
    : Matrix(rows, cols) {
    if (entries.size() != rows * cols) {
        throw StructuralError("entry count does not match " + shape_string());
    }
    std::copy(entries.begin(), entries.end(), data_.begin());
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::ones(std::size_t rows, std::size_t cols) {
    return Matrix(rows, cols, 1.0);
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::schur(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw StructuralError("Schur product shape mismatch: " + shape_string() + " vs " +
                              other.shape_string());
    }
    Matrix r = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] *= other.data_[k];
    return r;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw StructuralError("sum shape mismatch: " + shape_string() + " vs " +
                              other.shape_string());
    }
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw StructuralError("difference shape mismatch: " + shape_string() + " vs " +
                              other.shape_string());
    }
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(double s) {
    for (double& x : data_) x *= s;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
        throw StructuralError("product shape mismatch: " + a.shape_string() + " vs " +
                              b.shape_string());
    }
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

double Matrix::trace() const {
    double t = 0.0;
    const std::size_t n = std::min(rows_, cols_);
    for (std::size_t i = 0; i < n; ++i) t += (*this)(i, i);
    return t;
}

double Matrix::sum() const {
    double t = 0.0;
    for (double x : data_) t += x;
    return t;
}

double Matrix::row_sum(std::size_t i) const {
    double t = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) t += (*this)(i, j);
    return t;
}

double Matrix::col_sum(std::size_t j) const {
    double t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, j);
    return t;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
}

double Matrix::max_abs_diff(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw StructuralError("difference shape mismatch: " + shape_string() + " vs " +
                              other.shape_string());
    }
    double m = 0.0;
    for (std::size_t k = 0; k < data_.size(); ++k)
        m = std::max(m, std::abs(data_[k] - other.data_[k]));
    return m;
}

bool Matrix::is_symmetric(double eps) const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (std::abs((*this)(i, j) - (*this)(j, i)) > eps) return false;
    return true;
}

bool Matrix::is_zero(double eps) const {
    return max_abs() <= eps;
}

bool Matrix::is_binary() const {
    for (double x : data_)
        if (x != 0.0 && x != 1.0) return false;
    return true;
}

bool Matrix::is_integral(double eps) const {
    for (double x : data_)
        if (std::abs(x - std::round(x)) > eps) return false;
    return true;
}

std::string Matrix::shape_string() const {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%zux%zu", rows_, cols_);
    return buf;
}

} // namespace cclab
