#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "adaptkw/errors.hpp"

namespace adaptkw {

using Vec = std::vector<double>;

// Dense row-major matrix, just big enough for the adapter math.
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    double& at(size_t r, size_t c) { return data_[r * cols_ + c]; }
    double at(size_t r, size_t c) const { return data_[r * cols_ + c]; }

    double* row(size_t r) { return data_.data() + r * cols_; }
    const double* row(size_t r) const { return data_.data() + r * cols_; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool operator==(const Matrix& o) const = default;

    // y = M x
    Vec apply(const Vec& x) const {
        if (x.size() != cols_) throw DimensionMismatch("matrix-vector size");
        Vec y(rows_, 0.0);
        for (size_t r = 0; r < rows_; ++r) {
            const double* m = row(r);
            double acc = 0.0;
            for (size_t c = 0; c < cols_; ++c) acc += m[c] * x[c];
            y[r] = acc;
        }
        return y;
    }

    // y = M^T x
    Vec apply_transposed(const Vec& x) const {
        if (x.size() != rows_) throw DimensionMismatch("matrix-vector size");
        Vec y(cols_, 0.0);
        for (size_t r = 0; r < rows_; ++r) {
            const double* m = row(r);
            for (size_t c = 0; c < cols_; ++c) y[c] += m[c] * x[r];
        }
        return y;
    }

    // M += scale * u v^T
    void add_outer(const Vec& u, const Vec& v, double scale = 1.0) {
        if (u.size() != rows_ || v.size() != cols_)
            throw DimensionMismatch("outer product size");
        for (size_t r = 0; r < rows_; ++r) {
            double* m = row(r);
            double s = scale * u[r];
            for (size_t c = 0; c < cols_; ++c) m[c] += s * v[c];
        }
    }

    void add_scaled(const Matrix& o, double scale) {
        for (size_t i = 0; i < data_.size(); ++i) data_[i] += scale * o.data_[i];
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

inline double dot(const Vec& u, const Vec& v) {
    double acc = 0.0;
    for (size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
    return acc;
}

inline double norm2(const Vec& u) { return std::sqrt(dot(u, u)); }

inline void axpy(Vec& y, double a, const Vec& x) {
    for (size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

}  // namespace adaptkw
