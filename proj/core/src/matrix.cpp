#include "nlc/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace nlc {

std::vector<double> Matrix::multiply(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != cols_) {
        throw std::invalid_argument("Matrix::multiply: dimension mismatch");
    }
    std::vector<double> y(rows_, 0.0);
    for (int r = 0; r < rows_; ++r) {
        double acc = 0.0;
        const double* row = data_.data() + static_cast<std::size_t>(r) * cols_;
        for (int c = 0; c < cols_; ++c) acc += row[c] * x[c];
        y[r] = acc;
    }
    return y;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::fabs(v));
    return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    }
    double m = 0.0;
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < a.cols(); ++c) {
            m = std::max(m, std::fabs(a(r, c) - b(r, c)));
        }
    }
    return m;
}

}  // namespace nlc
