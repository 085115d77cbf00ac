#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace latprop {

using cplx = std::complex<double>;

// Minimal dense row-major matrix. The crystals handled here are small
// (the infinite directions are treated analytically), so no BLAS.
template <typename T>
class Dense {
public:
    Dense() = default;
    Dense(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static Dense identity(std::size_t n) {
        Dense m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const std::vector<T>& data() const { return a_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

using RealMatrix = Dense<double>;
using ComplexMatrix = Dense<cplx>;

template <typename T>
Dense<T> matmul(const Dense<T>& a, const Dense<T>& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matmul: inner dimensions do not match");
    Dense<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const T ail = a(i, l);
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += ail * b(l, j);
        }
    return c;
}

inline ComplexMatrix adjoint(const ComplexMatrix& m) {
    ComplexMatrix r(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = std::conj(m(i, j));
    return r;
}

template <typename T>
double max_abs_diff(const Dense<T>& a, const Dense<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

} // namespace latprop
