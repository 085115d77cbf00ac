#include "latprop/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace latprop {

namespace {

double frobenius(const RealMatrix& a) {
    double s = 0.0;
    for (double v : a.data()) s += v * v;
    return std::sqrt(s);
}

double off_diagonal_frobenius(const RealMatrix& a) {
    double s = 0.0;
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

} // namespace

Spectrum eigendecompose(const RealMatrix& h) {
    const std::size_t n = h.rows();
    if (h.cols() != n) throw std::invalid_argument("eigendecompose: matrix not square");
    if (n == 0) throw std::invalid_argument("eigendecompose: empty matrix");

    double scale = 0.0;
    for (double v : h.data()) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(h(i, j) - h(j, i)) > 1e-12 * std::max(1.0, scale))
                throw std::invalid_argument("eigendecompose: matrix not symmetric");

    RealMatrix a = h;
    RealMatrix v = RealMatrix::identity(n);

    const double norm_h = frobenius(h);
    const double tol = 1e-13 * norm_h;

    constexpr int sweep_limit = 100;
    int sweep = 0;
    for (; sweep < sweep_limit; ++sweep) {
        if (off_diagonal_frobenius(a) <= tol) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                // smaller-magnitude root of t^2 + 2 tau t - 1 = 0
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    const double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(p, i) = a(i, p);
                    a(i, q) = s * aip + c * aiq;
                    a(q, i) = a(i, q);
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
    }
    if (sweep == sweep_limit && off_diagonal_frobenius(a) > tol)
        throw std::runtime_error("eigendecompose: Jacobi sweep limit reached without convergence");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&a](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    Spectrum spec;
    spec.eigenvalues.resize(n);
    spec.eigenvectors = RealMatrix(n, n);
    for (std::size_t s = 0; s < n; ++s) {
        spec.eigenvalues[s] = a(order[s], order[s]);
        for (std::size_t i = 0; i < n; ++i) spec.eigenvectors(i, s) = v(i, order[s]);
    }
    return spec;
}

PropagatorMatrix finite_propagator(const Spectrum& s, double t) {
    const std::size_t n = s.eigenvalues.size();
    PropagatorMatrix out{ComplexMatrix(n, n), t};
    for (std::size_t m = 0; m < n; ++m) {
        const cplx phase = std::polar(1.0, t * s.eigenvalues[m]);
        for (std::size_t p = 0; p < n; ++p) {
            const cplx w = phase * s.eigenvectors(p, m);
            for (std::size_t q = 0; q < n; ++q) out.m(p, q) += w * s.eigenvectors(q, m);
        }
    }
    return out;
}

cplx propagator_entry(const Spectrum& s, double t, int p, int q) {
    const int n = s.size();
    if (p < 0 || q < 0 || p >= n || q >= n)
        throw std::invalid_argument("propagator_entry: vertex index out of range");
    cplx v = 0.0;
    for (int m = 0; m < n; ++m)
        v += std::polar(1.0, t * s.eigenvalues[m]) * s.eigenvectors(p, m) * s.eigenvectors(q, m);
    return v;
}

namespace {

double fiber_shift(const FiberPoint& theta, int d) {
    if (d < 1) throw std::invalid_argument("fiber: dimension must be >= 1");
    if (static_cast<int>(theta.theta.size()) != d)
        throw std::invalid_argument("fiber: theta length != d");
    double shift = 0.0;
    for (double th : theta.theta) {
        if (!(th >= 0.0 && th < 1.0))
            throw std::invalid_argument("fiber: theta components must lie in [0,1)");
        shift += 2.0 * std::cos(2.0 * std::numbers::pi * th);
    }
    return shift;
}

} // namespace

RealMatrix fiber_operator(const FiniteGraph& g, const FiberPoint& theta, int d) {
    const double shift = fiber_shift(theta, d);
    RealMatrix h = hamiltonian_matrix(g);
    for (std::size_t p = 0; p < h.rows(); ++p) h(p, p) += shift;
    return h;
}

PropagatorMatrix fiber_propagator(const Spectrum& s, const FiberPoint& theta, int d, double t) {
    const double shift = fiber_shift(theta, d);
    PropagatorMatrix out = finite_propagator(s, t);
    const cplx phase = std::polar(1.0, t * shift);
    for (std::size_t p = 0; p < out.m.rows(); ++p)
        for (std::size_t q = 0; q < out.m.cols(); ++q) out.m(p, q) *= phase;
    return out;
}

} // namespace latprop
