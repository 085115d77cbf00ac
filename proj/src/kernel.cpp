#include "latprop/kernel.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "latprop/bessel.hpp"

namespace latprop {

cplx unit_imag_power(long long nu) {
    switch (((nu % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
}

cplx lattice_amplitude(long long nu, double t) {
    double arg = 2.0 * t;
    long long n = std::llabs(nu);
    double sign = 1.0;
    if (nu < 0 && (n & 1)) sign = -sign;  // J_{-n} = (-1)^n J_n
    if (arg < 0.0) {
        arg = -arg;
        if (n & 1) sign = -sign;          // J_n(-x) = (-1)^n J_n(x)
    }
    // far beyond the turning point the value is below double-precision range
    if (static_cast<double>(n) > std::ceil(arg) + 1200.0 + 0.5 * arg) return {0.0, 0.0};
    return unit_imag_power(nu) * (sign * bessel_j(static_cast<int>(n), arg));
}

double lattice_envelope(int d, double t) {
    if (d < 1) throw std::invalid_argument("lattice_envelope: dimension must be >= 1");
    const double arg = std::abs(2.0 * t);
    const int nu_max = static_cast<int>(std::ceil(arg)) + 40;
    const BesselRow row = bessel_row(nu_max, arg);
    double m = 0.0;
    for (double v : row.values) m = std::max(m, std::abs(v));
    return std::pow(m, d);
}

namespace {

void check_point(const FiniteGraph& g, const ProductPoint& x, const char* who) {
    if (x.p < 0 || x.p >= g.size())
        throw std::invalid_argument(std::string(who) + ": crystal vertex index out of range");
    if (x.n.empty())
        throw std::invalid_argument(std::string(who) + ": lattice dimension must be >= 1");
}

} // namespace

cplx kernel(const FiniteGraph& g, const Spectrum& s, const ProductPoint& x,
            const ProductPoint& y, double t) {
    check_point(g, x, "kernel");
    check_point(g, y, "kernel");
    if (x.n.size() != y.n.size())
        throw std::invalid_argument("kernel: points have mismatched lattice dimensions");
    cplx factor = 1.0;
    for (std::size_t j = 0; j < x.n.size(); ++j) factor *= lattice_amplitude(x.n[j] - y.n[j], t);
    return factor * propagator_entry(s, t, x.p, y.p);
}

KernelBlock kernel_block(const FiniteGraph& g, const Spectrum& s,
                         std::vector<long long> nu, double t) {
    if (nu.empty()) throw std::invalid_argument("kernel_block: lattice dimension must be >= 1");
    cplx factor = 1.0;
    for (long long component : nu) factor *= lattice_amplitude(component, t);
    PropagatorMatrix prop = finite_propagator(s, t);
    const std::size_t k = prop.m.rows();
    KernelBlock out{std::move(nu), t, ComplexMatrix(k, k)};
    for (std::size_t p = 0; p < k; ++p)
        for (std::size_t q = 0; q < k; ++q) out.block(p, q) = factor * prop.m(p, q);
    (void)g;
    return out;
}

double row_mass(const FiniteGraph& g, const Spectrum& s, int d, double t, int nu_max) {
    if (d < 1) throw std::invalid_argument("row_mass: dimension must be >= 1");
    const double arg = std::abs(2.0 * t);
    const int needed = static_cast<int>(std::ceil(arg)) + 40;
    if (nu_max < needed)
        throw std::invalid_argument("row_mass: nu_max below ceil(2t)+40 = " + std::to_string(needed));
    (void)g;

    const BesselRow row = bessel_row(nu_max, arg);
    double lattice_sum = row.values[0] * row.values[0];
    for (int nu = 1; nu <= nu_max; ++nu) lattice_sum += 2.0 * row.values[nu] * row.values[nu];

    const PropagatorMatrix prop = finite_propagator(s, t);
    double crystal_sum = 0.0;
    for (std::size_t q = 0; q < prop.m.cols(); ++q) crystal_sum += std::norm(prop.m(0, q));

    return std::pow(lattice_sum, d) * crystal_sum;
}

double sup_norm(const FiniteGraph& g, const Spectrum& s, int d, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("sup_norm: time must be > 0");
    (void)g;
    const PropagatorMatrix prop = finite_propagator(s, t);
    double max_entry = 0.0;
    for (const cplx& v : prop.m.data()) max_entry = std::max(max_entry, std::abs(v));
    return lattice_envelope(d, t) * max_entry;
}

} // namespace latprop
