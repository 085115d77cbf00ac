#include "latprop/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "latprop/bessel.hpp"
#include "latprop/util.hpp"

namespace latprop {

long long LatticeBox::sites() const {
    long long s = 1;
    for (int j = 0; j < d; ++j) s *= side();
    return s;
}

bool LatticeBox::contains(std::span<const long long> n) const {
    if (static_cast<int>(n.size()) != d) return false;
    for (long long c : n)
        if (c < -L || c > L) return false;
    return true;
}

long long LatticeBox::flat_index(std::span<const long long> n, int p) const {
    if (!contains(n)) throw std::invalid_argument("LatticeBox: coordinate outside box");
    if (p < 0 || p >= k) throw std::invalid_argument("LatticeBox: crystal vertex out of range");
    long long layer = 0;
    for (int j = 0; j < d; ++j) layer = layer * side() + (n[j] + L);
    return layer * k + p;
}

void LatticeBox::site(long long flat, std::vector<long long>& n, int& p) const {
    if (flat < 0 || flat >= size()) throw std::invalid_argument("LatticeBox: flat index out of range");
    p = static_cast<int>(flat % k);
    long long layer = flat / k;
    n.assign(static_cast<std::size_t>(d), 0);
    for (int j = d - 1; j >= 0; --j) {
        n[j] = layer % side() - L;
        layer /= side();
    }
}

TruncatedHamiltonian::TruncatedHamiltonian(LatticeBox box, std::vector<double> diag,
                                           std::vector<std::int64_t> offsets,
                                           std::vector<std::int32_t> neighbors,
                                           double bandwidth_bound)
    : box_(box), diag_(std::move(diag)), offsets_(std::move(offsets)),
      neighbors_(std::move(neighbors)), bandwidth_(bandwidth_bound) {}

int TruncatedHamiltonian::row_degree(long long i) const {
    return static_cast<int>(offsets_[i + 1] - offsets_[i]) + 1;
}

int TruncatedHamiltonian::max_row_degree() const {
    int m = 0;
    for (long long i = 0; i < size(); ++i) m = std::max(m, row_degree(i));
    return m;
}

std::span<const std::int32_t> TruncatedHamiltonian::neighbors(long long i) const {
    return {neighbors_.data() + offsets_[i], static_cast<std::size_t>(offsets_[i + 1] - offsets_[i])};
}

void TruncatedHamiltonian::apply(std::span<const double> x, std::span<double> y) const {
    const long long n = size();
    for (long long i = 0; i < n; ++i) {
        double acc = diag_[i] * x[i];
        for (std::int64_t e = offsets_[i]; e < offsets_[i + 1]; ++e) acc += x[neighbors_[e]];
        y[i] = acc;
    }
}

TruncatedHamiltonian assemble_truncated(const FiniteGraph& g, int d, int L, long long max_size) {
    if (d < 1) throw std::invalid_argument("assemble_truncated: dimension must be >= 1");
    if (L < 0) throw std::invalid_argument("assemble_truncated: L must be >= 0");

    const LatticeBox box{d, L, g.size()};
    // overflow guard before materializing anything
    double est = static_cast<double>(g.size());
    for (int j = 0; j < d; ++j) est *= static_cast<double>(box.side());
    if (est > static_cast<double>(max_size))
        throw std::invalid_argument("assemble_truncated: box size " + std::to_string(est) +
                                    " exceeds cap " + std::to_string(max_size));
    const long long n = box.size();
    const int k = g.size();

    std::vector<double> diag(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) diag[i] = g.potential(static_cast<int>(i % k));

    const auto edges = g.edge_list();
    std::vector<std::int64_t> offsets(static_cast<std::size_t>(n) + 1, 0);
    std::vector<long long> coord;
    int p_dummy = 0;

    // two passes: count row degrees, then fill
    auto for_each_neighbor = [&](long long flat, auto&& emit) {
        box.site(flat, coord, p_dummy);
        const int p = p_dummy;
        for (const auto& [a, b] : edges) {
            if (a == p) emit(box.flat_index(coord, b));
            if (b == p) emit(box.flat_index(coord, a));
        }
        for (int j = 0; j < d; ++j) {
            for (int dir : {-1, 1}) {
                coord[j] += dir;
                if (coord[j] >= -L && coord[j] <= L) emit(box.flat_index(coord, p));
                coord[j] -= dir;
            }
        }
    };

    for (long long i = 0; i < n; ++i)
        for_each_neighbor(i, [&](long long) { ++offsets[i + 1]; });
    for (long long i = 0; i < n; ++i) offsets[i + 1] += offsets[i];

    std::vector<std::int32_t> neighbors(static_cast<std::size_t>(offsets[n]));
    std::vector<std::int64_t> cursor(offsets.begin(), offsets.end() - 1);
    for (long long i = 0; i < n; ++i)
        for_each_neighbor(i, [&](long long j) { neighbors[cursor[i]++] = static_cast<std::int32_t>(j); });

    const double bandwidth = 2.0 * d + g.max_degree() + g.max_abs_potential();
    return TruncatedHamiltonian(box, std::move(diag), std::move(offsets), std::move(neighbors),
                                bandwidth);
}

std::vector<cplx> evolve_direct(const TruncatedHamiltonian& h, long long source, double t) {
    const long long n = h.size();
    if (source < 0 || source >= n) throw std::invalid_argument("evolve_direct: source out of range");

    const double R = h.bandwidth_bound();
    const double x = std::abs(t) * R;
    const int degree = static_cast<int>(std::ceil(x)) + 60;
    const BesselRow coeff = bessel_row(degree, x);
    if (std::abs(coeff.values[degree]) + std::abs(coeff.values[degree - 1]) > 1e-13)
        throw std::runtime_error("evolve_direct: Chebyshev expansion did not converge");

    const double flip = t < 0.0 ? -1.0 : 1.0;  // J_m(tR) = (-1)^m J_m(|t|R)

    std::vector<double> out_re(static_cast<std::size_t>(n), 0.0);
    std::vector<double> out_im(static_cast<std::size_t>(n), 0.0);
    std::vector<double> prev(static_cast<std::size_t>(n), 0.0);
    std::vector<double> cur(static_cast<std::size_t>(n), 0.0);
    std::vector<double> next(static_cast<std::size_t>(n), 0.0);

    prev[source] = 1.0;  // T_0(H~) delta
    out_re[source] = coeff.values[0];

    h.apply(prev, cur);  // T_1 = H~ delta
    double parity = flip;
    for (long long i = 0; i < n; ++i) cur[i] /= R;
    {
        const double c1 = 2.0 * parity * coeff.values[1];
        for (long long i = 0; i < n; ++i) out_im[i] += c1 * cur[i];
    }

    for (int m = 2; m <= degree; ++m) {
        h.apply(cur, next);
        for (long long i = 0; i < n; ++i) next[i] = 2.0 * next[i] / R - prev[i];
        parity *= flip;
        const double c = 2.0 * parity * coeff.values[m];
        switch (m % 4) {  // i^m cycles re, im, -re, -im
        case 0:
            for (long long i = 0; i < n; ++i) out_re[i] += c * next[i];
            break;
        case 1:
            for (long long i = 0; i < n; ++i) out_im[i] += c * next[i];
            break;
        case 2:
            for (long long i = 0; i < n; ++i) out_re[i] -= c * next[i];
            break;
        default:
            for (long long i = 0; i < n; ++i) out_im[i] -= c * next[i];
            break;
        }
        std::swap(prev, cur);
        std::swap(cur, next);
    }

    std::vector<cplx> out(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) out[i] = cplx(out_re[i], out_im[i]);
    return out;
}

std::vector<cplx> evolve_dense(const TruncatedHamiltonian& h, long long source, double t) {
    const long long n = h.size();
    if (source < 0 || source >= n) throw std::invalid_argument("evolve_dense: source out of range");
    if (n > 2000) throw std::invalid_argument("evolve_dense: dense path limited to N <= 2000");

    RealMatrix dense(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
        dense(i, i) = h.diagonal(i);
        for (std::int32_t j : h.neighbors(i)) dense(i, j) = 1.0;
    }
    const Spectrum s = eigendecompose(dense);
    std::vector<cplx> out(static_cast<std::size_t>(n), 0.0);
    for (long long m = 0; m < n; ++m) {
        const cplx w = std::polar(1.0, t * s.eigenvalues[m]) * s.eigenvectors(source, m);
        for (long long i = 0; i < n; ++i) out[i] += w * s.eigenvectors(i, m);
    }
    return out;
}

OracleComparison compare_kernel_vs_oracle(const FiniteGraph& g, int d, double t, int L,
                                          int random_probes, std::uint64_t seed) {
    if (L < 0) L = static_cast<int>(std::ceil(2.0 * std::abs(t))) + 25;
    const int k = g.size();
    const Spectrum s = eigendecompose(hamiltonian_matrix(g));
    const TruncatedHamiltonian h = assemble_truncated(g, d, L);
    const LatticeBox& box = h.box();

    std::vector<std::vector<cplx>> columns(static_cast<std::size_t>(k));
    const std::vector<long long> origin(static_cast<std::size_t>(d), 0);
    for (int q = 0; q < k; ++q)
        columns[q] = evolve_direct(h, box.flat_index(origin, q), t);

    std::vector<std::vector<long long>> probes;
    const int axis_bound =
        std::max(0, std::min(static_cast<int>(std::ceil(2.0 * std::abs(t))) + 5, L - 10));
    for (long long m = -axis_bound; m <= axis_bound; ++m) {
        std::vector<long long> nu(static_cast<std::size_t>(d), 0);
        nu[0] = m;
        probes.push_back(std::move(nu));
    }
    std::mt19937_64 rng(seed);
    for (int r = 0; r < random_probes; ++r) {
        std::vector<long long> nu(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) nu[j] = uniform_int(rng, -L, L);
        probes.push_back(std::move(nu));
    }

    OracleComparison rep;
    rep.L = L;
    rep.t = t;
    rep.worst_offset.assign(static_cast<std::size_t>(d), 0);
    for (const auto& nu : probes) {
        for (int p = 0; p < k; ++p) {
            const long long flat = box.flat_index(nu, p);
            for (int q = 0; q < k; ++q) {
                const cplx closed = kernel(g, s, ProductPoint{nu, p}, ProductPoint{origin, q}, t);
                const double err = std::abs(closed - columns[q][flat]);
                ++rep.probes;
                if (err > rep.max_error) {
                    rep.max_error = err;
                    rep.worst_offset = nu;
                    rep.worst_p = p;
                    rep.worst_q = q;
                }
            }
        }
    }
    return rep;
}

cplx kernel_via_fiber_quadrature(const FiniteGraph& g, const Spectrum& s,
                                 std::span<const long long> nu, int p, int q, double t,
                                 int nodes_per_axis) {
    const int d = static_cast<int>(nu.size());
    if (d < 1) throw std::invalid_argument("kernel_via_fiber_quadrature: dimension must be >= 1");
    if (p < 0 || q < 0 || p >= g.size() || q >= g.size())
        throw std::invalid_argument("kernel_via_fiber_quadrature: vertex index out of range");
    long long max_abs = 0;
    for (long long c : nu) max_abs = std::max(max_abs, std::llabs(c));
    const long long needed = 2 * (max_abs + static_cast<long long>(std::ceil(2.0 * std::abs(t)))) + 16;
    if (nodes_per_axis < needed)
        throw std::invalid_argument("kernel_via_fiber_quadrature: nodes_per_axis < " +
                                    std::to_string(needed));

    FiberPoint theta;
    theta.theta.assign(static_cast<std::size_t>(d), 0.0);
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    cplx sum = 0.0;
    while (true) {
        double dot = 0.0;
        for (int j = 0; j < d; ++j) {
            theta.theta[j] = static_cast<double>(idx[j]) / nodes_per_axis;
            dot += theta.theta[j] * static_cast<double>(nu[j]);
        }
        const cplx wave = std::polar(1.0, 2.0 * std::numbers::pi * dot);
        sum += wave * fiber_propagator(s, theta, d, t).m(p, q);

        int j = d - 1;
        while (j >= 0 && ++idx[j] == nodes_per_axis) idx[j--] = 0;
        if (j < 0) break;
    }
    double cells = 1.0;
    for (int j = 0; j < d; ++j) cells *= nodes_per_axis;
    return sum / cells;
}

} // namespace latprop
