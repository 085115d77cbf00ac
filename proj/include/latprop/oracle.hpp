#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "latprop/finite_graph.hpp"
#include "latprop/kernel.hpp"
#include "latprop/matrix.hpp"
#include "latprop/spectral.hpp"

namespace latprop {

// Finite chunk [-L, L]^d of the lattice, one crystal copy per site.
struct LatticeBox {
    int d = 1;
    int L = 0;
    int k = 1;

    long long side() const { return 2LL * L + 1; }
    long long sites() const;                 // (2L+1)^d
    long long size() const { return sites() * k; }

    bool contains(std::span<const long long> n) const;
    long long flat_index(std::span<const long long> n, int p) const;
    void site(long long flat, std::vector<long long>& n, int& p) const;
};

// Sparse symmetric restriction of the product Hamiltonian to the box:
// open boundary, crystal edges inside each layer, potential copied across
// layers. Off-diagonal entries are all 1, so only indices are stored.
class TruncatedHamiltonian {
public:
    TruncatedHamiltonian(LatticeBox box, std::vector<double> diag,
                         std::vector<std::int64_t> offsets, std::vector<std::int32_t> neighbors,
                         double bandwidth_bound);

    const LatticeBox& box() const { return box_; }
    long long size() const { return static_cast<long long>(diag_.size()); }
    double bandwidth_bound() const { return bandwidth_; }  // Gershgorin radius

    int row_degree(long long i) const;  // neighbor count + 1 for the diagonal
    int max_row_degree() const;
    double diagonal(long long i) const { return diag_[static_cast<std::size_t>(i)]; }
    std::span<const std::int32_t> neighbors(long long i) const;
    long long edge_count() const { return static_cast<long long>(neighbors_.size()) / 2; }

    void apply(std::span<const double> x, std::span<double> y) const;  // y = H x

private:
    LatticeBox box_;
    std::vector<double> diag_;
    std::vector<std::int64_t> offsets_;
    std::vector<std::int32_t> neighbors_;
    double bandwidth_;
};

TruncatedHamiltonian assemble_truncated(const FiniteGraph& g, int d, int L,
                                        long long max_size = 2'000'000);

// exp(i t H) delta_source by Chebyshev expansion: H rescaled by the
// Gershgorin bound R, coefficients (2 - delta_m0) i^m J_m(tR), degree
// ceil(R|t|) + 60. Spectrally accurate; only sparse mat-vec products.
std::vector<cplx> evolve_direct(const TruncatedHamiltonian& h, long long source, double t);

// Second, independent evolution path: dense eigendecomposition (N <= 2000).
std::vector<cplx> evolve_dense(const TruncatedHamiltonian& h, long long source, double t);

struct OracleComparison {
    double max_error = 0.0;
    std::vector<long long> worst_offset;
    int worst_p = 0, worst_q = 0;
    int probes = 0;
    int L = 0;
    double t = 0.0;
};

// Closed-form kernel vs direct evolution on the truncated lattice. Probes
// every offset ||nu||_inf <= min(ceil(2|t|)+5, L-10) along the first axis
// plus `random_probes` random offsets in the box, for all vertex pairs.
// Default L = ceil(2|t|) + 25 keeps the ballistic front off the boundary.
OracleComparison compare_kernel_vs_oracle(const FiniteGraph& g, int d, double t, int L = -1,
                                          int random_probes = 50, std::uint64_t seed = 1);

// Fiber-integral route: d-dimensional uniform trapezoid quadrature of
// int_{[0,1)^d} exp(2 pi i theta.nu) e^{itH(theta)}(p,q) dtheta over
// fiber_propagator evaluations. Needs nodes >= 2(max|nu_j| + ceil(2|t|)) + 16
// per axis.
cplx kernel_via_fiber_quadrature(const FiniteGraph& g, const Spectrum& s,
                                 std::span<const long long> nu, int p, int q, double t,
                                 int nodes_per_axis);

} // namespace latprop
