#pragma once

#include <vector>

#include "latprop/finite_graph.hpp"
#include "latprop/matrix.hpp"

namespace latprop {

// Eigendecomposition of the crystal Hamiltonian. Eigenvalues ascending,
// column s of `eigenvectors` the unit eigenvector for eigenvalues[s].
struct Spectrum {
    std::vector<double> eigenvalues;
    RealMatrix eigenvectors;

    int size() const { return static_cast<int>(eigenvalues.size()); }
};

// Quasimomentum, componentwise in [0,1).
struct FiberPoint {
    std::vector<double> theta;
};

// Unitary symmetric k x k propagator at a fixed time.
struct PropagatorMatrix {
    ComplexMatrix m;
    double time = 0.0;
};

// Cyclic Jacobi rotations; converges when the off-diagonal Frobenius norm
// drops below 1e-13 * ||H||_F, hard sweep limit 100.
Spectrum eigendecompose(const RealMatrix& h);

// M(p,q) = sum_s exp(i t mu_s) phi_s(p) phi_s(q).
PropagatorMatrix finite_propagator(const Spectrum& s, double t);

// One complex entry of the propagator, M(p,q) as above.
cplx propagator_entry(const Spectrum& s, double t, int p, int q);

// H(theta) = (sum_j 2 cos(2 pi theta_j)) Id + H_G.
RealMatrix fiber_operator(const FiniteGraph& g, const FiberPoint& theta, int d);

// exp(i t H(theta)) = exp(2 i t sum_j cos(2 pi theta_j)) * exp(i t H_G).
PropagatorMatrix fiber_propagator(const Spectrum& s, const FiberPoint& theta, int d, double t);

} // namespace latprop
