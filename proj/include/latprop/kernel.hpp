#pragma once

#include <vector>

#include "latprop/finite_graph.hpp"
#include "latprop/matrix.hpp"
#include "latprop/spectral.hpp"

namespace latprop {

// Vertex of Z^d x G_F: lattice coordinate n plus crystal vertex p.
struct ProductPoint {
    std::vector<long long> n;
    int p = 0;
};

// Propagator block at fixed lattice offset: the common scalar lattice
// factor prod_j i^{nu_j} J_{nu_j}(2t) times the finite propagator.
struct KernelBlock {
    std::vector<long long> nu;
    double t = 0.0;
    ComplexMatrix block;
};

// i^nu, exact (mod-4 table).
cplx unit_imag_power(long long nu);

// One-dimensional free-lattice amplitude i^nu J_nu(2t). Negative t and
// negative nu reduce by parity, so time reversal conjugates exactly.
cplx lattice_amplitude(long long nu, double t);

// (max_nu |J_nu(2t)|)^d over the computable band |nu| <= ceil(2|t|)+40;
// the excluded tail is below 1e-15.
double lattice_envelope(int d, double t);

// Propagator matrix element between two product vertices.
cplx kernel(const FiniteGraph& g, const Spectrum& s, const ProductPoint& x,
            const ProductPoint& y, double t);

KernelBlock kernel_block(const FiniteGraph& g, const Spectrum& s,
                         std::vector<long long> nu, double t);

// Total |kernel|^2 from source (0, 0) over offsets ||nu||_inf <= nu_max and
// all target vertices. Unitarity puts it in (1 - 1e-8, 1 + 1e-8] once
// nu_max >= ceil(2|t|) + 40 (enforced).
double row_mass(const FiniteGraph& g, const Spectrum& s, int d, double t, int nu_max);

// sup_{x,y} |kernel(x,y,t)| = lattice_envelope(d,t) * max_{p,q} |e^{itH_G}(p,q)|.
double sup_norm(const FiniteGraph& g, const Spectrum& s, int d, double t);

} // namespace latprop
