#pragma once

#include <vector>

#include "latprop/matrix.hpp"

namespace latprop {

// Uniform envelope |J_nu(t)| <= c * t^(-1/3) over all integer orders.
// The sharp constant is 0.78574687...; stored slightly above so the
// assertion survives rounding at the attaining point t ~ 0.784.
inline constexpr double landau_constant = 0.78575;

// J_nu(t) for integer nu, t >= 0. Negative orders reduce through
// J_{-nu} = (-1)^nu J_nu. Absolute error < 1e-12 for t <= 1e4,
// |nu| <= 2t + 200. Miller's normalized downward recurrence; pure
// power series below t = 0.5.
double bessel_j(int nu, double t);

// All orders 0..nu_max at one argument, from a single downward pass.
struct BesselRow {
    double t = 0.0;
    int nu_max = 0;
    std::vector<double> values;  // values[nu] = J_nu(t)
};
BesselRow bessel_row(int nu_max, double t);

// Trapezoid quadrature of int_0^1 exp(2 pi i nu x) exp(i t cos(2 pi x)) dx,
// an independent route to i^nu J_nu(t). Periodic integrand, so the uniform
// rule converges spectrally; needs nodes >= 2(|nu| + ceil(t)) + 16.
cplx bessel_integral_oracle(int nu, double t, int nodes);

struct LandauReport {
    bool pass = true;
    double max_scaled = 0.0;   // max over grid of m(t) * t^(1/3)
    double max_scaled_t = 0.0;
    int max_scaled_nu = 0;
    double violation_t = 0.0;  // offending point when !pass
    int violation_nu = 0;
};

// For each t in the grid, m(t) = max_{0<=nu<=ceil(t)+40} |J_nu(t)| must
// satisfy m(t) * t^(1/3) <= landau_constant. Reports the grid maximum of
// the scaled envelope (the sharpness indicator).
LandauReport landau_envelope_check(const std::vector<double>& t_grid);

} // namespace latprop
