#pragma once

#include <utility>
#include <vector>

#include "latprop/finite_graph.hpp"
#include "latprop/spectral.hpp"

namespace latprop {

// The dispersion-bound constant for dimension d: (c * 2^(-1/3))^d with c
// the Landau constant. sup_norm(t) * t^(d/3) must stay below it (+1e-6).
double dispersion_bound_constant(int d);

struct DecaySample {
    double t = 0.0;
    double sup_norm = 0.0;
    double envelope = 0.0;  // lattice factor (max_nu |J_nu(2t)|)^d
};

struct DecaySeries {
    int d = 1;
    std::vector<DecaySample> samples;
    bool bound_satisfied = true;
    double first_violation_t = 0.0;
};

// sup_norm and lattice envelope over a positive, strictly increasing time
// grid; flags any violation of the dispersion bound. Parallelizes over the
// grid per LATPROP_THREADS.
DecaySeries dispersion_scan(const FiniteGraph& g, const Spectrum& s, int d,
                            const std::vector<double>& t_grid);

struct DecayFit {
    double exponent = 0.0;
    double log_intercept = 0.0;
    double max_residual = 0.0;  // in log space
    int points_used = 0;
};

// Least-squares slope of log y against log t over points with t >= t_min.
// Needs at least 8 such points. Raw oscillating sup-norm series should be
// passed through running_max_envelope first; the lattice envelope column
// carries the t^(-d/3) content directly.
DecayFit fit_decay_exponent(const std::vector<std::pair<double, double>>& series, double t_min);

// Upper staircase of a decaying oscillating series: y_i -> max_{j>=i} y_j.
std::vector<std::pair<double, double>> running_max_envelope(
    const std::vector<std::pair<double, double>>& series);

struct NoDispersionReport {
    int k = 0;
    double bound = 0.0;  // k^(-1/2), the pigeonhole floor for ||psi_t||_inf
    bool pass = true;
    double violation_t = 0.0;
    double min_inf_norm = 0.0;
    double min_inf_norm_t = 0.0;
    double max_return_amplitude = 0.0;  // |psi_t(source)|, recurrence indicator
    double max_return_t = 0.0;
};

// psi_t = e^{itH_G} delta_source stays ||psi_t||_inf >= k^(-1/2) for every
// t (exact inequality; unit l2 mass over k vertices). Also reports the
// maximal return amplitude over the grid.
NoDispersionReport finite_no_dispersion(const FiniteGraph& g, const Spectrum& s,
                                        const std::vector<double>& t_grid, int source = 0);

// Smallest radius R such that every kernel entry with ||nu||_inf > R has
// modulus < epsilon. Stays within 2t + O(t^(1/3)) of the ballistic front.
double lightcone_profile(const FiniteGraph& g, const Spectrum& s, int d, double t, double epsilon);

// n log-spaced points on [lo, hi].
std::vector<double> log_grid(double lo, double hi, int n);

} // namespace latprop
