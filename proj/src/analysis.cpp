#include "latprop/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "latprop/bessel.hpp"
#include "latprop/kernel.hpp"
#include "latprop/util.hpp"

namespace latprop {

double dispersion_bound_constant(int d) {
    if (d < 1) throw std::invalid_argument("dispersion_bound_constant: dimension must be >= 1");
    return std::pow(landau_constant / std::cbrt(2.0), d);
}

DecaySeries dispersion_scan(const FiniteGraph& g, const Spectrum& s, int d,
                            const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw std::invalid_argument("dispersion_scan: empty grid");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > 0.0)) throw std::invalid_argument("dispersion_scan: grid entries must be > 0");
        if (i > 0 && !(t_grid[i] > t_grid[i - 1]))
            throw std::invalid_argument("dispersion_scan: grid must be strictly increasing");
    }

    DecaySeries series;
    series.d = d;
    series.samples.resize(t_grid.size());
    parallel_for(t_grid.size(), scan_thread_count(), [&](std::size_t i) {
        const double t = t_grid[i];
        series.samples[i] = DecaySample{t, sup_norm(g, s, d, t), lattice_envelope(d, t)};
    });

    const double limit = dispersion_bound_constant(d) + 1e-6;
    for (const DecaySample& sample : series.samples) {
        if (sample.sup_norm * std::pow(sample.t, d / 3.0) > limit) {
            series.bound_satisfied = false;
            series.first_violation_t = sample.t;
            break;
        }
    }
    return series;
}

DecayFit fit_decay_exponent(const std::vector<std::pair<double, double>>& series, double t_min) {
    std::vector<std::pair<double, double>> logs;
    for (const auto& [t, y] : series) {
        if (t < t_min) continue;
        if (!(t > 0.0) || !(y > 0.0))
            throw std::invalid_argument("fit_decay_exponent: points must be positive");
        logs.emplace_back(std::log(t), std::log(y));
    }
    if (logs.size() < 8)
        throw std::invalid_argument("fit_decay_exponent: need at least 8 points with t >= t_min");

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : logs) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const auto n = static_cast<double>(logs.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_decay_exponent: degenerate abscissas");
    DecayFit fit;
    fit.exponent = (n * sxy - sx * sy) / denom;
    fit.log_intercept = (sy - fit.exponent * sx) / n;
    fit.points_used = static_cast<int>(logs.size());
    for (const auto& [x, y] : logs)
        fit.max_residual = std::max(fit.max_residual, std::abs(y - fit.log_intercept - fit.exponent * x));
    return fit;
}

std::vector<std::pair<double, double>> running_max_envelope(
    const std::vector<std::pair<double, double>>& series) {
    std::vector<std::pair<double, double>> out = series;
    double running = 0.0;
    for (auto it = out.rbegin(); it != out.rend(); ++it) {
        running = std::max(running, it->second);
        it->second = running;
    }
    return out;
}

NoDispersionReport finite_no_dispersion(const FiniteGraph& g, const Spectrum& s,
                                        const std::vector<double>& t_grid, int source) {
    if (t_grid.empty()) throw std::invalid_argument("finite_no_dispersion: empty grid");
    const int k = g.size();
    if (source < 0 || source >= k)
        throw std::invalid_argument("finite_no_dispersion: source vertex out of range");

    NoDispersionReport rep;
    rep.k = k;
    rep.bound = 1.0 / std::sqrt(static_cast<double>(k));
    rep.min_inf_norm = std::numeric_limits<double>::infinity();

    for (double t : t_grid) {
        double inf_norm = 0.0;
        for (int p = 0; p < k; ++p)
            inf_norm = std::max(inf_norm, std::abs(propagator_entry(s, t, p, source)));
        const double ret = std::abs(propagator_entry(s, t, source, source));

        if (inf_norm < rep.bound && rep.pass) {
            rep.pass = false;
            rep.violation_t = t;
        }
        if (inf_norm < rep.min_inf_norm) {
            rep.min_inf_norm = inf_norm;
            rep.min_inf_norm_t = t;
        }
        if (ret > rep.max_return_amplitude) {
            rep.max_return_amplitude = ret;
            rep.max_return_t = t;
        }
    }
    return rep;
}

double lightcone_profile(const FiniteGraph& g, const Spectrum& s, int d, double t, double epsilon) {
    if (d < 1) throw std::invalid_argument("lightcone_profile: dimension must be >= 1");
    if (!(epsilon > 0.0)) throw std::invalid_argument("lightcone_profile: epsilon must be > 0");
    if (!(t >= 0.0)) throw std::invalid_argument("lightcone_profile: time must be >= 0");

    const PropagatorMatrix prop = finite_propagator(s, t);
    (void)g;
    double max_entry = 0.0;
    for (const cplx& v : prop.m.data()) max_entry = std::max(max_entry, std::abs(v));

    const double arg = 2.0 * t;
    int nu_hi = static_cast<int>(std::ceil(arg)) + 40;
    const int nu_cap = static_cast<int>(std::ceil(arg)) + 2000;
    std::vector<double> tail;  // tail[nu] = max_{m >= nu} |J_m(arg)|
    while (true) {
        const BesselRow row = bessel_row(nu_hi, arg);
        tail.assign(row.values.size(), 0.0);
        double running = 0.0;
        for (int nu = nu_hi; nu >= 0; --nu) {
            running = std::max(running, std::abs(row.values[nu]));
            tail[nu] = running;
        }
        // top of the band must itself be resolved below epsilon, else extend
        if (tail[nu_hi] < epsilon || nu_hi >= nu_cap) break;
        nu_hi += 40;
    }

    const double global_max = tail[0];
    const double cross = std::pow(global_max, d - 1) * max_entry;
    for (int radius = 0; radius < nu_hi; ++radius)
        if (tail[radius + 1] * cross < epsilon) return static_cast<double>(radius);
    return static_cast<double>(nu_hi);
}

std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("log_grid: need 0 < lo < hi");
    if (n < 2) throw std::invalid_argument("log_grid: need at least 2 points");
    std::vector<double> grid(static_cast<std::size_t>(n));
    const double ratio = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) grid[i] = lo * std::exp(ratio * i);
    grid.back() = hi;
    return grid;
}

} // namespace latprop
