#include "latprop/bessel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace latprop {

namespace {

// Ascending series sum_m (-1)^m (t/2)^(nu+2m) / (m! (nu+m)!), for t < 0.5
// where each ratio term is < 1/64 and a few dozen terms reach 1e-17.
double series_j(int nu, double t) {
    double lead = 1.0;
    for (int i = 1; i <= nu; ++i) {
        lead *= 0.5 * t / i;
        if (lead == 0.0) return 0.0;  // underflow: order far above argument
    }
    const double x = -0.25 * t * t;
    double term = lead, sum = lead;
    for (int m = 1; m <= 60; ++m) {
        term *= x / (static_cast<double>(m) * (nu + m));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
    }
    return sum;
}

} // namespace

BesselRow bessel_row(int nu_max, double t) {
    if (nu_max < 0) throw std::invalid_argument("bessel_row: nu_max must be >= 0");
    if (!(t >= 0.0)) throw std::invalid_argument("bessel_row: argument must be >= 0");

    BesselRow row{t, nu_max, std::vector<double>(static_cast<std::size_t>(nu_max) + 1, 0.0)};

    if (t == 0.0) {
        row.values[0] = 1.0;
        return row;
    }
    if (t < 0.5) {
        for (int nu = 0; nu <= nu_max; ++nu) row.values[nu] = series_j(nu, t);
        return row;
    }

    // Downward recurrence must start above the turning point nu ~ t, and the
    // sum-rule normalization J_0 + 2 sum J_{2k} = 1 needs the full band, so
    // the internal top order is at least ceil(t) whatever was requested.
    // Seeding contamination decays like exp(-1.2 (margin/t^(1/3))^(3/2)),
    // so the margin needs the Airy-width term ~10 t^(1/3) on top of the
    // sqrt term to keep absolute error below 1e-12 up to t = 1e4.
    const int nu_top = std::max(nu_max, static_cast<int>(std::ceil(t)));
    const int start = nu_top + std::max({20,
                                         static_cast<int>(std::ceil(1.5 * std::sqrt(t))) + 20,
                                         static_cast<int>(std::ceil(10.0 * std::cbrt(t))) + 20});

    double jp = 0.0;   // J~_{nu+1}
    double jc = 1e-30; // J~_{nu}
    double norm = 0.0; // J~_0 + 2 sum_{even nu >= 2} J~_nu
    for (int nu = start; nu >= 0; --nu) {
        if (nu <= nu_max) row.values[nu] = jc;
        if (nu == 0)
            norm += jc;
        else if (nu % 2 == 0)
            norm += 2.0 * jc;

        if (nu > 0) {
            const double jm = (2.0 * nu / t) * jc - jp;
            jp = jc;
            jc = jm;
            if (std::abs(jc) > 1e250) {
                const double scale = 1e-250;
                jc *= scale;
                jp *= scale;
                norm *= scale;
                for (int m = nu; m <= nu_max; ++m) row.values[m] *= scale;
            }
        }
    }
    for (double& v : row.values) v /= norm;
    return row;
}

double bessel_j(int nu, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("bessel_j: argument must be >= 0");
    double sign = 1.0;
    if (nu < 0) {
        if (nu % 2 != 0) sign = -1.0;
        nu = -nu;
    }
    if (t == 0.0) return nu == 0 ? 1.0 : 0.0;
    if (t < 0.5) return sign * series_j(nu, t);
    const BesselRow row = bessel_row(nu, t);
    return sign * row.values[static_cast<std::size_t>(nu)];
}

cplx bessel_integral_oracle(int nu, double t, int nodes) {
    if (!(t >= 0.0)) throw std::invalid_argument("bessel_integral_oracle: argument must be >= 0");
    const int needed = 2 * (std::abs(nu) + static_cast<int>(std::ceil(t))) + 16;
    if (nodes < needed)
        throw std::invalid_argument("bessel_integral_oracle: nodes < " + std::to_string(needed));
    cplx sum = 0.0;
    for (int j = 0; j < nodes; ++j) {
        const double x = static_cast<double>(j) / nodes;
        const double phase = 2.0 * std::numbers::pi * nu * x + t * std::cos(2.0 * std::numbers::pi * x);
        sum += cplx(std::cos(phase), std::sin(phase));
    }
    return sum / static_cast<double>(nodes);
}

LandauReport landau_envelope_check(const std::vector<double>& t_grid) {
    LandauReport rep;
    for (double t : t_grid) {
        if (!(t > 0.0))
            throw std::invalid_argument("landau_envelope_check: grid entries must be > 0");
        const int nu_max = static_cast<int>(std::ceil(t)) + 40;
        const BesselRow row = bessel_row(nu_max, t);
        double m = 0.0;
        int arg = 0;
        for (int nu = 0; nu <= nu_max; ++nu) {
            const double a = std::abs(row.values[nu]);
            if (a > m) {
                m = a;
                arg = nu;
            }
        }
        const double scaled = m * std::cbrt(t);
        if (scaled > rep.max_scaled) {
            rep.max_scaled = scaled;
            rep.max_scaled_t = t;
            rep.max_scaled_nu = arg;
        }
        if (scaled > landau_constant && rep.pass) {
            rep.pass = false;
            rep.violation_t = t;
            rep.violation_nu = arg;
        }
    }
    return rep;
}

} // namespace latprop
