#include "camsim/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace camsim {

namespace {

void check_geometry(const LatticeGeometry& g) {
    if (!(g.k1 > 0.0) || !(g.k2 > 0.0) || !(g.length > 0.0))
        throw std::invalid_argument("lattice: k1, k2, length must be > 0");
    if (g.k1 <= g.k2) throw std::invalid_argument("lattice: require k1 > k2");
}

}  // namespace

Intensity intensity(double x, const LatticeGeometry& g) {
    check_geometry(g);
    if (x < 0.0 || x > g.length) throw std::invalid_argument("intensity: x outside [0, L]");
    const double s1 = std::sin(g.k1 * x), s2 = std::sin(g.k2 * x);
    Intensity out;
    out.u = s1 * s1 + s2 * s2;
    out.du = g.k1 * std::sin(2.0 * g.k1 * x) + g.k2 * std::sin(2.0 * g.k2 * x);
    out.d2u = 2.0 * g.k1 * g.k1 * std::cos(2.0 * g.k1 * x) +
              2.0 * g.k2 * g.k2 * std::cos(2.0 * g.k2 * x);
    return out;
}

std::vector<WellSite> find_wells(const LatticeGeometry& g, double geometry_factor,
                                 int points_per_period) {
    check_geometry(g);
    if (g.k1 - g.k2 <= 0.0) throw std::invalid_argument("find_wells: degenerate geometry k1 = k2");
    if (points_per_period < 32) points_per_period = 32;

    auto slope = [&](double x) {
        return g.k1 * std::sin(2.0 * g.k1 * x) + g.k2 * std::sin(2.0 * g.k2 * x);
    };
    auto curvature = [&](double x) {
        return 2.0 * g.k1 * g.k1 * std::cos(2.0 * g.k1 * x) +
               2.0 * g.k2 * g.k2 * std::cos(2.0 * g.k2 * x);
    };

    const double period = M_PI / g.k1;
    const long n_cells = std::lround(std::ceil(g.length / period * points_per_period));
    const double dx = g.length / static_cast<double>(n_cells);
    const double slope_tol = 1e-12 * g.k1;

    std::vector<WellSite> wells;
    double x_prev = dx;  // skip the boundary node at x = 0
    double f_prev = slope(x_prev);
    for (long i = 2; i < n_cells; ++i) {
        const double x_cur = i * dx;
        const double f_cur = slope(x_cur);
        if ((f_prev < 0.0) != (f_cur < 0.0) || f_prev == 0.0) {
            double lo = x_prev, hi = x_cur, f_lo = f_prev;
            for (int it = 0; it < 80 && hi - lo > 1e-18 * g.length; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double f_mid = slope(mid);
                if ((f_lo < 0.0) != (f_mid < 0.0)) {
                    hi = mid;
                } else {
                    lo = mid;
                    f_lo = f_mid;
                }
            }
            double x = 0.5 * (lo + hi);
            for (int it = 0; it < 4; ++it) {
                const double d2 = curvature(x);
                if (d2 == 0.0) break;
                const double step = slope(x) / d2;
                if (!std::isfinite(step)) break;
                x -= step;
            }
            if (x <= 0.0 || x >= g.length || std::abs(slope(x)) > slope_tol) {
                x = 0.5 * (lo + hi);  // Newton wandered; keep the bisection point
            }
            if (x > 0.0 && x < g.length) {
                const Intensity v = intensity(x, g);
                WellSite w;
                w.x = x;
                w.u = v.u;
                w.theta = std::sin(2.0 * g.k1 * x);
                w.zeta = v.d2u / (g.k1 * g.k1);
                const double t2 = w.theta * w.theta;
                w.xi = (t2 > 0.0) ? (2.0 - geometry_factor * v.u) / t2
                                  : std::numeric_limits<double>::infinity();
                w.is_intensity_max = v.d2u < 0.0;
                if (wells.empty() || std::abs(wells.back().x - x) > 0.25 * dx) wells.push_back(w);
            }
        }
        x_prev = x_cur;
        f_prev = f_cur;
    }
    return wells;
}

WellSite best_site(const std::vector<WellSite>& sites, SiteCriterion criterion) {
    if (sites.empty()) throw std::invalid_argument("best_site: empty site list");
    const WellSite* best = nullptr;
    double best_score = -std::numeric_limits<double>::infinity();
    for (const auto& s : sites) {
        if (!s.is_intensity_max) continue;
        const double score = (criterion == SiteCriterion::coupling_efficiency)
                                 ? s.theta * s.theta / s.xi
                                 : std::abs(s.theta);
        if (score > best_score) {  // ties keep the smaller x (first in position order)
            best_score = score;
            best = &s;
        }
    }
    if (!best) throw std::invalid_argument("best_site: no intensity maxima in list");
    return *best;
}

}  // namespace camsim
