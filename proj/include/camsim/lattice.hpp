#ifndef CAMSIM_LATTICE_HPP
#define CAMSIM_LATTICE_HPP

#include <vector>

namespace camsim {

// Two-mode intracavity lattice u(x) = sin^2(k1 x) + sin^2(k2 x).
struct LatticeGeometry {
    double k1 = 0.0;  // 1/m, k1 > k2 > 0
    double k2 = 0.0;
    double length = 0.0;  // m
    int q = 0;            // mode separation in free spectral ranges, informational
};

struct Intensity {
    double u = 0.0;
    double du = 0.0;
    double d2u = 0.0;
};

// Stationary point of the combined intensity with the site factors that enter
// the coupling (theta), trap frequency (zeta) and diffusion (xi).
struct WellSite {
    double x = 0.0;
    double u = 0.0;
    double theta = 0.0;  // u_1'(x)/k1, signed
    double zeta = 0.0;   // u''(x)/k1^2, signed (< 0 at intensity maxima)
    double xi = 0.0;     // [2 - geometry_factor*u]/theta^2
    bool is_intensity_max = false;
};

enum class SiteCriterion {
    coupling_efficiency,  // maximize theta^2/xi over intensity maxima
    max_slope,            // maximize |theta| over intensity maxima
};

Intensity intensity(double x, const LatticeGeometry& geom);

// All stationary points of u in (0, L), located by sign-change bracketing on a
// grid of >= 32 points per optical period followed by bisection and a Newton
// polish. geometry_factor is the transition-dependent constant in xi.
std::vector<WellSite> find_wells(const LatticeGeometry& geom, double geometry_factor = 0.8,
                                 int points_per_period = 32);

WellSite best_site(const std::vector<WellSite>& sites,
                   SiteCriterion criterion = SiteCriterion::coupling_efficiency);

}  // namespace camsim

#endif
