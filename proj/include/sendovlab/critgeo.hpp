#pragma once

#include <vector>

#include "sendovlab/roots.hpp"

namespace sendovlab {

/// Distance from the zero w0 to the nearest zero of p', plus the set of
/// critical points that realize it (the essential ones, on the critical
/// circle).
struct CriticalRadiusReport {
    double rho = 0.0;
    std::vector<cplx> essential; // lexicographic (re, im), deduplicated
    RootList all_critical;
};

struct GaussLucasReport {
    bool inside = false;
    double worst_signed_distance = 0.0; // negative means inside the hull
    cplx worst_point;
};

struct SendovRow {
    cplx zero;
    cplx nearest_critical;
    double distance = 0.0;
};

struct SendovReport {
    std::vector<SendovRow> per_zero;
    double max_distance = 0.0;
    bool passes = false;
};

enum class DiskPosition { Inside, OnCircle, Outside };

struct GrrWitness {
    cplx zeta;
    double abs_two_zeta_minus_one = 0.0;
    DiskPosition position = DiskPosition::Outside;
};

/// Outcome of the Goodman-Rahman-Ratti / Schmeisser disk test: when p(1)=0,
/// some critical point must satisfy |2z-1| <= 1, and one lies in the open
/// disk unless every critical point sits on the circle |2z-1| = 1.
struct GrrReport {
    bool has_closed_disk_zero = false;
    bool has_open_disk_zero = false;
    bool all_on_circle = false;
    std::vector<GrrWitness> witnesses;
};

struct CritGeoOptions {
    RootFindOptions rootfind;
    double zero_tol = 1e-8;      // "is w0 a zero of p", scaled by coeff magnitude
    double essential_band = 1e-9; // relative width of the critical circle band
    double hull_tol = 1e-9;      // Gauss-Lucas signed-distance tolerance, scaled
    double disk_tol = 1e-9;      // unit-disk membership and |2z-1| bands
};

/// Roots of p'; requires degree >= 2.
RootList critical_points(const Polynomial& p, const CritGeoOptions& opts = {});

CriticalRadiusReport critical_radius(const Polynomial& p, cplx w0,
                                     const CritGeoOptions& opts = {});

GaussLucasReport gauss_lucas_check(const Polynomial& p, const CritGeoOptions& opts = {});

SendovReport sendov_check(const Polynomial& p, bool assume_unit_disk = true,
                          const CritGeoOptions& opts = {});

GrrReport grr_disk_check(const Polynomial& p, const CritGeoOptions& opts = {});

/// Convex hull by monotone chain, counterclockwise, no interior points.
std::vector<cplx> convex_hull(std::vector<cplx> points);

/// Signed distance from x to the hull boundary: negative inside, positive
/// outside.  Degenerate hulls (segment, point) give plain distance >= 0.
double hull_signed_distance(const std::vector<cplx>& hull, cplx x);

} // namespace sendovlab
