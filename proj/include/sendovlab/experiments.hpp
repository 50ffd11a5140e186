#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sendovlab/critgeo.hpp"
#include "sendovlab/path.hpp"
#include "sendovlab/polynomial.hpp"
#include "sendovlab/tracker.hpp"

namespace sendovlab {

// The transfer factor in closed form: (q'/q)(zeta_start) * (q/q')(zeta_end).
// Along a tracked branch it equals (zeta(u) - u) / (zeta_start - u_start).
cplx f_closed(const Polynomial& q, cplx zeta_start, cplx zeta_end, double floor_rel = 1e-12);

struct QuadratureOptions {
    double log_tol = 1e-8;      // stop refining when the accumulated log moves less
    int max_levels = 12;        // each level halves every interval
    double max_increment = 1.5; // per-interval |d log| cap, forces refinement (< pi/2)
    TrackOptions track;
};

// exp of the path integral of zeta'(v)/(zeta(v)-v) + (q'/q)(zeta(v)) dv,
// computed by per-interval Gauss-Legendre over the tracked trajectory with
// Newton re-correction at every node and global refinement until the log
// settles.
cplx f_integral(const Polynomial& q, const Path& path, cplx zeta_start,
                const QuadratureOptions& opts = {});

struct IdentityCheckReport {
    cplx f_closed_value{0.0, 0.0};
    cplx f_integral_value{0.0, 0.0};
    double abs_discrepancy = 0.0; // | |f_integral| - |f_closed| | / |f_closed|
    double qf_residual = 0.0;     // relative error of |zeta(u)-u| = |zeta-z1| |f|
    cplx z1{0.0, 0.0};
    cplx zeta_start{0.0, 0.0};
    cplx zeta_end{0.0, 0.0};
    cplx u_end{0.0, 0.0};
};

// Track the designated critical point of p = (z-z1) q from z1 along the path
// and compare both computations of f, plus the distance identity they feed.
// z1_index and zeta_index select from the lexicographically sorted roots of p
// and critical points of p respectively; the path must start at z1.
IdentityCheckReport verify_identity(const Polynomial& p, int z1_index, int zeta_index,
                                    const Path& path, const QuadratureOptions& opts = {});

struct BlowupRow {
    double r = 0.0;
    std::vector<double> abs_f; // per start sheet, ordered like start_fiber
    double min_abs_f = 0.0;
};

struct BlowupScan {
    std::vector<cplx> start_fiber; // critical points of p, lex sorted
    std::vector<BlowupRow> rows;
    std::optional<double> crossing_r; // first listed r with min |f| > 1
};

// Continue all critical points of p from z1 to w0 and then outward along the
// ray r*w0 through the given radii, recording |f| per sheet at every radius.
BlowupScan blowup_scan(const Polynomial& p, int z1_index, cplx w0,
                       const std::vector<double>& r_list, const TrackOptions& topts = {});

struct BoundaryComparison {
    double rho_interior = 0.0; // critical radius of p at the designated interior zero
    double rho_boundary = 0.0; // critical radius of (z-w0) q at the boundary point w0
};

BoundaryComparison boundary_comparison(const Polynomial& p, int z1_index, cplx w0,
                                       const CritGeoOptions& opts = {});

struct SearchOptions {
    double sigma0 = 0.3;          // initial mutation scale
    double sigma_up = 1.22;       // on improvement (about a 1/5 success rule)
    double sigma_down = 0.95;     // on failure
    int restarts = 6;             // independent phases splitting the budget
    double polish_fraction = 0.3; // budget share for the simplex polish
    RootFindOptions rootfind;
};

struct MaximalSearchResult {
    std::vector<cplx> best_roots; // the designated zero first
    double best_rho = 0.0;
    long iterations = 0; // objective evaluations spent
    std::vector<std::pair<long, double>> trace; // (evaluation, best rho so far)
};

// Derivative-free search for a monic degree-n polynomial with all roots in
// the closed unit disk maximizing the critical radius at its first root.
// Deterministic for fixed (n, seed, budget).
MaximalSearchResult maximize_rho(int n, std::uint64_t seed, long budget,
                                 const SearchOptions& opts = {});

// Monic degree-n polynomials with independent uniform roots in the closed
// unit disk, filtered to simple ones. Deterministic per seed.
std::vector<Polynomial> random_pn_sample(int n, int count, std::uint64_t seed,
                                         double simple_tol = 1e-7);

} // namespace sendovlab
