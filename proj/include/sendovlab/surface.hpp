#pragma once

#include <vector>

#include "sendovlab/polynomial.hpp"
#include "sendovlab/roots.hpp"
#include "sendovlab/tracker.hpp"

namespace sendovlab {

// A point w where the surface Q'(zeta,u) = 0 branches over the u-plane,
// characterized by 2 q'(w)^2 = q(w) q''(w). Its u-coordinate is phi(w).
struct BranchPoint {
    cplx w{0.0, 0.0};
    cplx u{0.0, 0.0};
    double residual = 0.0; // |2q'(w)^2 - q(w)q''(w)| over its evaluation magnitude
};

// The polynomial 2 q'(w)^2 - q(w) q''(w). For deg q = m >= 2 its degree is
// exactly 2m-2 with leading coefficient m(m+1) times leading(q)^2; for m = 1
// it is the nonzero constant 2 leading(q)^2.
Polynomial branch_polynomial(const Polynomial& q);

struct SurfaceOptions {
    double projection_floor = 1e-12; // |q'(w)| below this x scale -> ProjectionSingular
    double simple_tol = 1e-7;
    double disk_tol = 1e-9;
    RootFindOptions rootfind;
};

// All branch points of the surface for simple q, with multiplicity,
// sorted lexicographically by w. Empty for deg q = 1.
std::vector<BranchPoint> branch_locus(const Polynomial& q, const SurfaceOptions& opts = {});

// The projection phi(w) = w + q(w)/q'(w) sending a surface point to its
// u-coordinate.
cplx phi(const Polynomial& q, cplx w, double floor_rel = 1e-12);

enum class DiskClaimStatus { Satisfied, Boundary, Violation };

struct BranchDiskRow {
    BranchPoint point;
    double abs_phi = 0.0;
    DiskClaimStatus status = DiskClaimStatus::Satisfied;
    bool violation = false; // |phi(w)| not strictly inside the unit disk
};

struct BranchDiskReport {
    std::vector<BranchDiskRow> rows;
    int violation_count = 0;
    int boundary_count = 0;
};

// Measures |phi(w)| for every branch point of q (whose zeros must lie in the
// closed unit disk) against the open unit disk: satisfied below 1 - 1e-9,
// boundary within 1e-9 of 1, violation above. This reports measurements only.
BranchDiskReport branch_disk_report(const Polynomial& q, const SurfaceOptions& opts = {});

enum class SheetKind { Unbounded, Bounded };

struct SheetInfo {
    cplx start{0.0, 0.0};        // critical point of Q(., u0) at |u0| = radius
    SheetKind kind = SheetKind::Bounded;
    cplx ratio{0.0, 0.0};        // zeta(u)/u at the far end
    cplx limit{0.0, 0.0};        // far-end zeta (bounded sheets approach a root of q')
    cplx matched_root{0.0, 0.0}; // the root of q' a bounded sheet converges to
    double match_error = 0.0;
};

struct SheetAtInfinityReport {
    std::vector<SheetInfo> per_sheet;
    int unbounded_count = 0;
};

struct SheetOptions {
    double growth_factor = 1e4; // track out to |u| = radius x this
    double ray_angle = 0.0;     // direction of the outward ray
    TrackOptions track;
    RootFindOptions rootfind;
};

// Classify every sheet of the surface by tracking from |u0| = radius outward
// along a ray: exactly one sheet grows like ((deg q)/(deg q + 1)) u, the rest
// converge to the roots of q'.
SheetAtInfinityReport sheets_at_infinity(const Polynomial& q, double radius,
                                         const SheetOptions& opts = {});

struct MonodromyReport {
    cplx basepoint{0.0, 0.0};
    std::vector<cplx> sheet_labels;         // fiber over the basepoint, lex sorted
    std::vector<Path> loops;
    std::vector<std::vector<int>> permutations; // perm[i] = label index after the loop
    std::vector<int> product;               // composition of all loop permutations in order
};

struct MonodromyOptions {
    double clearance = 1e-3;   // every loop must keep this distance to branch projections
    double closure_tol = 1e-9; // loop endpoints must agree to this
    TrackOptions track;
    RootFindOptions rootfind;
    double simple_tol = 1e-7;
};

// Permutations of the sheet labels induced by tracking the whole fiber around
// each loop. Loops must be closed and keep clearance from branch projections.
MonodromyReport monodromy(const Polynomial& q, cplx basepoint, const std::vector<Path>& loops,
                          const MonodromyOptions& opts = {});

// Keyhole loop around one target point: straight run from the basepoint to a
// circle of the given radius around the target (approached radially), once
// around the circle, and straight back.
Path keyhole_loop(cplx basepoint, cplx target, double radius);

// A deterministic loop set for monodromy: one keyhole per distinct branch
// projection (radius 0.4 x distance to the nearest other projection, capped by
// the basepoint distance), plus optionally a final circle through the
// basepoint around the origin enclosing every projection.
std::vector<Path> standard_monodromy_loops(const Polynomial& q, cplx basepoint,
                                           const SurfaceOptions& opts = {},
                                           bool include_big_circle = true);

// Monodromy with an automatically chosen basepoint and standard loops: the
// basepoint sits on a circle enclosing all branch projections, its angle is
// taken from a fixed trial sequence until every loop keeps the configured
// clearance. Deterministic for a given q.
MonodromyReport auto_monodromy(const Polynomial& q, const MonodromyOptions& opts = {},
                               bool include_big_circle = true);

// Distance from a point to the nearest point of the path (exact per segment).
double path_distance(const Path& path, cplx point);

} // namespace sendovlab
