#include "sendovlab/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sendovlab {

namespace {

const double kPi = std::acos(-1.0);

double branch_value_scale(const Jet2& jet, cplx w_unused) {
    (void)w_unused;
    return 2.0 * std::abs(jet.d1) * std::abs(jet.d1) + std::abs(jet.value) * std::abs(jet.d2);
}

double segment_distance(const PathSegment& seg, cplx p) {
    if (seg.kind == PathSegment::Kind::Line) {
        const cplx ab = seg.b - seg.a;
        const double len2 = std::norm(ab);
        if (len2 == 0.0)
            return std::abs(p - seg.a);
        double t = ((p.real() - seg.a.real()) * ab.real() + (p.imag() - seg.a.imag()) * ab.imag()) /
                   len2;
        t = std::clamp(t, 0.0, 1.0);
        return std::abs(p - (seg.a + t * ab));
    }
    const double lo = std::min(seg.angle_start, seg.angle_end);
    const double hi = std::max(seg.angle_start, seg.angle_end);
    const cplx rel = p - seg.center;
    double psi = std::atan2(rel.imag(), rel.real());
    psi -= std::floor((psi - lo) / (2.0 * kPi)) * 2.0 * kPi; // into [lo, lo + 2pi)
    if (psi <= hi)
        return std::abs(std::abs(rel) - seg.radius);
    return std::min(std::abs(p - seg.start()), std::abs(p - seg.end()));
}

} // namespace

Polynomial branch_polynomial(const Polynomial& q) {
    const int m = q.degree();
    if (m < 1)
        fail(ErrorKind::DegreeTooLow, "q must have degree at least 1");
    const Polynomial dq = q.derivative();
    if (m == 1) {
        const cplx c = dq.coeffs()[0];
        return Polynomial({2.0 * c * c});
    }
    const Polynomial d2q = dq.derivative();
    const Polynomial lhs = multiply(dq, dq); // degree 2m-2
    const Polynomial rhs = multiply(q, d2q); // degree 2m-2
    std::vector<cplx> b(lhs.coeffs().size());
    for (std::size_t k = 0; k < b.size(); ++k)
        b[k] = 2.0 * lhs.coeffs()[k] - rhs.coeffs()[k];
    return Polynomial(b);
}

std::vector<BranchPoint> branch_locus(const Polynomial& q, const SurfaceOptions& opts) {
    require_simple(q, opts.simple_tol);
    if (q.degree() == 1)
        return {};
    const Polynomial bpoly = branch_polynomial(q);
    const RootList roots = find_roots(bpoly, opts.rootfind);
    std::vector<BranchPoint> locus;
    locus.reserve(roots.roots.size());
    for (const cplx& w : roots.roots) {
        BranchPoint bp;
        bp.w = w;
        bp.u = phi(q, w, opts.projection_floor);
        const Jet2 jet = q.evaluate_jet(w);
        const cplx value = 2.0 * jet.d1 * jet.d1 - jet.value * jet.d2;
        bp.residual = std::abs(value) / (1.0 + branch_value_scale(jet, w));
        locus.push_back(bp);
    }
    return locus;
}

cplx phi(const Polynomial& q, cplx w, double floor_rel) {
    if (q.degree() < 1)
        fail(ErrorKind::DegreeTooLow, "q must have degree at least 1");
    const Jet2 jet = q.evaluate_jet(w);
    const double scale = q.derivative().eval_scale(w);
    if (std::abs(jet.d1) <= floor_rel * (1.0 + scale))
        fail(ErrorKind::ProjectionSingular, "q' vanishes at the surface point");
    return w + jet.value / jet.d1;
}

BranchDiskReport branch_disk_report(const Polynomial& q, const SurfaceOptions& opts) {
    const RootList zeros = find_roots(q, opts.rootfind);
    for (const cplx& z : zeros.roots) {
        if (std::abs(z) > 1.0 + opts.disk_tol) {
            std::ostringstream msg;
            msg << "zero of modulus " << std::abs(z) << " lies outside the closed unit disk";
            fail(ErrorKind::RootOutsideDisk, msg.str());
        }
    }
    BranchDiskReport report;
    for (const BranchPoint& bp : branch_locus(q, opts)) {
        BranchDiskRow row;
        row.point = bp;
        row.abs_phi = std::abs(bp.u);
        if (row.abs_phi < 1.0 - opts.disk_tol) {
            row.status = DiskClaimStatus::Satisfied;
        } else if (row.abs_phi <= 1.0 + opts.disk_tol) {
            row.status = DiskClaimStatus::Boundary;
            ++report.boundary_count;
        } else {
            row.status = DiskClaimStatus::Violation;
        }
        row.violation = row.status != DiskClaimStatus::Satisfied;
        if (row.violation)
            ++report.violation_count;
        report.rows.push_back(row);
    }
    return report;
}

SheetAtInfinityReport sheets_at_infinity(const Polynomial& q, double radius,
                                         const SheetOptions& opts) {
    if (!(radius >= 10.0))
        fail(ErrorKind::BadInput, "radius must be at least 10");
    const cplx dir(std::cos(opts.ray_angle), std::sin(opts.ray_angle));
    const cplx u0 = radius * dir;
    const cplx u1 = radius * opts.growth_factor * dir;
    const std::vector<Trajectory> trajs = track_all(q, Path::line(u0, u1), opts.track);

    std::vector<cplx> dq_roots;
    if (q.degree() >= 2)
        dq_roots = find_roots(q.derivative(), opts.rootfind).roots;
    std::vector<bool> taken(dq_roots.size(), false);

    SheetAtInfinityReport report;
    for (const Trajectory& traj : trajs) {
        SheetInfo info;
        info.start = traj.start_zeta;
        const cplx ze = traj.end_zeta;
        if (std::abs(ze) >= 0.1 * std::abs(u1)) {
            info.kind = SheetKind::Unbounded;
            info.ratio = ze / u1;
            ++report.unbounded_count;
        } else {
            info.kind = SheetKind::Bounded;
            info.limit = ze;
            info.ratio = ze / u1;
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_j = 0;
            for (std::size_t j = 0; j < dq_roots.size(); ++j) {
                const double d = std::abs(ze - dq_roots[j]);
                if (d < best) {
                    best = d;
                    best_j = j;
                }
            }
            if (dq_roots.empty())
                fail(ErrorKind::NonConvergence, "bounded sheet with no root of q' to approach");
            if (taken[best_j])
                fail(ErrorKind::SheetCollision, "two bounded sheets approach the same root of q'");
            taken[best_j] = true;
            info.matched_root = dq_roots[best_j];
            info.match_error = best;
        }
        report.per_sheet.push_back(info);
    }
    if (report.unbounded_count != 1)
        fail(ErrorKind::NonConvergence, "expected exactly one unbounded sheet");
    return report;
}

double path_distance(const Path& path, cplx point) {
    double best = std::numeric_limits<double>::infinity();
    for (const PathSegment& seg : path.segments())
        best = std::min(best, segment_distance(seg, point));
    return best;
}

Path keyhole_loop(cplx basepoint, cplx target, double radius) {
    const cplx rel = basepoint - target;
    const double dist = std::abs(rel);
    if (!(radius > 0.0) || dist <= radius)
        fail(ErrorKind::BadInput, "keyhole radius must be positive and below the approach distance");
    const cplx dir = rel / dist;
    const cplx entry = target + radius * dir;
    const double alpha = std::atan2(dir.imag(), dir.real());
    return Path({PathSegment::line(basepoint, entry),
                 PathSegment::arc(target, radius, alpha, alpha + kPi),
                 PathSegment::arc(target, radius, alpha + kPi, alpha + 2.0 * kPi),
                 PathSegment::line(entry, basepoint)});
}

std::vector<Path> standard_monodromy_loops(const Polynomial& q, cplx basepoint,
                                           const SurfaceOptions& opts, bool include_big_circle) {
    std::vector<cplx> projections;
    for (const BranchPoint& bp : branch_locus(q, opts)) {
        bool known = false;
        for (const cplx& s : projections)
            known = known || std::abs(s - bp.u) <= 1e-8;
        if (!known)
            projections.push_back(bp.u);
    }
    std::vector<Path> loops;
    for (std::size_t k = 0; k < projections.size(); ++k) {
        double nearest = std::abs(basepoint - projections[k]);
        for (std::size_t j = 0; j < projections.size(); ++j)
            if (j != k)
                nearest = std::min(nearest, std::abs(projections[k] - projections[j]));
        loops.push_back(keyhole_loop(basepoint, projections[k], 0.4 * nearest));
    }
    if (include_big_circle) {
        const double r = std::abs(basepoint);
        if (r == 0.0)
            fail(ErrorKind::BadInput, "basepoint must not be the origin for the big circle");
        loops.push_back(Path::circle(cplx(0.0, 0.0), r,
                                     std::atan2(basepoint.imag(), basepoint.real())));
    }
    return loops;
}

MonodromyReport monodromy(const Polynomial& q, cplx basepoint, const std::vector<Path>& loops,
                          const MonodromyOptions& opts) {
    require_simple(q, opts.simple_tol);
    SurfaceOptions sopts;
    sopts.simple_tol = opts.simple_tol;
    sopts.rootfind = opts.rootfind;
    std::vector<cplx> projections;
    for (const BranchPoint& bp : branch_locus(q, sopts))
        projections.push_back(bp.u);
    for (const cplx& s : projections)
        if (std::abs(basepoint - s) < opts.clearance)
            fail(ErrorKind::BadInput, "basepoint too close to a branch projection");

    MonodromyReport report;
    report.basepoint = basepoint;
    report.sheet_labels = find_roots(q_prime_polynomial(q, basepoint), opts.rootfind).roots;
    const std::size_t sheets = report.sheet_labels.size();
    double fiber_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sheets; ++i)
        for (std::size_t j = i + 1; j < sheets; ++j)
            fiber_gap = std::min(fiber_gap, std::abs(report.sheet_labels[i] - report.sheet_labels[j]));

    report.product.resize(sheets);
    for (std::size_t i = 0; i < sheets; ++i)
        report.product[i] = static_cast<int>(i);

    for (const Path& loop : loops) {
        if (!loop.closed(opts.closure_tol))
            fail(ErrorKind::LoopNotClosed, "loop endpoints do not coincide");
        if (std::abs(loop.point(0.0) - basepoint) > opts.closure_tol)
            fail(ErrorKind::BadInput, "loop must start at the basepoint");
        for (const cplx& s : projections) {
            if (path_distance(loop, s) < opts.clearance) {
                std::ostringstream msg;
                msg << "loop passes within " << path_distance(loop, s)
                    << " of a branch projection (clearance " << opts.clearance << ")";
                fail(ErrorKind::BadInput, msg.str());
            }
        }
        const std::vector<Trajectory> trajs = track_all(q, loop, opts.track);
        std::vector<int> perm(sheets, -1);
        std::vector<bool> taken(sheets, false);
        for (std::size_t i = 0; i < sheets; ++i) {
            const cplx end = trajs[i].end_zeta;
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_j = 0;
            for (std::size_t j = 0; j < sheets; ++j) {
                const double d = std::abs(end - report.sheet_labels[j]);
                if (d < best) {
                    best = d;
                    best_j = j;
                }
            }
            if (sheets > 1 && !(best < 0.25 * fiber_gap))
                fail(ErrorKind::NonConvergence, "loop end point does not return to the fiber");
            if (taken[best_j])
                fail(ErrorKind::SheetCollision, "two sheets returned to the same fiber point");
            taken[best_j] = true;
            perm[i] = static_cast<int>(best_j);
        }
        for (std::size_t i = 0; i < sheets; ++i)
            report.product[i] = perm[report.product[i]];
        report.permutations.push_back(perm);
        report.loops.push_back(loop);
    }
    return report;
}

MonodromyReport auto_monodromy(const Polynomial& q, const MonodromyOptions& opts,
                               bool include_big_circle) {
    SurfaceOptions sopts;
    sopts.simple_tol = opts.simple_tol;
    sopts.rootfind = opts.rootfind;
    double reach = 1.0;
    for (const BranchPoint& bp : branch_locus(q, sopts))
        reach = std::max(reach, std::abs(bp.u));
    const double radius = 2.0 * reach + 1.0;
    const int trials = 24;
    for (int k = 0; k < trials; ++k) {
        const double angle = 2.0 * kPi * static_cast<double>(k) / trials;
        const cplx basepoint = radius * cplx(std::cos(angle), std::sin(angle));
        try {
            const std::vector<Path> loops =
                standard_monodromy_loops(q, basepoint, sopts, include_big_circle);
            return monodromy(q, basepoint, loops, opts);
        } catch (const NumericalError& e) {
            if (e.kind() != ErrorKind::BadInput && e.kind() != ErrorKind::PathNearBranchPoint)
                throw;
        }
    }
    fail(ErrorKind::NonConvergence, "no basepoint angle yielded clear monodromy loops");
}

} // namespace sendovlab
