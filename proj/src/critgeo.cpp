#include "sendovlab/critgeo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sendovlab {

namespace {

bool lex_less(const cplx& a, const cplx& b) {
    if (a.real() != b.real())
        return a.real() < b.real();
    return a.imag() < b.imag();
}

double cross(const cplx& o, const cplx& a, const cplx& b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

void check_is_zero(const Polynomial& p, cplx w0, const CritGeoOptions& opts) {
    const double tol = opts.zero_tol * (1.0 + p.coeff_scale());
    const double value = std::abs(p.evaluate(w0));
    if (value > tol) {
        std::ostringstream msg;
        msg << "|p(w0)| = " << value << " exceeds zero tolerance " << tol;
        fail(ErrorKind::NotAZero, msg.str());
    }
}

} // namespace

std::vector<cplx> convex_hull(std::vector<cplx> points) {
    std::sort(points.begin(), points.end(), lex_less);
    points.erase(std::unique(points.begin(), points.end()), points.end());
    const int n = static_cast<int>(points.size());
    if (n <= 2)
        return points;
    std::vector<cplx> hull(2 * n);
    int k = 0;
    for (int i = 0; i < n; ++i) { // lower chain
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], points[i]) <= 0.0)
            --k;
        hull[k++] = points[i];
    }
    const int lower = k + 1;
    for (int i = n - 2; i >= 0; --i) { // upper chain
        while (k >= lower && cross(hull[k - 2], hull[k - 1], points[i]) <= 0.0)
            --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);
    return hull;
}

double hull_signed_distance(const std::vector<cplx>& hull, cplx x) {
    if (hull.empty())
        fail(ErrorKind::BadInput, "empty hull");
    if (hull.size() == 1)
        return std::abs(x - hull[0]);

    auto segment_distance = [](cplx a, cplx b, cplx pt) {
        const cplx ab = b - a;
        const double len2 = std::norm(ab);
        if (len2 == 0.0)
            return std::abs(pt - a);
        double t = ((pt.real() - a.real()) * ab.real() + (pt.imag() - a.imag()) * ab.imag()) / len2;
        t = std::clamp(t, 0.0, 1.0);
        return std::abs(pt - (a + t * ab));
    };

    if (hull.size() == 2)
        return segment_distance(hull[0], hull[1], x);

    // Counterclockwise polygon: signed distance is the maximum over edges of
    // the outward-normal distance; all negative means strictly inside.
    double signed_dist = -std::numeric_limits<double>::infinity();
    bool outside = false;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const cplx a = hull[i];
        const cplx b = hull[(i + 1) % hull.size()];
        const cplx ab = b - a;
        const double len = std::abs(ab);
        if (len == 0.0)
            continue;
        const double out = -cross(a, b, x) / len; // >0 outside this edge
        signed_dist = std::max(signed_dist, out);
        outside = outside || out > 0.0;
    }
    if (outside) {
        // true distance to the boundary, not the supporting-line bound
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < hull.size(); ++i)
            best = std::min(best, segment_distance(hull[i], hull[(i + 1) % hull.size()], x));
        return best;
    }
    return signed_dist;
}

RootList critical_points(const Polynomial& p, const CritGeoOptions& opts) {
    if (p.degree() < 2)
        fail(ErrorKind::DegreeTooLow, "critical points need degree >= 2");
    return find_roots(p.derivative(), opts.rootfind);
}

CriticalRadiusReport critical_radius(const Polynomial& p, cplx w0, const CritGeoOptions& opts) {
    check_is_zero(p, w0, opts);
    CriticalRadiusReport report;
    report.all_critical = critical_points(p, opts);

    double rho = std::numeric_limits<double>::infinity();
    for (const cplx& zeta : report.all_critical.roots)
        rho = std::min(rho, std::abs(zeta - w0));
    report.rho = rho;

    const double band = opts.essential_band * (1.0 + rho);
    for (const cplx& zeta : report.all_critical.roots)
        if (std::abs(std::abs(zeta - w0) - rho) <= band)
            report.essential.push_back(zeta);
    std::sort(report.essential.begin(), report.essential.end(), lex_less);
    // collapse numerically identical points (multiple critical zeros)
    auto near = [&](const cplx& a, const cplx& b) {
        return std::abs(a - b) < opts.rootfind.cluster_tol;
    };
    report.essential.erase(std::unique(report.essential.begin(), report.essential.end(), near),
                           report.essential.end());
    return report;
}

GaussLucasReport gauss_lucas_check(const Polynomial& p, const CritGeoOptions& opts) {
    const RootList zeros = find_roots(p, opts.rootfind);
    const RootList crits = critical_points(p, opts);
    const std::vector<cplx> hull = convex_hull(zeros.roots);

    double max_mod = 0.0;
    for (const cplx& z : zeros.roots)
        max_mod = std::max(max_mod, std::abs(z));

    GaussLucasReport report;
    report.worst_signed_distance = -std::numeric_limits<double>::infinity();
    for (const cplx& zeta : crits.roots) {
        const double d = hull_signed_distance(hull, zeta);
        if (d > report.worst_signed_distance) {
            report.worst_signed_distance = d;
            report.worst_point = zeta;
        }
    }
    report.inside = report.worst_signed_distance <= opts.hull_tol * (1.0 + max_mod);
    return report;
}

SendovReport sendov_check(const Polynomial& p, bool assume_unit_disk, const CritGeoOptions& opts) {
    const RootList zeros = find_roots(p, opts.rootfind);
    if (assume_unit_disk) {
        for (const cplx& z : zeros.roots) {
            if (std::abs(z) > 1.0 + opts.disk_tol) {
                std::ostringstream msg;
                msg << "root modulus " << std::abs(z) << " outside the closed unit disk";
                fail(ErrorKind::RootOutsideDisk, msg.str());
            }
        }
    }
    const RootList crits = critical_points(p, opts);

    SendovReport report;
    for (const cplx& z : zeros.roots) {
        SendovRow row;
        row.zero = z;
        row.distance = std::numeric_limits<double>::infinity();
        for (const cplx& zeta : crits.roots) {
            const double d = std::abs(z - zeta);
            if (d < row.distance) {
                row.distance = d;
                row.nearest_critical = zeta;
            }
        }
        report.max_distance = std::max(report.max_distance, row.distance);
        report.per_zero.push_back(row);
    }
    report.passes = report.max_distance <= 1.0 + opts.disk_tol;
    return report;
}

GrrReport grr_disk_check(const Polynomial& p, const CritGeoOptions& opts) {
    check_is_zero(p, cplx(1.0, 0.0), opts);
    const RootList crits = critical_points(p, opts);

    GrrReport report;
    report.all_on_circle = true;
    for (const cplx& zeta : crits.roots) {
        GrrWitness w;
        w.zeta = zeta;
        w.abs_two_zeta_minus_one = std::abs(2.0 * zeta - 1.0);
        if (w.abs_two_zeta_minus_one < 1.0 - opts.disk_tol)
            w.position = DiskPosition::Inside;
        else if (w.abs_two_zeta_minus_one <= 1.0 + opts.disk_tol)
            w.position = DiskPosition::OnCircle;
        else
            w.position = DiskPosition::Outside;
        report.has_closed_disk_zero =
            report.has_closed_disk_zero || w.position != DiskPosition::Outside;
        report.has_open_disk_zero = report.has_open_disk_zero || w.position == DiskPosition::Inside;
        report.all_on_circle = report.all_on_circle && w.position == DiskPosition::OnCircle;
        report.witnesses.push_back(w);
    }
    return report;
}

} // namespace sendovlab
