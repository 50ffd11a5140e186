#include "sendovlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sendovlab/rng.hpp"

namespace sendovlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Gauss-Legendre 5-point rule on [-1, 1], nodes ascending.
constexpr double kGlNode[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                               0.5384693101056831, 0.9061798459386640};
constexpr double kGlWeight[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                 0.4786286704993665, 0.2369268850561891};

struct QDeriv {
    cplx qp;
    cplx qpp;
    double qp_scale;
};

QDeriv eval_qp(const Polynomial& q, cplx z, cplx u) {
    const Jet2 jet = q.evaluate_jet(z);
    const cplx shift = z - u;
    return {jet.value + shift * jet.d1, 2.0 * jet.d1 + shift * jet.d2,
            std::abs(jet.value) + std::abs(shift) * std::abs(jet.d1)};
}

bool newton_on_sheet(const Polynomial& q, cplx u, cplx& z, int max_steps = 12) {
    for (int i = 0; i <= max_steps; ++i) {
        const QDeriv d = eval_qp(q, z, u);
        if (std::abs(d.qp) <= 1e-13 * (1.0 + d.qp_scale))
            return true;
        if (i == max_steps)
            break;
        if (std::abs(d.qpp) == 0.0)
            return false;
        z -= d.qp / d.qpp;
    }
    return false;
}

// integrand of the transfer-factor exponent at a trajectory point:
// [ zeta'(v)/(zeta-v) + (q'/q)(zeta) ] dv/dt
cplx exponent_rhs(const Polynomial& q, const Path& path, double t, cplx zeta) {
    const cplx v = path.point(t);
    const cplx dv = path.velocity(t);
    const cplx dzeta = davidenko_rhs(q, v, zeta);
    const Jet2 jet = q.evaluate_jet(zeta);
    const cplx diff = zeta - v;
    if (std::abs(diff) == 0.0)
        fail(ErrorKind::SingularEvaluation, "zeta(v) = v along the integration path");
    if (std::abs(jet.value) == 0.0)
        fail(ErrorKind::SingularEvaluation, "q(zeta(v)) = 0 along the integration path");
    return (dzeta / diff + jet.d1 / jet.value) * dv;
}

// One Gauss-Legendre pass over [t0, t1], re-correcting zeta at each node.
// zeta_seed enters as the sheet position at t0 and leaves as the position at
// the last node, keeping the march continuous across intervals.
cplx gl_interval(const Polynomial& q, const Path& path, double t0, double t1, cplx& zeta_seed) {
    const double mid = 0.5 * (t0 + t1);
    const double half = 0.5 * (t1 - t0);
    cplx acc(0.0, 0.0);
    for (int i = 0; i < 5; ++i) {
        const double t = mid + half * kGlNode[i];
        if (!newton_on_sheet(q, path.point(t), zeta_seed))
            fail(ErrorKind::NonConvergence, "sheet correction failed at a quadrature node");
        acc += kGlWeight[i] * exponent_rhs(q, path, t, zeta_seed);
    }
    return acc * half;
}

cplx trajectory_exponent(const Polynomial& q, const Path& path, const Trajectory& traj,
                         const QuadratureOptions& opts) {
    if (path.degenerate())
        return {0.0, 0.0};
    // the integrand has a kink wherever the path velocity jumps, so quadrature
    // panels must never straddle a segment junction
    std::vector<double> cuts;
    {
        double acc = 0.0;
        for (const PathSegment& seg : path.segments())
            acc += seg.length();
        double run = 0.0;
        for (std::size_t k = 0; k + 1 < path.segments().size(); ++k) {
            run += path.segments()[k].length();
            cuts.push_back(run / acc);
        }
    }
    cplx previous(0.0, 0.0);
    bool have_previous = false;
    for (int level = 0; level <= opts.max_levels; ++level) {
        const int pieces = 1 << level;
        cplx total(0.0, 0.0);
        bool too_coarse = false;
        cplx zeta_seed = traj.samples.front().zeta;
        for (std::size_t k = 0; k + 1 < traj.samples.size() && !too_coarse; ++k) {
            const double a = traj.samples[k].t;
            const double b = traj.samples[k + 1].t;
            // keep the seed glued to the trajectory at interval starts
            zeta_seed = traj.samples[k].zeta;
            std::vector<double> edges = {a};
            for (const double cut : cuts)
                if (cut > a && cut < b)
                    edges.push_back(cut);
            edges.push_back(b);
            for (std::size_t e = 0; e + 1 < edges.size() && !too_coarse; ++e) {
                for (int piece = 0; piece < pieces; ++piece) {
                    const double t0 = edges[e] + (edges[e + 1] - edges[e]) * piece / pieces;
                    const double t1 = edges[e] + (edges[e + 1] - edges[e]) * (piece + 1) / pieces;
                    const cplx inc = gl_interval(q, path, t0, t1, zeta_seed);
                    if (std::abs(inc) >= opts.max_increment) {
                        too_coarse = true;
                        break;
                    }
                    total += inc;
                }
            }
        }
        if (too_coarse)
            continue;
        if (have_previous && std::abs(total - previous) < opts.log_tol)
            return total;
        previous = total;
        have_previous = true;
    }
    fail(ErrorKind::QuadratureNotConverged,
         "refining the quadrature did not settle the accumulated logarithm");
}

cplx project_to_disk(cplx z) {
    const double a = std::abs(z);
    return a > 1.0 ? z / a : z;
}

std::vector<cplx> unflatten(const std::vector<double>& x) {
    std::vector<cplx> roots(x.size() / 2);
    for (std::size_t i = 0; i < roots.size(); ++i)
        roots[i] = {x[2 * i], x[2 * i + 1]};
    return roots;
}

// Nelder-Mead ascent on a plain real vector. Every call of `evaluate` counts
// against the shared budget through the caller's objective; the best vertex
// seen is returned (empty when the cap was already spent).
template <typename Evaluate>
std::pair<std::vector<double>, double> nelder_mead_core(const std::vector<double>& x0,
                                                        const Evaluate& evaluate, double radius,
                                                        long cap, const long& evals) {
    const std::size_t dim = x0.size();
    struct Vertex {
        std::vector<double> x;
        double f;
    };
    if (evals >= cap)
        return {{}, 0.0};

    std::vector<Vertex> simplex;
    simplex.reserve(dim + 1);
    simplex.push_back({x0, evaluate(x0)});
    for (std::size_t d = 0; d < dim && evals < cap; ++d) {
        std::vector<double> x(x0);
        x[d] += radius;
        simplex.push_back({x, evaluate(x)});
    }

    auto by_f_desc = [](const Vertex& a, const Vertex& b) { return a.f > b.f; };
    auto best_vertex = [&]() {
        const auto it = std::max_element(simplex.begin(), simplex.end(),
                                         [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
        return std::pair<std::vector<double>, double>{it->x, it->f};
    };
    if (simplex.size() != dim + 1)
        return best_vertex();

    while (evals < cap) {
        std::sort(simplex.begin(), simplex.end(), by_f_desc);
        const Vertex& best = simplex.front();
        Vertex& worst = simplex.back();

        double spread = 0.0;
        for (std::size_t d = 0; d < dim; ++d)
            spread = std::max(spread, std::abs(worst.x[d] - best.x[d]));
        if (spread < 1e-12 && best.f - worst.f < 1e-14 * (1.0 + std::abs(best.f)))
            break;

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i + 1 < simplex.size(); ++i)
            for (std::size_t d = 0; d < dim; ++d)
                centroid[d] += simplex[i].x[d];
        for (double& c : centroid)
            c /= static_cast<double>(dim);

        auto along = [&](double t) {
            std::vector<double> x(dim);
            for (std::size_t d = 0; d < dim; ++d)
                x[d] = centroid[d] + t * (centroid[d] - worst.x[d]);
            return x;
        };

        std::vector<double> xr = along(1.0);
        const double fr = evaluate(xr);
        if (fr > best.f) {
            if (evals >= cap) {
                worst = {std::move(xr), fr};
                break;
            }
            std::vector<double> xe = along(2.0);
            const double fe = evaluate(xe);
            worst = fe > fr ? Vertex{std::move(xe), fe} : Vertex{std::move(xr), fr};
            continue;
        }
        if (fr > simplex[simplex.size() - 2].f) {
            worst = {std::move(xr), fr};
            continue;
        }
        if (evals >= cap)
            break;
        const bool outside = fr > worst.f;
        std::vector<double> xc = outside ? along(0.5) : along(-0.5);
        const double fc = evaluate(xc);
        if (fc > (outside ? fr : worst.f)) {
            worst = {std::move(xc), fc};
            continue;
        }
        // shrink everything toward the best vertex
        for (std::size_t i = 1; i < simplex.size() && evals < cap; ++i) {
            for (std::size_t d = 0; d < dim; ++d)
                simplex[i].x[d] = best.x[d] + 0.5 * (simplex[i].x[d] - best.x[d]);
            simplex[i].f = evaluate(simplex[i].x);
        }
    }
    return best_vertex();
}

// Simplex polish over all 2n real coordinates; the simplex itself is
// unconstrained and candidates are projected into the disk at evaluation
// time. `pt` is replaced by the best point found.
template <typename Objective, typename Consider>
void polish_free(std::vector<cplx>& pt, const Objective& objective, const Consider& consider,
                 double radius, long cap, const long& evals) {
    auto evaluate = [&](const std::vector<double>& x) -> double {
        std::vector<cplx> roots = unflatten(x);
        for (cplx& z : roots)
            z = project_to_disk(z);
        const double f = objective(roots);
        consider(roots, f);
        return f;
    };
    std::vector<double> x0(2 * pt.size());
    for (std::size_t i = 0; i < pt.size(); ++i) {
        x0[2 * i] = pt[i].real();
        x0[2 * i + 1] = pt[i].imag();
    }
    const auto [xb, fb] = nelder_mead_core(x0, evaluate, radius, cap, evals);
    if (xb.empty())
        return;
    pt = unflatten(xb);
    for (cplx& z : pt)
        z = project_to_disk(z);
}

// Simplex polish restricted to the unit circle, over the n root angles. The
// large-radius configurations keep every root on the circle, where the disk
// constraint is inactive and a simplex moves freely; the free polish tends to
// stall against that constraint instead.
template <typename Objective, typename Consider>
void polish_on_circle(std::vector<cplx>& pt, const Objective& objective, const Consider& consider,
                      double radius, long cap, const long& evals) {
    auto evaluate = [&](const std::vector<double>& th) -> double {
        std::vector<cplx> roots(th.size());
        for (std::size_t i = 0; i < th.size(); ++i)
            roots[i] = std::polar(1.0, th[i]);
        const double f = objective(roots);
        consider(roots, f);
        return f;
    };
    std::vector<double> th0(pt.size());
    for (std::size_t i = 0; i < pt.size(); ++i)
        th0[i] = std::arg(pt[i]);
    const auto [xb, fb] = nelder_mead_core(th0, evaluate, radius, cap, evals);
    if (xb.empty())
        return;
    for (std::size_t i = 0; i < pt.size(); ++i)
        pt[i] = std::polar(1.0, xb[i]);
}

} // namespace

cplx f_closed(const Polynomial& q, cplx zeta_start, cplx zeta_end, double floor_rel) {
    const Jet2 js = q.evaluate_jet(zeta_start);
    const Jet2 je = q.evaluate_jet(zeta_end);
    const double qs_scale = q.eval_scale(zeta_start);
    const double qe_scale = q.derivative().eval_scale(zeta_end);
    if (std::abs(js.value) <= floor_rel * (1.0 + qs_scale))
        fail(ErrorKind::SingularEvaluation, "q vanishes at zeta_start");
    if (std::abs(je.d1) <= floor_rel * (1.0 + qe_scale))
        fail(ErrorKind::SingularEvaluation, "q' vanishes at zeta_end");
    return (js.d1 / js.value) * (je.value / je.d1);
}

cplx f_integral(const Polynomial& q, const Path& path, cplx zeta_start,
                const QuadratureOptions& opts) {
    const Trajectory traj = track(q, path, zeta_start, opts.track);
    return std::exp(trajectory_exponent(q, path, traj, opts));
}

IdentityCheckReport verify_identity(const Polynomial& p, int z1_index, int zeta_index,
                                    const Path& path, const QuadratureOptions& opts) {
    require_simple(p);
    if (p.degree() < 2)
        fail(ErrorKind::DegreeTooLow, "need degree at least 2 to move one zero");
    const RootList zeros = find_roots(p, opts.track.rootfind);
    if (z1_index < 0 || z1_index >= static_cast<int>(zeros.roots.size()))
        fail(ErrorKind::BadInput, "z1 index out of range");
    const cplx z1 = zeros.roots[z1_index];
    if (std::abs(path.point(0.0) - z1) > 1e-9 * (1.0 + std::abs(z1)))
        fail(ErrorKind::BadInput, "path must start at the designated zero");

    const RootList crits = find_roots(p.derivative(), opts.track.rootfind);
    if (zeta_index < 0 || zeta_index >= static_cast<int>(crits.roots.size()))
        fail(ErrorKind::BadInput, "critical point index out of range");
    const cplx zeta0 = crits.roots[zeta_index];

    const Polynomial q = deflate(p, z1);
    const Trajectory traj = track(q, path, zeta0, opts.track);

    IdentityCheckReport report;
    report.z1 = z1;
    report.zeta_start = traj.start_zeta;
    report.zeta_end = traj.end_zeta;
    report.u_end = path.point(1.0);
    report.f_closed_value = f_closed(q, traj.start_zeta, traj.end_zeta);
    report.f_integral_value = std::exp(trajectory_exponent(q, path, traj, opts));
    report.abs_discrepancy =
        std::abs(std::abs(report.f_integral_value) - std::abs(report.f_closed_value)) /
        std::abs(report.f_closed_value);
    const double lhs = std::abs(report.zeta_end - report.u_end);
    const double rhs = std::abs(report.zeta_start - z1) * std::abs(report.f_closed_value);
    report.qf_residual = std::abs(lhs - rhs) / (1.0 + lhs);
    return report;
}

BlowupScan blowup_scan(const Polynomial& p, int z1_index, cplx w0,
                       const std::vector<double>& r_list, const TrackOptions& topts) {
    if (std::abs(std::abs(w0) - 1.0) > 1e-12)
        fail(ErrorKind::BadInput, "w0 must lie on the unit circle");
    if (r_list.empty())
        fail(ErrorKind::BadInput, "r list must not be empty");
    for (std::size_t i = 0; i < r_list.size(); ++i) {
        if (r_list[i] < 1.0)
            fail(ErrorKind::BadInput, "all radii must be at least 1");
        if (i > 0 && r_list[i] <= r_list[i - 1])
            fail(ErrorKind::BadInput, "radii must be strictly increasing");
    }
    require_simple(p);
    const RootList zeros = find_roots(p, topts.rootfind);
    if (z1_index < 0 || z1_index >= static_cast<int>(zeros.roots.size()))
        fail(ErrorKind::BadInput, "z1 index out of range");
    const cplx z1 = zeros.roots[z1_index];
    const Polynomial q = deflate(p, z1);

    BlowupScan scan;
    scan.start_fiber = find_roots(p.derivative(), topts.rootfind).roots;
    std::vector<cplx> current = scan.start_fiber;
    cplx cur_u = z1;

    auto advance = [&](cplx target) {
        const Path seg = Path::line(cur_u, target);
        for (cplx& zeta : current)
            zeta = track(q, seg, zeta, topts).end_zeta;
        cur_u = target;
    };

    advance(w0);
    for (const double r : r_list) {
        advance(r * w0);
        BlowupRow row;
        row.r = r;
        row.min_abs_f = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < current.size(); ++j) {
            const double value = std::abs(f_closed(q, scan.start_fiber[j], current[j]));
            row.abs_f.push_back(value);
            row.min_abs_f = std::min(row.min_abs_f, value);
        }
        if (!scan.crossing_r && row.min_abs_f > 1.0)
            scan.crossing_r = r;
        scan.rows.push_back(row);
    }
    return scan;
}

BoundaryComparison boundary_comparison(const Polynomial& p, int z1_index, cplx w0,
                                       const CritGeoOptions& opts) {
    if (std::abs(std::abs(w0) - 1.0) > 1e-12)
        fail(ErrorKind::BadInput, "w0 must lie on the unit circle");
    require_simple(p);
    const RootList zeros = find_roots(p, opts.rootfind);
    if (z1_index < 0 || z1_index >= static_cast<int>(zeros.roots.size()))
        fail(ErrorKind::BadInput, "z1 index out of range");
    const cplx z1 = zeros.roots[z1_index];
    if (!(std::abs(z1) < 1.0))
        fail(ErrorKind::BadInput, "designated zero must lie strictly inside the unit disk");

    BoundaryComparison cmp;
    cmp.rho_interior = critical_radius(p, z1, opts).rho;
    const Polynomial q = deflate(p, z1);
    const Polynomial boundary_p = multiply(from_roots({w0}), q);
    cmp.rho_boundary = critical_radius(boundary_p, w0, opts).rho;
    return cmp;
}

MaximalSearchResult maximize_rho(int n, std::uint64_t seed, long budget,
                                 const SearchOptions& opts) {
    if (n < 2 || n > 12)
        fail(ErrorKind::BadInput, "n must be between 2 and 12");
    if (budget < 10)
        fail(ErrorKind::BadInput, "budget too small");

    MaximalSearchResult result;
    result.best_rho = -1.0;
    long evals = 0;

    auto objective = [&](const std::vector<cplx>& roots) -> double {
        ++evals;
        try {
            const Polynomial p = from_roots(roots);
            const RootList crit = find_roots(p.derivative(), opts.rootfind);
            double rho = std::numeric_limits<double>::infinity();
            for (const cplx& c : crit.roots)
                rho = std::min(rho, std::abs(c - roots[0]));
            return rho;
        } catch (const NumericalError&) {
            return -1.0; // infeasible candidate, never better than a real radius
        }
    };

    auto consider = [&](const std::vector<cplx>& roots, double rho) {
        if (rho > result.best_rho) {
            result.best_rho = rho;
            result.best_roots = roots;
            result.trace.emplace_back(evals, rho);
        }
    };

    const long polish_budget =
        std::max<long>(100, static_cast<long>(static_cast<double>(budget) * opts.polish_fraction));
    const long es_budget = std::max<long>(1, budget - polish_budget);
    const int phases = std::max(1, opts.restarts);
    const long per_phase = std::max<long>(1, es_budget / phases);

    // the elitist current point of each phase, polished afterwards
    std::vector<std::pair<double, std::vector<cplx>>> phase_bests;

    for (int phase = 0; phase < phases && evals < es_budget; ++phase) {
        Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(phase) + 1));
        std::vector<cplx> cur(n);
        // alternate starts: on the circle (where the large-radius configurations
        // live) and spread over the disk
        for (cplx& z : cur)
            z = (phase % 2 == 0) ? std::polar(1.0, 2.0 * kPi * rng.uniform01())
                                 : rng.unit_disk();
        double fcur = objective(cur);
        consider(cur, fcur);
        double sigma = opts.sigma0;
        const long phase_end = std::min(es_budget, (phase + 1) * per_phase);
        while (evals < phase_end) {
            std::vector<cplx> cand(cur);
            // full-vector moves explore, single-root moves follow the ridges of
            // the min-over-critical-points objective
            if (rng.uniform01() < 0.5) {
                for (cplx& z : cand)
                    z = project_to_disk(z + sigma * cplx(rng.gaussian(), rng.gaussian()));
            } else {
                const int k = std::min<int>(n - 1, static_cast<int>(rng.uniform01() * n));
                cand[k] = project_to_disk(cand[k] + sigma * cplx(rng.gaussian(), rng.gaussian()));
            }
            const double f = objective(cand);
            if (f > fcur) {
                cur = std::move(cand);
                fcur = f;
                sigma = std::min(sigma * opts.sigma_up, 2.0);
                consider(cur, fcur);
            } else {
                sigma = std::max(sigma * opts.sigma_down, 1e-9);
            }
        }
        phase_bests.emplace_back(fcur, cur);
    }

    // polish every phase winner, best first, splitting what remains
    std::sort(phase_bests.begin(), phase_bests.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    const long nm_share =
        std::max<long>(100, (budget - evals) / std::max<std::size_t>(1, phase_bests.size()));
    for (auto& [frho, pt] : phase_bests) {
        if (evals >= budget)
            break;
        const long slice_end = std::min(budget, evals + nm_share);
        polish_free(pt, objective, consider, 0.02, evals + (slice_end - evals) / 2, evals);
        if (evals < slice_end)
            polish_on_circle(pt, objective, consider, 0.05, slice_end, evals);
    }

    // cheap coordinate sweep on the overall best with anything left over
    std::vector<cplx> best = result.best_roots;
    double fbest = result.best_rho;
    double delta = 0.01;
    while (evals < budget && delta > 1e-10) {
        bool improved = false;
        for (int d = 0; d < 2 * n && evals < budget; ++d) {
            for (const double sgn : {1.0, -1.0}) {
                if (evals >= budget)
                    break;
                std::vector<cplx> cand(best);
                const cplx offset = (d % 2 == 0) ? cplx(sgn * delta, 0.0) : cplx(0.0, sgn * delta);
                cand[d / 2] = project_to_disk(cand[d / 2] + offset);
                const double f = objective(cand);
                if (f > fbest) {
                    best = std::move(cand);
                    fbest = f;
                    consider(best, fbest);
                    improved = true;
                    break;
                }
            }
        }
        if (!improved)
            delta *= 0.5;
    }

    result.iterations = evals;
    return result;
}

std::vector<Polynomial> random_pn_sample(int n, int count, std::uint64_t seed,
                                         double simple_tol) {
    if (n < 1)
        fail(ErrorKind::BadInput, "degree must be at least 1");
    if (count < 0)
        fail(ErrorKind::BadInput, "count must be nonnegative");
    Rng rng(Rng::derive(seed, 0));
    std::vector<Polynomial> out;
    out.reserve(count);
    while (static_cast<int>(out.size()) < count) {
        std::vector<cplx> roots(n);
        for (cplx& z : roots)
            z = rng.unit_disk();
        Polynomial p = from_roots(roots);
        if (is_simple(p, simple_tol).simple)
            out.push_back(std::move(p));
    }
    return out;
}

} // namespace sendovlab
