#include "sendovlab/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sendovlab {

namespace {

constexpr double kNewtonRelTol = 1e-13;

struct QDerivs {
    cplx qp;          // Q'(z,u)
    cplx qpp;         // Q''(z,u)
    double qp_scale;  // magnitude bound for the sums forming qp
    double qpp_scale; // same for qpp
};

QDerivs eval_q_derivs(const Polynomial& q, cplx z, cplx u) {
    const Jet2 jet = q.evaluate_jet(z);
    const cplx shift = z - u;
    // Gauge the achievable accuracy with absolute-coefficient Horner sums
    // rather than |q(z)|, |q'(z)| themselves: when z sits near a zero of q'
    // the value is tiny but its evaluation noise is not, and multiplied by a
    // large |z-u| that noise is what limits the corrector.
    const double az = std::abs(z);
    const std::vector<cplx>& c = q.coeffs();
    double s0 = std::abs(c.back());
    double s1 = 0.0;
    double s2_half = 0.0;
    for (int k = q.degree() - 1; k >= 0; --k) {
        s2_half = s2_half * az + s1;
        s1 = s1 * az + s0;
        s0 = s0 * az + std::abs(c[k]);
    }
    QDerivs d;
    d.qp = jet.value + shift * jet.d1;
    d.qpp = 2.0 * jet.d1 + shift * jet.d2;
    const double ashift = std::abs(shift);
    d.qp_scale = s0 + ashift * s1;
    d.qpp_scale = 2.0 * s1 + ashift * 2.0 * s2_half;
    return d;
}

bool newton_correct(const Polynomial& q, cplx u, cplx& z, int max_steps) {
    for (int i = 0; i <= max_steps; ++i) {
        const QDerivs d = eval_q_derivs(q, z, u);
        if (std::abs(d.qp) <= kNewtonRelTol * (1.0 + d.qp_scale))
            return true;
        if (i == max_steps)
            break;
        if (std::abs(d.qpp) <= 1e-14 * (1.0 + d.qpp_scale))
            return false; // derivative collapse near a branch point
        z -= d.qp / d.qpp;
    }
    return false;
}

cplx ode_rhs(const Polynomial& q, const Path& path, double t, cplx zeta, double floor_rel) {
    return davidenko_rhs(q, path.point(t), zeta, floor_rel) * path.velocity(t);
}

cplx predict(const Polynomial& q, const Path& path, double t, double h, cplx zeta, bool rk4,
             double floor_rel) {
    if (!rk4)
        return zeta + h * ode_rhs(q, path, t, zeta, floor_rel);
    const cplx k1 = ode_rhs(q, path, t, zeta, floor_rel);
    const cplx k2 = ode_rhs(q, path, t + 0.5 * h, zeta + 0.5 * h * k1, floor_rel);
    const cplx k3 = ode_rhs(q, path, t + 0.5 * h, zeta + 0.5 * h * k2, floor_rel);
    const cplx k4 = ode_rhs(q, path, t + h, zeta + h * k3, floor_rel);
    return zeta + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void push_sample(const Polynomial& q, Trajectory& traj, double t, cplx u, cplx z, double h,
                 double branch_event_rel) {
    const QDerivs d = eval_q_derivs(q, z, u);
    traj.samples.push_back({t, u, z, std::abs(d.qp), h});
    if (std::abs(d.qpp) < branch_event_rel * (1.0 + d.qpp_scale))
        traj.events.push_back({t, TrackEventKind::BranchProximity});
}

// distance from z to the nearest element of roots other than z itself
// (the nearest one is taken to be z's own root)
double nearest_other_distance(const std::vector<cplx>& roots, cplx z) {
    double best = std::numeric_limits<double>::infinity();
    double second = best;
    for (const cplx& r : roots) {
        const double d = std::abs(r - z);
        if (d < best) {
            second = best;
            best = d;
        } else if (d < second) {
            second = d;
        }
    }
    return second;
}

[[noreturn]] void fail_step_floor(double t) {
    std::ostringstream msg;
    msg << "step size underflow at t = " << t << " (likely near a branch point)";
    fail(ErrorKind::PathNearBranchPoint, msg.str());
}

} // namespace

cplx q_prime_of_Q(const Polynomial& q, cplx z, cplx u) {
    const Jet2 jet = q.evaluate_jet(z);
    return jet.value + (z - u) * jet.d1;
}

cplx q_second_of_Q(const Polynomial& q, cplx z, cplx u) {
    const Jet2 jet = q.evaluate_jet(z);
    return 2.0 * jet.d1 + (z - u) * jet.d2;
}

Polynomial q_prime_polynomial(const Polynomial& q, cplx u) {
    const int m = q.degree();
    if (m < 1)
        fail(ErrorKind::DegreeTooLow, "q must have degree at least 1");
    const auto& c = q.coeffs();
    std::vector<cplx> d(m); // coefficients of q'
    for (int k = 1; k <= m; ++k)
        d[k - 1] = static_cast<double>(k) * c[k];
    std::vector<cplx> r(m + 1, cplx(0.0, 0.0)); // q + z q' - u q'
    for (int k = 0; k <= m; ++k) {
        r[k] = c[k];
        if (k >= 1)
            r[k] += d[k - 1];
        if (k <= m - 1)
            r[k] -= u * d[k];
    }
    return Polynomial(r);
}

cplx davidenko_rhs(const Polynomial& q, cplx u, cplx zeta, double singular_floor_rel) {
    const QDerivs d = eval_q_derivs(q, zeta, u);
    if (std::abs(d.qpp) <= singular_floor_rel * (1.0 + d.qpp_scale))
        fail(ErrorKind::BranchPointSingularity, "Q'' vanishes: branch point of the surface");
    const Jet2 jet = q.evaluate_jet(zeta);
    return jet.d1 / d.qpp;
}

const char* track_event_name(TrackEventKind kind) {
    switch (kind) {
    case TrackEventKind::BranchProximity:
        return "BranchProximity";
    case TrackEventKind::StepFloor:
        return "StepFloor";
    case TrackEventKind::CorrectorRetry:
        return "CorrectorRetry";
    }
    return "Unknown";
}

Trajectory track(const Polynomial& q, const Path& path, cplx zeta_start,
                 const TrackOptions& opts) {
    require_simple(q, opts.simple_tol);
    const cplx u0 = path.point(0.0);
    {
        const QDerivs d0 = eval_q_derivs(q, zeta_start, u0);
        if (std::abs(d0.qp) > opts.start_tol * (1.0 + d0.qp_scale)) {
            std::ostringstream msg;
            msg << "|Q'(zeta_start, path start)| = " << std::abs(d0.qp)
                << " is not a critical point within tolerance";
            fail(ErrorKind::StartNotCritical, msg.str());
        }
    }
    cplx zeta = zeta_start;
    if (!newton_correct(q, u0, zeta, opts.max_corrector_steps))
        fail(ErrorKind::NonConvergence, "failed to polish the start point onto Q' = 0");

    Trajectory traj;
    traj.start_zeta = zeta;
    push_sample(q, traj, 0.0, u0, zeta, 0.0, opts.branch_event_rel);

    const bool multi_sheet = q.degree() >= 2;
    double t = 0.0;
    double h = std::min(opts.initial_step, 1.0);
    long attempts = 0;
    while (t < 1.0) {
        if (++attempts > opts.max_attempts)
            fail(ErrorKind::NonConvergence, "tracking step budget exhausted");
        double t_new = t + h;
        double h_use = h;
        if (t_new > 1.0 - 1e-15) {
            t_new = 1.0;
            h_use = 1.0 - t;
        }
        bool ok = true;
        cplx zeta_new(0.0, 0.0);
        try {
            const cplx pred =
                predict(q, path, t, h_use, zeta, opts.rk4_predictor, opts.singular_floor_rel);
            zeta_new = pred;
            const cplx u_new = path.point(t_new);
            ok = newton_correct(q, u_new, zeta_new, opts.max_corrector_steps);
            if (ok && multi_sheet) {
                const RootList all = find_roots(q_prime_polynomial(q, u_new), opts.rootfind);
                const double gap = nearest_other_distance(all.roots, zeta_new);
                ok = std::abs(zeta_new - pred) < 0.5 * gap;
            }
        } catch (const NumericalError& e) {
            if (e.kind() == ErrorKind::BranchPointSingularity ||
                e.kind() == ErrorKind::NonConvergence)
                ok = false;
            else
                throw;
        }
        if (ok) {
            t = t_new;
            zeta = zeta_new;
            push_sample(q, traj, t, path.point(t), zeta, h_use, opts.branch_event_rel);
            h = std::min(h * 2.0, opts.max_step);
        } else {
            traj.events.push_back({t, TrackEventKind::CorrectorRetry});
            h *= 0.5;
            if (h < opts.step_floor) {
                traj.events.push_back({t, TrackEventKind::StepFloor});
                fail_step_floor(t);
            }
        }
    }
    traj.end_zeta = zeta;
    return traj;
}

std::vector<Trajectory> track_all(const Polynomial& q, const Path& path,
                                  const TrackOptions& opts) {
    require_simple(q, opts.simple_tol);
    const cplx u0 = path.point(0.0);
    const RootList start = find_roots(q_prime_polynomial(q, u0), opts.rootfind);
    const std::size_t sheets = start.roots.size();
    for (std::size_t i = 0; i < sheets; ++i)
        for (std::size_t j = i + 1; j < sheets; ++j)
            if (std::abs(start.roots[i] - start.roots[j]) <= opts.rootfind.cluster_tol)
                fail(ErrorKind::DegenerateConfiguration,
                     "critical points at the path start are not simple");

    std::vector<cplx> zeta(start.roots); // lexicographically sorted by find_roots
    std::vector<Trajectory> trajs(sheets);
    for (std::size_t i = 0; i < sheets; ++i) {
        cplx z = zeta[i];
        newton_correct(q, u0, z, opts.max_corrector_steps);
        zeta[i] = z;
        trajs[i].start_zeta = z;
        push_sample(q, trajs[i], 0.0, u0, z, 0.0, opts.branch_event_rel);
    }

    double t = 0.0;
    double h = std::min(opts.initial_step, 1.0);
    long attempts = 0;
    std::vector<cplx> zeta_new(sheets), pred(sheets);
    while (t < 1.0) {
        if (++attempts > opts.max_attempts)
            fail(ErrorKind::NonConvergence, "tracking step budget exhausted");
        double t_new = t + h;
        double h_use = h;
        if (t_new > 1.0 - 1e-15) {
            t_new = 1.0;
            h_use = 1.0 - t;
        }
        const cplx u_new = path.point(t_new);
        bool ok = true;
        std::size_t failing_sheet = 0;
        try {
            for (std::size_t i = 0; i < sheets; ++i) {
                pred[i] = predict(q, path, t, h_use, zeta[i], opts.rk4_predictor,
                                  opts.singular_floor_rel);
                zeta_new[i] = pred[i];
                if (!newton_correct(q, u_new, zeta_new[i], opts.max_corrector_steps)) {
                    ok = false;
                    failing_sheet = i;
                    break;
                }
            }
            if (ok) {
                // corrected positions must stay pairwise separated
                for (std::size_t i = 0; i < sheets; ++i)
                    for (std::size_t j = i + 1; j < sheets; ++j)
                        if (std::abs(zeta_new[i] - zeta_new[j]) <= opts.rootfind.cluster_tol)
                            fail(ErrorKind::SheetCollision,
                                 "two sheets approached within the cluster threshold");
                // and match the full root set of Q'(., u) bijectively
                const RootList all = find_roots(q_prime_polynomial(q, u_new), opts.rootfind);
                std::vector<int> taken(all.roots.size(), -1);
                for (std::size_t i = 0; i < sheets && ok; ++i) {
                    std::size_t best_j = 0;
                    double best = std::numeric_limits<double>::infinity();
                    for (std::size_t j = 0; j < all.roots.size(); ++j) {
                        const double d = std::abs(zeta_new[i] - all.roots[j]);
                        if (d < best) {
                            best = d;
                            best_j = j;
                        }
                    }
                    if (best > 1e-8 * (1.0 + std::abs(zeta_new[i]))) {
                        ok = false;
                        failing_sheet = i;
                        break;
                    }
                    if (taken[best_j] >= 0)
                        fail(ErrorKind::SheetCollision,
                             "two sheets converged to the same critical point");
                    taken[best_j] = static_cast<int>(i);
                    const double gap = nearest_other_distance(all.roots, zeta_new[i]);
                    if (!(std::abs(zeta_new[i] - pred[i]) < 0.5 * gap)) {
                        ok = false;
                        failing_sheet = i;
                    }
                }
            }
        } catch (const NumericalError& e) {
            if (e.kind() == ErrorKind::BranchPointSingularity ||
                e.kind() == ErrorKind::NonConvergence) {
                ok = false;
            } else {
                throw;
            }
        }
        if (ok) {
            t = t_new;
            zeta = zeta_new;
            for (std::size_t i = 0; i < sheets; ++i)
                push_sample(q, trajs[i], t, u_new, zeta[i], h_use, opts.branch_event_rel);
            h = std::min(h * 2.0, opts.max_step);
        } else {
            trajs[failing_sheet].events.push_back({t, TrackEventKind::CorrectorRetry});
            h *= 0.5;
            if (h < opts.step_floor) {
                for (auto& traj : trajs)
                    traj.events.push_back({t, TrackEventKind::StepFloor});
                fail_step_floor(t);
            }
        }
    }
    for (std::size_t i = 0; i < sheets; ++i)
        trajs[i].end_zeta = zeta[i];
    return trajs;
}

} // namespace sendovlab
