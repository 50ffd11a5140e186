#pragma once

#include <vector>

#include "sendovlab/path.hpp"
#include "sendovlab/polynomial.hpp"
#include "sendovlab/roots.hpp"

namespace sendovlab {

// Derivatives in z of the one-zero variation Q(z,u) = (z-u) q(z):
//   Q'(z,u)  = q(z) + (z-u) q'(z)
//   Q''(z,u) = 2 q'(z) + (z-u) q''(z)
cplx q_prime_of_Q(const Polynomial& q, cplx z, cplx u);
cplx q_second_of_Q(const Polynomial& q, cplx z, cplx u);

// Q'(., u) as a polynomial in z. Its degree equals degree(q) and its leading
// coefficient is (degree(q)+1) times the leading coefficient of q, so the
// critical points of Q(., u) are exactly its roots.
Polynomial q_prime_polynomial(const Polynomial& q, cplx u);

// Right-hand side of the continuation ODE dzeta/du = q'(zeta)/Q''(zeta,u),
// valid along the branch defined by Q'(zeta,u) = 0. Throws
// BranchPointSingularity when |Q''| falls below singular_floor_rel times its
// evaluation magnitude (the branch-point case).
cplx davidenko_rhs(const Polynomial& q, cplx u, cplx zeta,
                   double singular_floor_rel = 1e-10);

enum class TrackEventKind { BranchProximity, StepFloor, CorrectorRetry };

const char* track_event_name(TrackEventKind kind);

struct TrackEvent {
    double t;
    TrackEventKind kind;
};

struct TrajectorySample {
    double t;
    cplx u;
    cplx zeta;
    double residual; // |Q'(zeta, u)|
    double step;     // t-step that produced this sample (0 for the start)
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    std::vector<TrackEvent> events;
    cplx start_zeta{0.0, 0.0};
    cplx end_zeta{0.0, 0.0};
};

struct TrackOptions {
    double start_tol = 1e-8;          // start residual, relative to local magnitude
    double initial_step = 1e-2;       // in the path parameter t
    double max_step = 1e-2;           // cap when doubling after successes
    double step_floor = 1e-8;         // below this, give up: PathNearBranchPoint
    int max_corrector_steps = 8;
    long max_attempts = 200000;
    double branch_event_rel = 1e-6;   // |Q''| below this x magnitude -> event
    double singular_floor_rel = 1e-10;
    bool rk4_predictor = true;        // false: explicit Euler
    double simple_tol = 1e-7;
    RootFindOptions rootfind;
};

// Continue the critical point zeta_start of Q(., path(0)) along the path.
// The corrector accepts a step only when Newton converged and the corrected
// point is closer to the prediction than half the distance to any other root
// of Q'(., u), so the trajectory cannot silently jump sheets.
Trajectory track(const Polynomial& q, const Path& path, cplx zeta_start,
                 const TrackOptions& opts = {});

// Continue every critical point of Q(., path(0)) in lockstep on a shared
// adaptive grid. At each accepted grid point the corrected positions must
// match the root set of Q'(., u) bijectively within 1e-8; trajectories are
// ordered by their lexicographically sorted start points.
std::vector<Trajectory> track_all(const Polynomial& q, const Path& path,
                                  const TrackOptions& opts = {});

} // namespace sendovlab
