#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "sendovlab/errors.hpp"
#include "sendovlab/path.hpp"
#include "sendovlab/polynomial.hpp"
#include "sendovlab/rng.hpp"
#include "sendovlab/roots.hpp"
#include "sendovlab/tracker.hpp"

using namespace sendovlab;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const NumericalError& e) {
        return e.kind();
    }
    FAIL("expected a NumericalError");
    return ErrorKind::BadInput;
}

// the two critical points of (z - u)(z^2 - c^2): roots of 3z^2 - 2uz - c^2
cplx quad_sheet(cplx u, double c, int sign) {
    const cplx s = std::sqrt(u * u + 3.0 * c * c);
    return (u + (sign > 0 ? s : -s)) / 3.0;
}

// follow the closed form along the path by continuity, never by sign label:
// std::sqrt branch cuts would otherwise flip the sheet mid-path
cplx quad_sheet_continued(const Path& path, double c, cplx start, int grid = 4000) {
    cplx cur = start;
    for (int i = 1; i <= grid; ++i) {
        const cplx u = path.point(static_cast<double>(i) / grid);
        const cplx plus = quad_sheet(u, c, +1);
        const cplx minus = quad_sheet(u, c, -1);
        cur = std::abs(plus - cur) < std::abs(minus - cur) ? plus : minus;
    }
    return cur;
}

} // namespace

TEST_CASE("shifted-product derivative pieces at random points") {
    Rng rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        const int m = 1 + static_cast<int>(rng.uniform01() * 5);
        std::vector<cplx> coeffs;
        for (int k = 0; k <= m; ++k)
            coeffs.emplace_back(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        coeffs.back() += 2.0;
        const Polynomial q(coeffs);
        const cplx u(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
        const cplx z(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));

        const Jet2 jet = q.evaluate_jet(z);
        const cplx want_p = jet.value + (z - u) * jet.d1;
        const cplx want_pp = 2.0 * jet.d1 + (z - u) * jet.d2;
        CHECK(std::abs(q_prime_of_Q(q, z, u) - want_p) <= 1e-12 * (1.0 + std::abs(want_p)));
        CHECK(std::abs(q_second_of_Q(q, z, u) - want_pp) <= 1e-12 * (1.0 + std::abs(want_pp)));

        const Polynomial qp = q_prime_polynomial(q, u);
        REQUIRE(qp.degree() == m);
        CHECK(std::abs(qp.evaluate(z) - want_p) <= 1e-11 * (1.0 + std::abs(want_p)));
    }
}

TEST_CASE("velocity field against the linear closed form") {
    // q = z - b gives the critical point (u + b) / 2, so d zeta / d u = 1/2
    Rng rng(32);
    for (int trial = 0; trial < 10; ++trial) {
        const cplx b(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        const Polynomial q({-b, cplx(1.0)});
        const cplx u(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        const cplx zeta = (u + b) / 2.0;
        CHECK(std::abs(davidenko_rhs(q, u, zeta) - cplx(0.5)) <= 1e-12);
    }
}

TEST_CASE("velocity field against a numerical derivative on a quadratic") {
    const double c = 0.7;
    const Polynomial q({cplx(-c * c), cplx(0.0), cplx(1.0)});
    Rng rng(33);
    for (int trial = 0; trial < 10; ++trial) {
        const cplx u(rng.uniform(-1.0, 1.0), rng.uniform(2.0, 3.0)); // far from the branch points
        const cplx zeta = quad_sheet(u, c, +1);
        const double h = 1e-6;
        const cplx fd = (quad_sheet(u + h, c, +1) - quad_sheet(u - h, c, +1)) / (2.0 * h);
        CHECK(std::abs(davidenko_rhs(q, u, zeta) - fd) <= 1e-6 * (1.0 + std::abs(fd)));
    }
}

TEST_CASE("velocity field refuses the branch point") {
    // branch points of (z - u)(z^2 - c^2) sit at u = +/- i c sqrt 3
    const double c = 0.5;
    const Polynomial q({cplx(-c * c), cplx(0.0), cplx(1.0)});
    const cplx u(0.0, c * std::sqrt(3.0));
    const cplx zeta(0.0, c / std::sqrt(3.0));
    CHECK(std::abs(q_prime_of_Q(q, zeta, u)) <= 1e-12);
    CHECK(kind_of([&] { davidenko_rhs(q, u, zeta); }) == ErrorKind::BranchPointSingularity);
}

TEST_CASE("tracking the linear family reproduces its closed form everywhere") {
    Rng rng(34);
    for (int trial = 0; trial < 15; ++trial) {
        const cplx b(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        const Polynomial q({-b, cplx(1.0)});
        const cplx u0(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        const cplx u1(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0) + 3.0);
        const Path path = Path::line(u0, u1);
        const Trajectory traj = track(q, path, (u0 + b) / 2.0);
        for (const TrajectorySample& s : traj.samples)
            CHECK(std::abs(s.zeta - (s.u + b) / 2.0) <= 1e-10);
        CHECK(std::abs(traj.end_zeta - (u1 + b) / 2.0) <= 1e-10);
        CHECK(traj.events.empty());
    }
}

TEST_CASE("tracking around a circle returns to the start on the linear family") {
    const cplx b(0.3, -0.4);
    const Polynomial q({-b, cplx(1.0)});
    const Path loop = Path::circle(cplx(0.0), 2.0);
    const cplx start = (loop.start() + b) / 2.0;
    const Trajectory traj = track(q, loop, start);
    CHECK(std::abs(traj.end_zeta - start) <= 1e-10);
}

TEST_CASE("tracking a quadratic matches the continuity-followed formula") {
    Rng rng(35);
    const double c = 0.6;
    const Polynomial q({cplx(-c * c), cplx(0.0), cplx(1.0)});
    int done = 0;
    while (done < 12) {
        const cplx u0(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
        const cplx u1(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
        const Path path = Path::line(u0, u1);
        // keep clear of the two branch points
        const double clear = std::min(std::min(std::abs(u0 - cplx(0, c * std::sqrt(3.0))),
                                               std::abs(u1 - cplx(0, c * std::sqrt(3.0)))),
                                      std::min(std::abs(u0 + cplx(0, c * std::sqrt(3.0))),
                                               std::abs(u1 + cplx(0, c * std::sqrt(3.0)))));
        double path_clear = 1e300;
        for (int i = 0; i <= 100; ++i) {
            const cplx u = path.point(i / 100.0);
            path_clear = std::min(path_clear, std::abs(u - cplx(0, c * std::sqrt(3.0))));
            path_clear = std::min(path_clear, std::abs(u + cplx(0, c * std::sqrt(3.0))));
        }
        if (std::min(clear, path_clear) < 0.3)
            continue;
        ++done;
        for (const int sign : {+1, -1}) {
            const cplx start = quad_sheet(u0, c, sign);
            const Trajectory traj = track(q, path, start);
            const cplx want = quad_sheet_continued(path, c, start);
            CHECK(std::abs(traj.end_zeta - want) <= 1e-8);
        }
    }
}

TEST_CASE("start point must be critical for the starting parameter") {
    const Polynomial q({cplx(1.0), cplx(1.0)});
    const Path path = Path::line(cplx(0.0), cplx(1.0));
    CHECK(kind_of([&] { track(q, path, cplx(5.0, 5.0)); }) == ErrorKind::StartNotCritical);
}

TEST_CASE("a path through a branch point is refused rather than crossed") {
    const double c = 0.5;
    const Polynomial q({cplx(-c * c), cplx(0.0), cplx(1.0)});
    const cplx bp(0.0, c * std::sqrt(3.0));
    const Path path = Path::line(bp - cplx(1.0, 0.0), bp + cplx(1.0, 0.0));
    const cplx start = quad_sheet(path.start(), c, +1);
    CHECK_THROWS_AS(track(q, path, start), NumericalError);
}

TEST_CASE("repeated factors in q are rejected up front") {
    const Polynomial q = from_roots({cplx(0.5), cplx(0.5)});
    const Path path = Path::line(cplx(0.0), cplx(1.0));
    CHECK_THROWS_AS(track(q, path, cplx(0.0)), NumericalError);
}

TEST_CASE("lockstep continuation keeps the whole fiber bijective") {
    Rng rng(36);
    for (int trial = 0; trial < 10; ++trial) {
        const int m = 2 + static_cast<int>(rng.uniform01() * 3);
        std::vector<cplx> roots;
        for (int i = 0; i < m; ++i)
            roots.push_back(rng.unit_disk());
        const Polynomial q = from_roots(roots);
        const cplx u0(3.0 + rng.uniform01(), 2.0 + rng.uniform01());
        const cplx u1(-3.0 - rng.uniform01(), 2.5 + rng.uniform01());
        std::vector<Trajectory> trajs;
        try {
            trajs = track_all(q, Path::line(u0, u1));
        } catch (const NumericalError&) {
            continue; // a branch point too close to the segment; not this test's concern
        }
        REQUIRE(trajs.size() == static_cast<std::size_t>(m));
        // endpoints must match the directly computed fiber at u1, one for one
        std::vector<cplx> fiber = find_roots(q_prime_polynomial(q, u1)).roots;
        REQUIRE(fiber.size() == trajs.size());
        std::vector<bool> taken(fiber.size(), false);
        for (const Trajectory& t : trajs) {
            double best = 1e300;
            std::size_t at = 0;
            for (std::size_t j = 0; j < fiber.size(); ++j)
                if (!taken[j] && std::abs(t.end_zeta - fiber[j]) < best) {
                    best = std::abs(t.end_zeta - fiber[j]);
                    at = j;
                }
            CHECK(best <= 1e-8 * (1.0 + std::abs(t.end_zeta)));
            taken[at] = true;
        }
        // and the per-sample residuals stay at solver accuracy
        for (const Trajectory& t : trajs)
            for (const TrajectorySample& s : t.samples)
                CHECK(s.residual <= 1e-9 * (1.0 + q.coeff_scale()));
    }
}

TEST_CASE("tracking twice gives bit-identical trajectories") {
    const Polynomial q({cplx(-0.36), cplx(0.0), cplx(1.0)});
    const Path path = Path::line(cplx(2.0, 1.0), cplx(-1.0, 2.0));
    const cplx start = quad_sheet(cplx(2.0, 1.0), 0.6, +1);
    const Trajectory a = track(q, path, start);
    const Trajectory b = track(q, path, start);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].t == b.samples[i].t);
        CHECK(a.samples[i].u == b.samples[i].u);
        CHECK(a.samples[i].zeta == b.samples[i].zeta);
        CHECK(a.samples[i].residual == b.samples[i].residual);
    }
}

TEST_CASE("a constant path leaves the critical point in place") {
    const Polynomial q({cplx(1.0), cplx(1.0)});
    const Trajectory traj = track(q, Path::constant(cplx(0.0)), cplx(-0.5));
    CHECK(traj.end_zeta == traj.start_zeta);
    for (const TrajectorySample& s : traj.samples) {
        CHECK(s.zeta == cplx(-0.5));
        CHECK(s.residual == 0.0);
    }
}

TEST_CASE("halving the step cap barely moves the endpoint") {
    const Polynomial q = from_roots({cplx(0.3, 0.1), cplx(-0.5, -0.2), cplx(0.1, 0.6)});
    const Path path = Path::line(cplx(2.0, 2.0), cplx(-1.5, 2.5));
    const std::vector<cplx> fiber = find_roots(q_prime_polynomial(q, path.start())).roots;
    for (const cplx& start : fiber) {
        TrackOptions coarse;
        TrackOptions fine;
        fine.initial_step /= 2.0;
        fine.max_step /= 2.0;
        const Trajectory a = track(q, path, start, coarse);
        const Trajectory b = track(q, path, start, fine);
        CHECK(std::abs(a.end_zeta - b.end_zeta) <= 1e-8);
    }
}

TEST_CASE("lockstep continuation around a small regular loop closes up") {
    const Polynomial q = from_roots({cplx(0.3, 0.0), cplx(0.0, -0.5)});
    // far from the branch projections of any q with zeros in the unit disk
    const Path loop = Path::circle(cplx(2.0, 2.0), 0.1);
    const std::vector<Trajectory> trajs = track_all(q, loop);
    REQUIRE(trajs.size() == 2);
    for (const Trajectory& t : trajs)
        CHECK(std::abs(t.end_zeta - t.start_zeta) <= 1e-8);
}
