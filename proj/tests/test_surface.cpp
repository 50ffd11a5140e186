#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "sendovlab/errors.hpp"
#include "sendovlab/path.hpp"
#include "sendovlab/polynomial.hpp"
#include "sendovlab/rng.hpp"
#include "sendovlab/surface.hpp"
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

Polynomial random_q(Rng& rng, int m) {
    std::vector<cplx> roots;
    for (int i = 0; i < m; ++i)
        roots.push_back(rng.unit_disk());
    return from_roots(roots);
}

bool is_transposition(const std::vector<int>& perm) {
    int moved = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (perm[i] < 0 || perm[i] >= static_cast<int>(perm.size()))
            return false;
        if (perm[i] != static_cast<int>(i))
            ++moved;
    }
    if (moved != 2)
        return false;
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (perm[static_cast<std::size_t>(perm[i])] != static_cast<int>(i))
            return false;
    return true;
}

bool is_identity(const std::vector<int>& perm) {
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (perm[i] != static_cast<int>(i))
            return false;
    return true;
}

} // namespace

TEST_CASE("discriminant-style polynomial evaluates as 2 q'^2 - q q''") {
    Rng rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        const int m = 2 + static_cast<int>(rng.uniform01() * 4);
        std::vector<cplx> coeffs;
        for (int k = 0; k <= m; ++k)
            coeffs.emplace_back(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        coeffs.back() += 2.0;
        const Polynomial q(coeffs);
        const Polynomial B = branch_polynomial(q);
        const int n = m + 1;
        REQUIRE(B.degree() == 2 * n - 4);
        // leading coefficient m (m+1) c^2
        const cplx c = q.leading();
        CHECK(std::abs(B.leading() - static_cast<double>(m) * (m + 1.0) * c * c) <=
              1e-12 * std::abs(B.leading()));
        for (int j = 0; j < 5; ++j) {
            const cplx w(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
            const Jet2 jet = q.evaluate_jet(w);
            const cplx want = 2.0 * jet.d1 * jet.d1 - jet.value * jet.d2;
            CHECK(std::abs(B.evaluate(w) - want) <= 1e-10 * (1.0 + std::abs(want)));
        }
    }
}

TEST_CASE("branch locus of the symmetric quadratic family, closed form") {
    for (const double c : {0.5, 0.9}) {
        const Polynomial q({cplx(-c * c), cplx(0.0), cplx(1.0)});
        const std::vector<BranchPoint> locus = branch_locus(q);
        REQUIRE(locus.size() == 2);
        const double w_want = c / std::sqrt(3.0);
        const double u_want = std::sqrt(3.0) * c;
        // lex order puts the negative-imaginary point first
        CHECK(std::abs(locus[0].w - cplx(0.0, -w_want)) <= 1e-10);
        CHECK(std::abs(locus[1].w - cplx(0.0, w_want)) <= 1e-10);
        CHECK(std::abs(locus[0].u - cplx(0.0, -u_want)) <= 1e-10);
        CHECK(std::abs(locus[1].u - cplx(0.0, u_want)) <= 1e-10);
        for (const BranchPoint& bp : locus)
            CHECK(bp.residual <= 1e-10);
    }
}

TEST_CASE("branch count and projection consistency on random polynomials") {
    Rng rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        const int m = 2 + static_cast<int>(rng.uniform01() * 4);
        const Polynomial q = random_q(rng, m);
        if (!is_simple(q).simple)
            continue;
        const std::vector<BranchPoint> locus = branch_locus(q);
        const int n = m + 1;
        CHECK(locus.size() == static_cast<std::size_t>(2 * n - 4));
        for (const BranchPoint& bp : locus) {
            CHECK(bp.residual <= 1e-10);
            // u = phi(w) must reproduce the projection
            CHECK(std::abs(bp.u - phi(q, bp.w)) <= 1e-9 * (1.0 + std::abs(bp.u)));
            // the second derivative of the shifted product vanishes there too,
            // the other characterization of a branch point
            const Jet2 jet = q.evaluate_jet(bp.w);
            const double scale =
                2.0 * std::abs(jet.d1) + std::abs(bp.w - bp.u) * std::abs(jet.d2);
            CHECK(std::abs(q_second_of_Q(q, bp.w, bp.u)) <= 1e-8 * (1.0 + scale));
        }
    }
    // a linear q has no branch point at all
    CHECK(branch_locus(Polynomial({cplx(1.0), cplx(1.0)})).empty());
}

TEST_CASE("the projection undoes tracking at every sample") {
    Rng rng(47);
    for (int trial = 0; trial < 10; ++trial) {
        const Polynomial q = random_q(rng, 2 + static_cast<int>(rng.uniform01() * 3));
        if (!is_simple(q).simple)
            continue;
        const Path path = Path::line(cplx(2.0, 2.0), cplx(3.0, 1.0));
        bool clear = true;
        for (const BranchPoint& bp : branch_locus(q))
            clear = clear && path_distance(path, bp.u) >= 0.2;
        if (!clear)
            continue;
        for (const Trajectory& traj : track_all(q, path))
            for (const TrajectorySample& s : traj.samples)
                CHECK(std::abs(phi(q, s.zeta) - s.u) <= 1e-9 * (1.0 + std::abs(s.u)));
    }
}

TEST_CASE("projection map and its singularity") {
    const Polynomial q({cplx(-0.25), cplx(0.0), cplx(1.0)});
    Rng rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        const cplx w(rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0));
        const cplx want = w + q.evaluate(w) / (2.0 * w);
        CHECK(std::abs(phi(q, w) - want) <= 1e-12 * (1.0 + std::abs(want)));
    }
    CHECK(kind_of([&q] { phi(q, cplx(0.0)); }) == ErrorKind::ProjectionSingular);
}

TEST_CASE("disk verdicts for the quadratic family") {
    // c = 0.9: both branch projections leave the unit circle, conjugate pair
    const BranchDiskReport wide = branch_disk_report(Polynomial({cplx(-0.81), cplx(0.0), cplx(1.0)}));
    REQUIRE(wide.rows.size() == 2);
    CHECK(wide.violation_count == 2);
    for (const BranchDiskRow& row : wide.rows) {
        CHECK(row.violation);
        CHECK(row.status == DiskClaimStatus::Violation);
        CHECK(std::abs(row.abs_phi - 1.5588457268119895) <= 1e-6);
    }
    CHECK(std::abs(wide.rows[0].point.w - std::conj(wide.rows[1].point.w)) <= 1e-10);

    // c = 0.5: everything stays inside
    const BranchDiskReport narrow =
        branch_disk_report(Polynomial({cplx(-0.25), cplx(0.0), cplx(1.0)}));
    REQUIRE(narrow.rows.size() == 2);
    CHECK(narrow.violation_count == 0);
    for (const BranchDiskRow& row : narrow.rows) {
        CHECK(!row.violation);
        CHECK(std::abs(row.abs_phi - 0.8660254037844386) <= 1e-6);
    }
}

TEST_CASE("large-radius behaviour separates one escaping sheet") {
    Rng rng(44);
    for (int m = 1; m <= 4; ++m) {
        const Polynomial q = random_q(rng, m);
        if (!is_simple(q).simple || !is_simple(q.degree() >= 2 ? q.derivative() : q).simple)
            continue;
        const SheetAtInfinityReport rep = sheets_at_infinity(q, 100.0);
        REQUIRE(rep.per_sheet.size() == static_cast<std::size_t>(m));
        CHECK(rep.unbounded_count == 1);
        const int n = m + 1;
        for (const SheetInfo& sheet : rep.per_sheet) {
            if (sheet.kind == SheetKind::Unbounded) {
                CHECK(std::abs(sheet.ratio - cplx(static_cast<double>(n - 1) / n)) <= 1e-4);
            } else {
                CHECK(sheet.match_error <= 1e-3);
            }
        }
    }
    CHECK(kind_of([] {
              sheets_at_infinity(Polynomial({cplx(1.0), cplx(1.0)}), 2.0);
          }) == ErrorKind::BadInput);
}

TEST_CASE("bounded sheets settle on the critical points of q") {
    const double c = 0.6;
    const Polynomial q({cplx(-c * c), cplx(0.0), cplx(1.0)}); // q' has its root at 0
    const SheetAtInfinityReport rep = sheets_at_infinity(q, 100.0);
    REQUIRE(rep.per_sheet.size() == 2);
    int bounded = 0;
    for (const SheetInfo& sheet : rep.per_sheet)
        if (sheet.kind == SheetKind::Bounded) {
            ++bounded;
            CHECK(std::abs(sheet.matched_root) <= 1e-12);
            CHECK(std::abs(sheet.limit) <= 1e-4);
        }
    CHECK(bounded == 1);
}

TEST_CASE("keyhole loops are closed and keep their distance") {
    const cplx basepoint(2.0, 0.5);
    const cplx target(0.0, 1.0);
    const Path loop = keyhole_loop(basepoint, target, 0.25);
    CHECK(loop.closed(1e-9));
    CHECK(std::abs(loop.start() - basepoint) <= 1e-12);
    CHECK(path_distance(loop, target) == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(kind_of([] { keyhole_loop(cplx(0.1), cplx(0.0), 0.5); }) == ErrorKind::BadInput);
}

TEST_CASE("point-to-path distance agrees with dense sampling") {
    Rng rng(45);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<PathSegment> segs;
        const cplx a(rng.uniform(-2, 2), rng.uniform(-2, 2));
        const cplx b(rng.uniform(-2, 2), rng.uniform(-2, 2));
        segs.push_back(PathSegment::line(a, b));
        segs.push_back(PathSegment::arc(b + cplx(0.5), 0.5, std::arg(-cplx(0.5)),
                                        std::arg(-cplx(0.5)) + rng.uniform(0.5, 5.0)));
        const Path path(segs);
        const cplx x(rng.uniform(-3, 3), rng.uniform(-3, 3));
        double sampled = 1e300;
        for (int i = 0; i <= 20000; ++i)
            sampled = std::min(sampled, std::abs(path.point(i / 20000.0) - x));
        CHECK(path_distance(path, x) <= sampled + 1e-12);
        CHECK(path_distance(path, x) >= sampled - 1e-3);
    }
}

TEST_CASE("loop permutations of the quadratic family") {
    const double c = 0.5;
    const Polynomial q({cplx(-c * c), cplx(0.0), cplx(1.0)});
    const MonodromyReport rep = auto_monodromy(q);
    REQUIRE(rep.sheet_labels.size() == 2);
    REQUIRE(rep.permutations.size() == 3); // two branch points and the big circle
    CHECK(is_transposition(rep.permutations[0]));
    CHECK(is_transposition(rep.permutations[1]));
    CHECK(is_identity(rep.permutations[2]));
    CHECK(is_identity(rep.product));
}

TEST_CASE("explicit loops: closure and clearance are enforced") {
    const double c = 0.5;
    const Polynomial q({cplx(-c * c), cplx(0.0), cplx(1.0)});
    const cplx basepoint(3.0, 0.0);
    CHECK(kind_of([&] {
              monodromy(q, basepoint, {Path::line(basepoint, basepoint + cplx(1.0))});
          }) == ErrorKind::LoopNotClosed);
    // a loop passing straight through a branch projection
    const cplx bp(0.0, std::sqrt(3.0) * c);
    std::vector<PathSegment> segs = {
        PathSegment::line(basepoint, bp),
        PathSegment::line(bp, basepoint),
    };
    CHECK(kind_of([&] { monodromy(q, basepoint, {Path(segs)}); }) == ErrorKind::BadInput);
    // a base point sitting on the locus itself
    CHECK_THROWS_AS(monodromy(q, bp, {Path::circle(bp, 0.1)}), NumericalError);
}

TEST_CASE("a big circle around everything permutes nothing") {
    Rng rng(46);
    int done = 0;
    while (done < 6) {
        const int m = 1 + static_cast<int>(rng.uniform01() * 3);
        const Polynomial q = random_q(rng, m);
        if (!is_simple(q).simple)
            continue;
        double far = 1.0;
        for (const BranchPoint& bp : branch_locus(q))
            far = std::max(far, std::abs(bp.u));
        const double radius = 2.0 * far + 1.0;
        const MonodromyReport rep =
            monodromy(q, cplx(radius), {Path::circle(cplx(0.0), radius)});
        REQUIRE(rep.permutations.size() == 1);
        CHECK(is_identity(rep.permutations[0]));
        ++done;
    }
}
