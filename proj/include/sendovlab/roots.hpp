#pragma once

#include <optional>
#include <vector>

#include "sendovlab/polynomial.hpp"

namespace sendovlab {

struct RootFindOptions {
    int max_iterations = 500;
    double residual_tol = 1e-13; // scaled backward-error target
    double cluster_tol = 1e-7;   // roots closer than this form a cluster
};

/// All roots of a polynomial, sorted lexicographically by (re, im).
/// residual_bound is the largest scaled residual |p(root)| / eval_scale(root).
struct RootList {
    std::vector<cplx> roots;
    double residual_bound = 0.0;

    /// Groups of root indices closer than the cluster tolerance (size >= 2
    /// each); nonempty means the polynomial has a (numerically) multiple root.
    std::vector<std::vector<int>> clusters;
};

/// Aberth-Ehrlich simultaneous iteration with Newton polish.  Exact zero
/// roots (trailing zero coefficients) are deflated first, so monomials like
/// z^k come back with exact zeros.  Deterministic: fixed initial placements.
RootList find_roots(const Polynomial& p, const RootFindOptions& opts = {});

struct SimplicityWitness {
    bool on_derivative = false; // offending pair lives among the roots of p'
    cplx a;
    cplx b;
    double distance = 0.0;
};

struct SimplicityReport {
    bool simple = true;
    std::optional<SimplicityWitness> witness;
};

/// True iff the roots of p are pairwise farther than tol apart and the same
/// holds for the roots of p'.
SimplicityReport is_simple(const Polynomial& p, double tol = 1e-7,
                           const RootFindOptions& opts = {});

/// Throws DegenerateConfiguration unless is_simple(p, tol) holds.
void require_simple(const Polynomial& p, double tol = 1e-7);

} // namespace sendovlab
