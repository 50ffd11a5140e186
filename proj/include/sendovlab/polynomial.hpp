#pragma once

#include <complex>
#include <vector>

#include "sendovlab/errors.hpp"

namespace sendovlab {

using cplx = std::complex<double>;

/// Value of a polynomial together with its first two derivatives at a point,
/// computed in a single Horner pass.
struct Jet2 {
    cplx value;
    cplx d1;
    cplx d2;
};

/// Complex-coefficient polynomial, coefficients stored in ascending degree
/// with a nonzero leading coefficient.  Immutable after construction.
class Polynomial {
public:
    /// coeffs[k] multiplies z^k; the last entry must be nonzero and every
    /// entry finite.
    explicit Polynomial(std::vector<cplx> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<cplx>& coeffs() const { return coeffs_; }
    cplx leading() const { return coeffs_.back(); }

    /// Largest coefficient modulus; the scale used by relative tolerances.
    double coeff_scale() const;

    cplx evaluate(cplx z) const;
    Jet2 evaluate_jet(cplx z) const;

    /// Sum_k |c_k| |z|^k, the backward-error scale of evaluate() at z.
    double eval_scale(cplx z) const;

    /// Coefficient-wise derivative; degree drops by exactly one.
    Polynomial derivative() const;

    bool operator==(const Polynomial& other) const { return coeffs_ == other.coeffs_; }

private:
    std::vector<cplx> coeffs_;
};

/// Monic polynomial with exactly the given roots (with multiplicity).
Polynomial from_roots(const std::vector<cplx>& roots);

Polynomial multiply(const Polynomial& a, const Polynomial& b);

/// Synthetic division by (z - root), discarding the remainder.  Exact when
/// root is a true root of p.
Polynomial deflate(const Polynomial& p, cplx root);

/// r^n p(z/r); maps each root z0 of p to r*z0.
Polynomial scale(const Polynomial& p, double r);

} // namespace sendovlab
