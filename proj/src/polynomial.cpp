#include "sendovlab/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace sendovlab {

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty())
        fail(ErrorKind::BadInput, "polynomial needs at least one coefficient");
    for (const cplx& c : coeffs_)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            fail(ErrorKind::BadInput, "polynomial coefficients must be finite");
    if (std::abs(coeffs_.back()) == 0.0)
        fail(ErrorKind::BadInput, "leading coefficient must be nonzero");
}

double Polynomial::coeff_scale() const {
    double scale = 0.0;
    for (const cplx& c : coeffs_)
        scale = std::max(scale, std::abs(c));
    return scale;
}

cplx Polynomial::evaluate(cplx z) const {
    cplx acc = coeffs_.back();
    for (int k = degree() - 1; k >= 0; --k)
        acc = acc * z + coeffs_[k];
    return acc;
}

Jet2 Polynomial::evaluate_jet(cplx z) const {
    // Horner for p, p' and p''/2 in one pass.
    cplx p = coeffs_.back();
    cplx dp = 0.0;
    cplx d2p_half = 0.0;
    for (int k = degree() - 1; k >= 0; --k) {
        d2p_half = d2p_half * z + dp;
        dp = dp * z + p;
        p = p * z + coeffs_[k];
    }
    return {p, dp, 2.0 * d2p_half};
}

double Polynomial::eval_scale(cplx z) const {
    const double az = std::abs(z);
    double acc = std::abs(coeffs_.back());
    for (int k = degree() - 1; k >= 0; --k)
        acc = acc * az + std::abs(coeffs_[k]);
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (degree() < 1)
        fail(ErrorKind::DegreeTooLow, "cannot differentiate a degree-0 polynomial");
    std::vector<cplx> out(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        out[k - 1] = static_cast<double>(k) * coeffs_[k];
    return Polynomial(std::move(out));
}

Polynomial from_roots(const std::vector<cplx>& roots) {
    if (roots.empty())
        fail(ErrorKind::BadInput, "from_roots needs at least one root");
    std::vector<cplx> coeffs{1.0};
    for (const cplx& r : roots) {
        // multiply by (z - r)
        coeffs.push_back(coeffs.back());
        for (std::size_t k = coeffs.size() - 2; k >= 1; --k)
            coeffs[k] = coeffs[k - 1] - r * coeffs[k];
        coeffs[0] = -r * coeffs[0];
    }
    return Polynomial(std::move(coeffs));
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
    std::vector<cplx> out(a.coeffs().size() + b.coeffs().size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
            out[i + j] += a.coeffs()[i] * b.coeffs()[j];
    return Polynomial(std::move(out));
}

Polynomial deflate(const Polynomial& p, cplx root) {
    const int n = p.degree();
    if (n < 1)
        fail(ErrorKind::DegreeTooLow, "cannot deflate a constant polynomial");
    std::vector<cplx> b(n);
    b[n - 1] = p.coeffs()[n];
    for (int k = n - 1; k >= 1; --k)
        b[k - 1] = p.coeffs()[k] + root * b[k];
    return Polynomial(std::move(b));
}

Polynomial scale(const Polynomial& p, double r) {
    if (!(r > 0.0) || !std::isfinite(r))
        fail(ErrorKind::BadInput, "scale factor must be finite and positive");
    const int n = p.degree();
    std::vector<cplx> out(p.coeffs());
    // r^n p(z/r): coefficient of z^k picks up r^(n-k).
    double factor = 1.0;
    for (int k = n; k >= 0; --k) {
        out[k] *= factor;
        factor *= r;
    }
    return Polynomial(std::move(out));
}

} // namespace sendovlab
