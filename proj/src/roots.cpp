#include "sendovlab/roots.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sendovlab {

namespace {

bool lex_less(const cplx& a, const cplx& b) {
    if (a.real() != b.real())
        return a.real() < b.real();
    return a.imag() < b.imag();
}

double scaled_residual(const Polynomial& p, cplx z) {
    const double scale = p.eval_scale(z);
    if (scale == 0.0)
        return 0.0;
    return std::abs(p.evaluate(z)) / scale;
}

/// One full Aberth-Ehrlich pass over the non-converged approximations.
void aberth_sweep(const Polynomial& p, std::vector<cplx>& zs, const std::vector<bool>& done) {
    const int m = static_cast<int>(zs.size());
    for (int i = 0; i < m; ++i) {
        if (done[i])
            continue;
        const Jet2 jet = p.evaluate_jet(zs[i]);
        if (std::abs(jet.value) == 0.0)
            continue;
        cplx repulsion = 0.0;
        for (int j = 0; j < m; ++j) {
            if (j == i)
                continue;
            const cplx diff = zs[i] - zs[j];
            if (std::abs(diff) == 0.0)
                continue; // coincident guesses separate on later sweeps
            repulsion += 1.0 / diff;
        }
        cplx step;
        if (std::abs(jet.d1) == 0.0) {
            // stationary point of p: nudge deterministically
            step = (1.0 + std::abs(zs[i])) * 0.1 * std::polar(1.0, 0.4 + 0.7 * i);
        } else {
            const cplx newton = jet.value / jet.d1;
            const cplx denom = 1.0 - newton * repulsion;
            step = (std::abs(denom) == 0.0) ? newton : newton / denom;
        }
        zs[i] -= step;
    }
}

std::vector<std::vector<int>> find_clusters(const std::vector<cplx>& roots, double tol) {
    const int m = static_cast<int>(roots.size());
    std::vector<int> group(m, -1);
    std::vector<std::vector<int>> out;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            if (std::abs(roots[i] - roots[j]) >= tol)
                continue;
            if (group[i] < 0 && group[j] < 0) {
                group[i] = group[j] = static_cast<int>(out.size());
                out.push_back({i, j});
            } else if (group[i] >= 0 && group[j] < 0) {
                group[j] = group[i];
                out[group[i]].push_back(j);
            } else if (group[i] < 0 && group[j] >= 0) {
                group[i] = group[j];
                out[group[j]].push_back(i);
            }
        }
    }
    return out;
}

} // namespace

RootList find_roots(const Polynomial& p, const RootFindOptions& opts) {
    if (p.degree() < 1)
        fail(ErrorKind::DegreeTooLow, "root finding needs degree >= 1");

    // Normalize to monic so the initial circle radius is meaningful.
    std::vector<cplx> monic(p.coeffs());
    const cplx lead = monic.back();
    for (cplx& c : monic)
        c /= lead;

    // Deflate exact zero roots (trailing zero coefficients, e.g. n z^{n-1}).
    int zero_multiplicity = 0;
    while (std::abs(monic.front()) == 0.0 && monic.size() > 1) {
        monic.erase(monic.begin());
        ++zero_multiplicity;
    }

    RootList result;
    result.roots.assign(zero_multiplicity, cplx(0.0, 0.0));

    const int m = static_cast<int>(monic.size()) - 1;
    if (m >= 1) {
        const Polynomial core{std::vector<cplx>(monic)};
        double radius = 0.0;
        for (const cplx& c : monic)
            radius = std::max(radius, std::abs(c));
        radius += 1.0;

        std::vector<cplx> zs(m);
        const double phase0 = 0.376999522; // fixed offset, dodges axis symmetry
        for (int k = 0; k < m; ++k)
            zs[k] = std::polar(radius, 2.0 * M_PI * k / m + phase0);

        std::vector<bool> done(m, false);
        bool all_done = false;
        for (int iter = 0; iter < opts.max_iterations && !all_done; ++iter) {
            aberth_sweep(core, zs, done);
            all_done = true;
            for (int i = 0; i < m; ++i) {
                done[i] = scaled_residual(core, zs[i]) <= opts.residual_tol;
                all_done = all_done && done[i];
            }
        }

        // Per-root Newton polish; keep a step only when it reduces the
        // scaled residual (multiple roots would otherwise oscillate).
        for (int round = 0; round < 2; ++round) {
            for (cplx& z : zs) {
                const Jet2 jet = core.evaluate_jet(z);
                if (std::abs(jet.d1) == 0.0)
                    continue;
                const cplx candidate = z - jet.value / jet.d1;
                if (scaled_residual(core, candidate) < scaled_residual(core, z))
                    z = candidate;
            }
        }

        double worst = 0.0;
        for (const cplx& z : zs)
            worst = std::max(worst, scaled_residual(core, z));
        if (worst > opts.residual_tol) {
            std::ostringstream msg;
            msg << "Aberth iteration stalled at scaled residual " << worst;
            fail(ErrorKind::NonConvergence, msg.str());
        }
        result.residual_bound = worst;
        result.roots.insert(result.roots.end(), zs.begin(), zs.end());
    }

    std::sort(result.roots.begin(), result.roots.end(), lex_less);
    result.clusters = find_clusters(result.roots, opts.cluster_tol);
    return result;
}

SimplicityReport is_simple(const Polynomial& p, double tol, const RootFindOptions& opts) {
    SimplicityReport report;
    auto check = [&](const Polynomial& poly, bool on_derivative) {
        if (!report.simple || poly.degree() < 2)
            return;
        const RootList rl = find_roots(poly, opts);
        for (std::size_t i = 0; i < rl.roots.size() && report.simple; ++i) {
            for (std::size_t j = i + 1; j < rl.roots.size(); ++j) {
                const double d = std::abs(rl.roots[i] - rl.roots[j]);
                if (d <= tol) {
                    report.simple = false;
                    report.witness = SimplicityWitness{on_derivative, rl.roots[i], rl.roots[j], d};
                    break;
                }
            }
        }
    };
    check(p, false);
    if (p.degree() >= 1)
        check(p.derivative(), true);
    return report;
}

void require_simple(const Polynomial& p, double tol) {
    const SimplicityReport report = is_simple(p, tol);
    if (report.simple)
        return;
    std::ostringstream msg;
    msg << "polynomial has a " << (report.witness->on_derivative ? "derivative-zero" : "zero")
        << " pair at distance " << report.witness->distance;
    fail(ErrorKind::DegenerateConfiguration, msg.str());
}

} // namespace sendovlab
