#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cycert/charts.hpp"
#include "cycert/transverse.hpp"
#include "cycert/wpoly.hpp"

namespace cycert {

enum class SmoothnessVerdict { smooth, singular, inconclusive_smooth };

inline std::string to_string(SmoothnessVerdict v) {
    switch (v) {
        case SmoothnessVerdict::smooth: return "smooth";
        case SmoothnessVerdict::singular: return "singular";
        case SmoothnessVerdict::inconclusive_smooth: return "inconclusive-smooth";
    }
    return "?";
}

struct SmoothnessWitness {
    double theta = 0;                          // circle parameter angle
    std::vector<std::complex<double>> zeta;    // scaled coordinates
    double residual = 0;
};

struct SmoothnessResult {
    SmoothnessVerdict verdict = SmoothnessVerdict::inconclusive_smooth;
    std::string backend;  // "exact" or "numeric"
    std::vector<std::string> trace;
    std::optional<SmoothnessWitness> witness;
};

struct NumericOptions {
    int circle_samples = 256;
    int starts = 24;
    int newton_iters = 80;
    double tol = 1e-10;
    double start_radius = 2.0;
    unsigned long long seed = 0x5eed5eedULL;
};

namespace smoothness_detail {

using Cplx = std::complex<double>;

/// Damped Gauss-Newton for a square-or-overdetermined holomorphic system.
/// Returns the final point and residual norm.
inline std::pair<std::vector<Cplx>, double> polish(
    const std::vector<WPoly>& system, const std::vector<std::vector<WPoly>>& jacobian,
    const std::vector<std::size_t>& unknowns, std::vector<Cplx> ambient, int iters) {
    const std::size_t m = unknowns.size();
    auto residual = [&](const std::vector<Cplx>& point) {
        std::vector<Cplx> r;
        r.reserve(system.size());
        for (const WPoly& p : system) r.push_back(p.eval(point));
        return r;
    };
    auto norm2 = [](const std::vector<Cplx>& r) {
        double s = 0;
        for (const Cplx& v : r) s += std::norm(v);
        return s;
    };

    std::vector<Cplx> r = residual(ambient);
    double best = norm2(r);
    for (int it = 0; it < iters; ++it) {
        // Normal equations (J^H J + lambda I) delta = -J^H r.
        std::vector<std::vector<Cplx>> a(m, std::vector<Cplx>(m, 0.0));
        std::vector<Cplx> b(m, 0.0);
        for (std::size_t e = 0; e < system.size(); ++e) {
            std::vector<Cplx> row(m);
            for (std::size_t u = 0; u < m; ++u) row[u] = jacobian[e][u].eval(ambient);
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t j = 0; j < m; ++j) a[i][j] += std::conj(row[i]) * row[j];
                b[i] -= std::conj(row[i]) * r[e];
            }
        }
        for (std::size_t i = 0; i < m; ++i) a[i][i] += 1e-12;
        // Gaussian elimination with partial pivoting.
        std::vector<Cplx> delta(m, 0.0);
        {
            auto aa = a;
            auto bb = b;
            for (std::size_t col = 0; col < m; ++col) {
                std::size_t piv = col;
                for (std::size_t rr = col + 1; rr < m; ++rr)
                    if (std::abs(aa[rr][col]) > std::abs(aa[piv][col])) piv = rr;
                std::swap(aa[piv], aa[col]);
                std::swap(bb[piv], bb[col]);
                if (std::abs(aa[col][col]) < 1e-300) { bb[col] = 0; continue; }
                for (std::size_t rr = col + 1; rr < m; ++rr) {
                    Cplx f = aa[rr][col] / aa[col][col];
                    for (std::size_t cc = col; cc < m; ++cc) aa[rr][cc] -= f * aa[col][cc];
                    bb[rr] -= f * bb[col];
                }
            }
            for (std::size_t col = m; col-- > 0;) {
                Cplx s = bb[col];
                for (std::size_t cc = col + 1; cc < m; ++cc) s -= aa[col][cc] * delta[cc];
                delta[col] = std::abs(aa[col][col]) < 1e-300 ? Cplx(0) : s / aa[col][col];
            }
        }
        double t = 1.0;
        bool stepped = false;
        while (t > 1e-12) {
            std::vector<Cplx> cand = ambient;
            for (std::size_t u = 0; u < m; ++u) cand[unknowns[u]] += t * delta[u];
            std::vector<Cplx> rc = residual(cand);
            double nc = norm2(rc);
            if (nc < best) {
                ambient = std::move(cand);
                r = std::move(rc);
                best = nc;
                stepped = true;
                break;
            }
            t /= 2;
        }
        if (!stepped || best < 1e-32) break;
    }
    return {ambient, std::sqrt(best)};
}

}  // namespace smoothness_detail

/// Smoothness of the fiber varieties (CY.10) over the circle parameter.
///
/// Exact backend: when the gradient system triangularizes by successive
/// single-variable elimination (each nonzero gradient is a monomial in one
/// scaled variable times a unit), the critical points are forced to the
/// origin and the equation value there is a unit monomial in the circle
/// parameter; returns a proof trace. Covers every fiber family displayed in
/// the paper.
///
/// Numeric backend otherwise: samples the circle parameter, multi-start
/// Gauss-Newton on the critical system (equations plus maximal Jacobian
/// minors in the scaled variables), reports a witness when a common zero is
/// found within tolerance, else inconclusive-smooth.
inline SmoothnessResult fiber_smoothness(const FiberVariety& fv, std::size_t ambient_dim,
                                         const NumericOptions& opts = {}) {
    using namespace smoothness_detail;
    SmoothnessResult result;
    const auto names = chart_names(fv.center, ambient_dim);
    const std::vector<std::size_t>& zeta = fv.center.scaled;

    if (fv.equations.empty()) {
        result.verdict = SmoothnessVerdict::smooth;
        result.backend = "exact";
        result.trace.push_back("no equations survive on the boundary: the fiber is affine space");
        return result;
    }

    if (fv.equations.size() == 1) {
        const WPoly f = fv.equations[0].lhs - fv.equations[0].rhs;
        std::set<std::size_t> forced;
        std::vector<std::string> trace;
        bool triangular = true;
        bool progress = true;
        std::optional<std::string> unit_gradient;
        while (progress && triangular) {
            progress = false;
            for (std::size_t j : zeta) {
                WPoly g = f.partial_derivative(j).substitute_zero(forced);
                if (g.is_zero()) continue;
                if (g.num_terms() != 1) { triangular = false; break; }
                const Monomial& mono = g.terms().begin()->first;
                std::vector<std::size_t> vars;
                for (std::size_t t : zeta)
                    if (mono.exps[t] > 0) vars.push_back(t);
                if (vars.empty()) {
                    unit_gradient = "dF/d" + names[j] + " = " + g.str(names) +
                                    " is a unit times a circle power and never vanishes";
                    break;
                }
                if (vars.size() > 1) { triangular = false; break; }
                if (forced.insert(vars[0]).second) {
                    trace.push_back("dF/d" + names[j] + " = " + g.str(names) + " forces " +
                                    names[vars[0]] + " = 0");
                    progress = true;
                }
            }
            if (unit_gradient) break;
        }

        if (unit_gradient) {
            result.verdict = SmoothnessVerdict::smooth;
            result.backend = "exact";
            result.trace = std::move(trace);
            result.trace.push_back(*unit_gradient);
            return result;
        }

        if (triangular) {
            bool all_vanish = true;
            for (std::size_t j : zeta)
                all_vanish = all_vanish && f.partial_derivative(j).substitute_zero(forced).is_zero();
            if (all_vanish) {
                WPoly residual = f.substitute_zero(forced);
                bool residual_in_circle_only = true;
                for (std::size_t t : zeta)
                    residual_in_circle_only =
                        residual_in_circle_only && residual.support().count(t) == 0;
                if (residual.is_zero()) {
                    result.verdict = SmoothnessVerdict::singular;
                    result.backend = "exact";
                    result.trace = std::move(trace);
                    result.trace.push_back(
                        "the equation and all gradients vanish at the origin");
                    SmoothnessWitness w;
                    w.zeta.assign(zeta.size(), 0.0);
                    result.witness = w;
                    return result;
                }
                if (residual_in_circle_only && residual.num_terms() == 1) {
                    result.verdict = SmoothnessVerdict::smooth;
                    result.backend = "exact";
                    result.trace = std::move(trace);
                    result.trace.push_back(
                        "at the forced critical point the equation reads " +
                        residual.str(names) +
                        " = 0, impossible for a unit-modulus circle parameter");
                    return result;
                }
            }
        }
    }

    // Numeric backend.
    result.backend = "numeric";
    std::vector<WPoly> system;
    for (const auto& eq : fv.equations) system.push_back(eq.lhs - eq.rhs);
    {
        const std::size_t r = system.size();
        std::vector<std::vector<WPoly>> jac;
        for (const WPoly& p : system) {
            std::vector<WPoly> row;
            for (std::size_t j : zeta) row.push_back(p.partial_derivative(j));
            jac.push_back(std::move(row));
        }
        std::vector<std::vector<std::size_t>> subsets;
        std::vector<std::size_t> cur;
        transverse_detail::column_subsets(zeta.size(), r, cur, 0, subsets);
        for (const auto& cols : subsets) {
            std::vector<std::vector<WPoly>> sub;
            for (std::size_t row = 0; row < r; ++row) {
                std::vector<WPoly> m_row;
                for (std::size_t ccc : cols) m_row.push_back(jac[row][ccc]);
                sub.push_back(std::move(m_row));
            }
            system.push_back(transverse_detail::poly_det(sub, ambient_dim));
        }
    }
    std::vector<std::vector<WPoly>> jacobian;
    for (const WPoly& p : system) {
        std::vector<WPoly> row;
        for (std::size_t j : zeta) row.push_back(p.partial_derivative(j));
        jacobian.push_back(std::move(row));
    }

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> u(-opts.start_radius, opts.start_radius);
    for (int s = 0; s < opts.circle_samples; ++s) {
        double theta = 2.0 * M_PI * s / opts.circle_samples;
        for (int start = 0; start < opts.starts; ++start) {
            std::vector<Cplx> ambient(ambient_dim, 0.0);
            ambient[fv.axis] = std::polar(1.0, theta);
            for (std::size_t j : zeta) ambient[j] = Cplx(u(rng), u(rng));
            auto [point, resid] = polish(system, jacobian, zeta, ambient, opts.newton_iters);
            if (resid < opts.tol) {
                result.verdict = SmoothnessVerdict::singular;
                SmoothnessWitness w;
                w.theta = theta;
                for (std::size_t j : zeta) w.zeta.push_back(point[j]);
                w.residual = resid;
                result.witness = w;
                result.trace.push_back("critical point found by the numeric backend");
                return result;
            }
        }
    }
    result.verdict = SmoothnessVerdict::inconclusive_smooth;
    result.trace.push_back("no critical point found over " +
                           std::to_string(opts.circle_samples) + " circle samples with " +
                           std::to_string(opts.starts) + " starts each");
    return result;
}

/// Probabilistic smoothness spot-check for the affine smoothing itself:
/// multi-start search for a common zero of the defining equations and the
/// maximal Jacobian minors. A witness disproves smoothness; absence of one
/// is recorded as evidence, not proof.
inline std::optional<SmoothnessWitness> variety_singularity_search(
    const ConePresentation& cp, const SmoothingCandidate& sc, const NumericOptions& opts = {}) {
    using namespace smoothness_detail;
    std::vector<WPoly> system;
    for (std::size_t r = 0; r < cp.polys.size(); ++r)
        system.push_back(cp.polys[r] - sc.epsilon0 * sc.q[r]);
    std::vector<std::size_t> unknowns;
    for (std::size_t j = 0; j < cp.ambient_dim; ++j) unknowns.push_back(j);
    {
        const std::size_t r = system.size();
        std::vector<std::vector<WPoly>> jac;
        for (const WPoly& p : system) {
            std::vector<WPoly> row;
            for (std::size_t j : unknowns) row.push_back(p.partial_derivative(j));
            jac.push_back(std::move(row));
        }
        std::vector<std::vector<std::size_t>> subsets;
        std::vector<std::size_t> cur;
        transverse_detail::column_subsets(cp.ambient_dim, r, cur, 0, subsets);
        for (const auto& cols : subsets) {
            std::vector<std::vector<WPoly>> sub;
            for (std::size_t row = 0; row < r; ++row) {
                std::vector<WPoly> m_row;
                for (std::size_t c : cols) m_row.push_back(jac[row][c]);
                sub.push_back(std::move(m_row));
            }
            system.push_back(transverse_detail::poly_det(sub, cp.ambient_dim));
        }
    }
    std::vector<std::vector<WPoly>> jacobian;
    for (const WPoly& p : system) {
        std::vector<WPoly> row;
        for (std::size_t j : unknowns) row.push_back(p.partial_derivative(j));
        jacobian.push_back(std::move(row));
    }
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> u(-opts.start_radius, opts.start_radius);
    for (int start = 0; start < opts.starts * 8; ++start) {
        std::vector<Cplx> ambient(cp.ambient_dim);
        for (std::size_t j = 0; j < cp.ambient_dim; ++j) ambient[j] = Cplx(u(rng), u(rng));
        auto [point, resid] = polish(system, jacobian, unknowns, ambient, opts.newton_iters);
        if (resid < opts.tol) {
            SmoothnessWitness w;
            w.zeta = point;
            w.residual = resid;
            return w;
        }
    }
    return std::nullopt;
}

}  // namespace cycert
