#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "cycert/errors.hpp"
#include "cycert/quadext.hpp"
#include "cycert/wpoly.hpp"

namespace cycert {

using LatticePoint2 = std::array<long long, 2>;
using LatticeVec3 = std::array<long long, 3>;

/// Lattice polygon in Z^2, vertices in strictly convex counterclockwise
/// position. Cross sections of 3-dimensional Gorenstein cones at height 1.
struct ToricDiagram {
    std::vector<LatticePoint2> points;
};

/// Strongly convex rational polyhedral cone in R^3 whose primitive rays all
/// have first coordinate 1.
struct Cone3 {
    std::vector<LatticeVec3> rays;
};

/// Primitive generators of the dual cone, one per facet of the primal cone,
/// listed in the cyclic order of the facets (ray a, ray a+1).
struct DualGenerators {
    std::vector<LatticeVec3> normals;
};

/// Reeb vector xi = (alpha, beta, gamma) with the 3-fold normalization
/// alpha = 3.
struct ReebVector {
    std::array<double, 3> xi;
};

namespace toric_detail {

inline long long dot(const LatticeVec3& a, const LatticeVec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline LatticeVec3 cross(const LatticeVec3& a, const LatticeVec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline long long det3(const LatticeVec3& a, const LatticeVec3& b, const LatticeVec3& c) {
    return dot(a, cross(b, c));
}

inline LatticeVec3 primitive(LatticeVec3 v) {
    long long g = std::gcd(std::gcd(std::abs(v[0]), std::abs(v[1])), std::abs(v[2]));
    if (g == 0) throw InvalidConeError("zero facet normal");
    return {v[0] / g, v[1] / g, v[2] / g};
}

template <typename S>
S abs_val(const S& x) {
    return x < S(0) ? S(-x) : x;
}

template <typename S>
S det3_s(const std::array<S, 3>& a, const std::array<S, 3>& b, const std::array<S, 3>& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

}  // namespace toric_detail

/// Reorders the extreme rays of a strongly convex full-dimensional cone into
/// counterclockwise cyclic order around their sum. Exact: only integer sign
/// tests are used.
inline std::vector<LatticeVec3> cyclic_order(std::vector<LatticeVec3> gens) {
    using namespace toric_detail;
    if (gens.size() < 3) return gens;
    LatticeVec3 m{0, 0, 0};
    for (const auto& g : gens)
        for (int j = 0; j < 3; ++j) m[j] += g[j];
    const LatticeVec3 ref = gens.front();
    auto half_of = [&](const LatticeVec3& g) {
        long long d = det3(m, ref, g);
        if (d > 0) return 0;
        if (d < 0) return 1;
        // Projection collinear with the reference: same side first.
        long long proj = dot(g, ref) * dot(m, m) - dot(g, m) * dot(ref, m);
        return proj > 0 ? 0 : 1;
    };
    std::sort(gens.begin(), gens.end(), [&](const LatticeVec3& a, const LatticeVec3& b) {
        int ha = half_of(a), hb = half_of(b);
        if (ha != hb) return ha < hb;
        return det3(m, a, b) > 0;
    });
    return gens;
}

inline void validate_diagram(const ToricDiagram& d) {
    const auto& p = d.points;
    if (p.size() < 3)
        throw InvalidConeError("toric diagram needs at least 3 lattice points");
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& a = p[i];
        const auto& b = p[(i + 1) % p.size()];
        const auto& c = p[(i + 2) % p.size()];
        long long turn = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
        if (turn <= 0)
            throw InvalidConeError(
                "diagram points must be distinct convex-position vertices in "
                "counterclockwise order");
    }
}

/// Lifts the diagram to the cone rays (1, v_i), order preserved.
inline Cone3 rays_from_diagram(const ToricDiagram& d) {
    validate_diagram(d);
    Cone3 c;
    c.rays.reserve(d.points.size());
    for (const auto& v : d.points) c.rays.push_back({1, v[0], v[1]});
    return c;
}

/// Primitive generators of a 3-dimensional dual cone: adjacent-ray cross
/// products, sign-fixed inward, divided by their content. Works for any
/// strongly convex full-dimensional input in cyclic order; used both for the
/// dual cone itself and for the duality involution check.
inline std::vector<LatticeVec3> dual_cone_generators(const std::vector<LatticeVec3>& rays) {
    using namespace toric_detail;
    if (rays.size() < 3)
        throw InvalidConeError("a full-dimensional cone needs at least 3 rays");
    bool full_dim = false;
    for (std::size_t i = 2; i < rays.size() && !full_dim; ++i)
        if (det3(rays[0], rays[1], rays[i]) != 0) full_dim = true;
    if (!full_dim)
        throw InvalidConeError("cone is not full-dimensional (half-space or lower)");

    std::vector<LatticeVec3> normals;
    normals.reserve(rays.size());
    for (std::size_t a = 0; a < rays.size(); ++a) {
        LatticeVec3 n = cross(rays[a], rays[(a + 1) % rays.size()]);
        if (n == LatticeVec3{0, 0, 0})
            throw InvalidConeError("adjacent rays are parallel");
        int positives = 0, negatives = 0;
        for (const auto& r : rays) {
            long long pairing = dot(n, r);
            if (pairing > 0) ++positives;
            if (pairing < 0) ++negatives;
        }
        if (positives > 0 && negatives > 0)
            throw InvalidConeError("rays are not in convex cyclic order");
        if (negatives > 0) n = {-n[0], -n[1], -n[2]};
        normals.push_back(primitive(n));
    }
    return normals;
}

inline DualGenerators dual_generators(const Cone3& c) {
    return DualGenerators{dual_cone_generators(c.rays)};
}

/// Euclidean volume of the truncated dual cone
///   Delta(xi) = { y in C* : <y, xi> <= 1 },
/// the polytope whose minimization characterizes the Reeb vector field.
/// Its vertices are the apex and the facet-triple intersection points
/// g_a / <g_a, xi>, so the volume is a fan triangulation over the cut
/// polygon; no tolerance is involved. Scalar may be double (optimizer) or
/// Rational (exact evaluation at rational xi).
template <typename Scalar>
Scalar reeb_volume_impl(const std::array<Scalar, 3>& xi, const DualGenerators& dg) {
    using namespace toric_detail;
    std::vector<LatticeVec3> ordered = cyclic_order(dg.normals);
    std::vector<std::array<Scalar, 3>> cut;
    cut.reserve(ordered.size());
    for (const auto& g : ordered) {
        Scalar pairing = Scalar(g[0]) * xi[0] + Scalar(g[1]) * xi[1] + Scalar(g[2]) * xi[2];
        if (!(pairing > Scalar(0)))
            throw UnboundedPolytopeError(
                "xi is not in the interior of the Reeb cone; Delta(xi) is unbounded");
        cut.push_back({Scalar(g[0]) / pairing, Scalar(g[1]) / pairing, Scalar(g[2]) / pairing});
    }
    Scalar six_vol(0);
    for (std::size_t a = 1; a + 1 < cut.size(); ++a)
        six_vol += abs_val(det3_s(cut[0], cut[a], cut[a + 1]));
    return six_vol / Scalar(6);
}

inline double reeb_volume(const ReebVector& xi, const DualGenerators& dg) {
    return reeb_volume_impl<double>(xi.xi, dg);
}

inline Rational reeb_volume_exact(const std::array<Rational, 3>& xi, const DualGenerators& dg) {
    return reeb_volume_impl<Rational>(xi, dg);
}

/// Closed-form volume evaluator: sum over adjacent ray triples of
///   det(v_{a-1}, v_a, v_{a+1}) / (det(v_{a-1}, v_a, xi) * det(v_a, v_{a+1}, xi)).
/// Proportional to reeb_volume on the Reeb cone interior with a constant
/// ratio; kept as an independent algebraic route.
inline double msy_volume(const ReebVector& xi, const Cone3& cone) {
    using namespace toric_detail;
    const auto& rays = cone.rays;
    std::array<double, 3> x = xi.xi;
    double total = 0;
    for (std::size_t a = 0; a < rays.size(); ++a) {
        const auto& prev = rays[(a + rays.size() - 1) % rays.size()];
        const auto& cur = rays[a];
        const auto& next = rays[(a + 1) % rays.size()];
        std::array<double, 3> pd{double(prev[0]), double(prev[1]), double(prev[2])};
        std::array<double, 3> cd{double(cur[0]), double(cur[1]), double(cur[2])};
        std::array<double, 3> nd{double(next[0]), double(next[1]), double(next[2])};
        double num = double(det3(prev, cur, next));
        double d1 = det3_s(pd, cd, x);
        double d2 = det3_s(cd, nd, x);
        if (d1 <= 0 || d2 <= 0)
            throw UnboundedPolytopeError("xi is not interior to the Reeb cone");
        total += num / (d1 * d2);
    }
    return total;
}

/// Weight of the holomorphic coordinate attached to each dual generator:
/// <m, xi>, in the order the generators are listed.
inline std::vector<double> coordinate_weights(const ReebVector& xi, const DualGenerators& dg) {
    std::vector<double> w;
    w.reserve(dg.normals.size());
    for (const auto& g : dg.normals)
        w.push_back(g[0] * xi.xi[0] + g[1] * xi.xi[1] + g[2] * xi.xi[2]);
    return w;
}

struct MinimizeOptions {
    double grad_tol = 1e-10;       // convergence threshold on the free gradient
    double fd_step = 1e-6;         // central-difference step
    int max_newton_iters = 120;
    double objective_scale = 1.0;  // argmin must be invariant under this
};

struct MinimizeResult {
    ReebVector xi;
    double volume = 0;
    double grad_norm = 0;
    int iterations = 0;
    bool used_fallback = false;
};

namespace toric_detail {

struct Objective2D {
    std::function<double(double, double)> f;
};

inline std::array<double, 2> fd_gradient(const Objective2D& obj, double x, double y, double h) {
    return {(obj.f(x + h, y) - obj.f(x - h, y)) / (2 * h),
            (obj.f(x, y + h) - obj.f(x, y - h)) / (2 * h)};
}

inline std::array<double, 3> fd_hessian(const Objective2D& obj, double x, double y, double h) {
    double f0 = obj.f(x, y);
    double fxx = (obj.f(x + h, y) - 2 * f0 + obj.f(x - h, y)) / (h * h);
    double fyy = (obj.f(x, y + h) - 2 * f0 + obj.f(x, y - h)) / (h * h);
    double fxy = (obj.f(x + h, y + h) - obj.f(x + h, y - h) - obj.f(x - h, y + h) +
                  obj.f(x - h, y - h)) /
                 (4 * h * h);
    return {fxx, fxy, fyy};
}

}  // namespace toric_detail

/// Minimization of a smooth strictly convex objective over the Reeb cone
/// slice {xi_1 = 3}: damped Newton with central finite differences and a
/// short log-barrier continuation for the cone constraint, falling back to
/// Nelder-Mead if Newton stalls.
inline MinimizeResult minimize_slice_objective(
    const DualGenerators& dg, const std::function<double(double, double)>& objective,
    const MinimizeOptions& opts = {}) {
    using namespace toric_detail;

    auto interior = [&dg](double x, double y) {
        for (const auto& g : dg.normals)
            if (3 * g[0] + x * g[1] + y * g[2] <= 0) return false;
        return true;
    };
    auto volume_at = [&objective, &opts](double x, double y) {
        return opts.objective_scale * objective(x, y);
    };
    auto barrier_at = [&dg](double x, double y) {
        double b = 0;
        for (const auto& g : dg.normals) b -= std::log(3 * g[0] + x * g[1] + y * g[2]);
        return b;
    };

    // Seed at the slice centroid of the primal rays, recovered from the
    // normals by the duality involution; a strict convex combination of the
    // rays is interior.
    double cx = 0, cy = 0;
    {
        auto rays = dual_cone_generators(cyclic_order(dg.normals));
        double count = 0;
        for (const auto& r : rays) {
            if (r[0] <= 0) continue;
            cx += double(r[1]) / double(r[0]);
            cy += double(r[2]) / double(r[0]);
            count += 1;
        }
        if (count > 0) {
            cx = 3 * cx / count;
            cy = 3 * cy / count;
        }
        if (count == 0 || !interior(cx, cy)) {
            bool found = false;
            for (double r = 0.5; r <= 64 && !found; r *= 2)
                for (int ix = -32; ix <= 32 && !found; ++ix)
                    for (int iy = -32; iy <= 32 && !found; ++iy)
                        if (interior(r * ix / 32.0, r * iy / 32.0)) {
                            cx = r * ix / 32.0;
                            cy = r * iy / 32.0;
                            found = true;
                        }
            if (!found)
                throw UnboundedPolytopeError("could not find an interior Reeb vector");
        }
    }

    double x = cx, y = cy;
    int total_iters = 0;
    const double h = opts.fd_step;

    auto newton_stage = [&](double mu, double tol, int iters) {
        Objective2D obj{[&](double px, double py) {
            double v = volume_at(px, py);
            return mu > 0 ? v + mu * barrier_at(px, py) : v;
        }};
        for (int it = 0; it < iters; ++it) {
            ++total_iters;
            auto g = fd_gradient(obj, x, y, h);
            double gn = std::hypot(g[0], g[1]);
            if (gn <= tol) return true;
            auto H = fd_hessian(obj, x, y, h);
            double det = H[0] * H[2] - H[1] * H[1];
            double dx, dy;
            if (H[0] > 0 && det > 0) {
                dx = -(H[2] * g[0] - H[1] * g[1]) / det;
                dy = -(H[0] * g[1] - H[1] * g[0]) / det;
            } else {
                dx = -g[0];
                dy = -g[1];
            }
            double f0 = obj.f(x, y);
            double slope = g[0] * dx + g[1] * dy;
            double t = 1.0;
            bool stepped = false;
            while (t > 1e-14) {
                double nx = x + t * dx, ny = y + t * dy;
                if (interior(nx, ny) && obj.f(nx, ny) <= f0 + 1e-4 * t * slope) {
                    x = nx;
                    y = ny;
                    stepped = true;
                    break;
                }
                t /= 2;
            }
            if (!stepped) return gn <= tol;
        }
        auto g = fd_gradient(obj, x, y, h);
        return std::hypot(g[0], g[1]) <= tol;
    };

    newton_stage(1e-6, 1e-6, opts.max_newton_iters);
    bool converged = newton_stage(0.0, opts.grad_tol, opts.max_newton_iters);

    bool used_fallback = false;
    if (!converged) {
        // Nelder-Mead on the raw volume, then one more Newton polish.
        used_fallback = true;
        Objective2D obj{[&](double px, double py) {
            return interior(px, py) ? volume_at(px, py)
                                    : std::numeric_limits<double>::infinity();
        }};
        std::array<std::array<double, 2>, 3> simplex{{{x, y}, {x + 0.1, y}, {x, y + 0.1}}};
        auto value = [&](const std::array<double, 2>& p) { return obj.f(p[0], p[1]); };
        for (int it = 0; it < 800; ++it) {
            std::sort(simplex.begin(), simplex.end(),
                      [&](const auto& a, const auto& b) { return value(a) < value(b); });
            std::array<double, 2> centroid{(simplex[0][0] + simplex[1][0]) / 2,
                                           (simplex[0][1] + simplex[1][1]) / 2};
            std::array<double, 2> reflect{2 * centroid[0] - simplex[2][0],
                                          2 * centroid[1] - simplex[2][1]};
            if (value(reflect) < value(simplex[0])) {
                std::array<double, 2> expand{3 * centroid[0] - 2 * simplex[2][0],
                                             3 * centroid[1] - 2 * simplex[2][1]};
                simplex[2] = value(expand) < value(reflect) ? expand : reflect;
            } else if (value(reflect) < value(simplex[1])) {
                simplex[2] = reflect;
            } else {
                std::array<double, 2> contract{(centroid[0] + simplex[2][0]) / 2,
                                               (centroid[1] + simplex[2][1]) / 2};
                if (value(contract) < value(simplex[2])) {
                    simplex[2] = contract;
                } else {
                    for (int k = 1; k < 3; ++k) {
                        simplex[k][0] = (simplex[k][0] + simplex[0][0]) / 2;
                        simplex[k][1] = (simplex[k][1] + simplex[0][1]) / 2;
                    }
                }
            }
        }
        std::sort(simplex.begin(), simplex.end(),
                  [&](const auto& a, const auto& b) { return value(a) < value(b); });
        x = simplex[0][0];
        y = simplex[0][1];
        converged = newton_stage(0.0, opts.grad_tol, opts.max_newton_iters);
    }

    Objective2D raw{[&](double px, double py) { return volume_at(px, py); }};
    auto g = fd_gradient(raw, x, y, h);
    double gn = std::hypot(g[0], g[1]);
    if (!converged)
        throw OptimizerError("Reeb volume minimization did not converge", x, y, gn);

    MinimizeResult result;
    result.xi = ReebVector{{3.0, x, y}};
    result.volume = reeb_volume(result.xi, dg);
    result.grad_norm = gn;
    result.iterations = total_iters;
    result.used_fallback = used_fallback;
    return result;
}

/// Volume minimization: the unique minimizer of reeb_volume over the slice
/// is the Reeb vector field of the Calabi-Yau cone metric.
inline MinimizeResult minimize_reeb(const DualGenerators& dg, const MinimizeOptions& opts = {}) {
    return minimize_slice_objective(
        dg, [&dg](double x, double y) { return reeb_volume_impl<double>({3.0, x, y}, dg); },
        opts);
}

// ---------------------------------------------------------------------------
// The C_{k,l} = { u^k v^l = w z } family.
// ---------------------------------------------------------------------------

inline ToricDiagram ckl_diagram(long long k, long long l) {
    if (k < 1 || l < 1) throw Error("C_{k,l} requires k, l >= 1");
    return ToricDiagram{{{0, 0}, {k, 0}, {l, 1}, {0, 1}}};
}

/// Dual generators in the paper's coordinate order (u, v, w, z), i.e. the
/// labeling for which the toric relation reads u^k v^l = w z.
inline DualGenerators ckl_dual_generators(long long k, long long l) {
    if (k < 1 || l < 1) throw Error("C_{k,l} requires k, l >= 1");
    return DualGenerators{{{1, 0, -1}, {0, 0, 1}, {0, 1, 0}, {k, -1, l - k}}};
}

struct ExactReeb {
    QuadExt alpha, beta, gamma;

    ReebVector to_float() const {
        return ReebVector{{alpha.to_double(), beta.to_double(), gamma.to_double()}};
    }
};

/// The closed-form minimizing Reeb vector of C_{k,l}:
///   xi = (3, 3kl / (2(k+l-s)), 3k / (s+2k-l)),  s = sqrt(k^2-kl+l^2),
/// as exact elements of Q(sqrt(k^2-kl+l^2)).
inline ExactReeb closed_form_reeb(long long k, long long l) {
    if (k < 1 || l < 1) throw Error("C_{k,l} requires k, l >= 1");
    QuadExt s = QuadExt::sqrt_of(Int(k * k - k * l + l * l));
    QuadExt beta = QuadExt(Rational(3 * k * l)) /
                   (QuadExt(2) * (QuadExt(Rational(k + l)) - s));
    QuadExt gamma = QuadExt(Rational(3 * k)) / (s + QuadExt(Rational(2 * k - l)));
    return ExactReeb{QuadExt(3), beta, gamma};
}

/// Exact induced weights of the coordinates (u, v, w, z) under the
/// minimizing Reeb vector.
inline std::array<QuadExt, 4> ckl_coordinate_weights(long long k, long long l) {
    ExactReeb xi = closed_form_reeb(k, l);
    QuadExt wt_u = xi.alpha - xi.gamma;
    QuadExt wt_v = xi.gamma;
    QuadExt wt_w = xi.beta;
    QuadExt wt_z = QuadExt(Rational(k)) * xi.alpha - xi.beta +
                   QuadExt(Rational(l - k)) * xi.gamma;
    return {wt_u, wt_v, wt_w, wt_z};
}

/// Multiweight of (z1, z2, z3, z4) for the presentation
/// z1^l z2^k + z3^2 + z4^2 = 0 of C_{k,l}, via u = z2, v = z1,
/// w = z3 + i z4, z = -z3 + i z4.
inline Multiweight ckl_presentation_weights(long long k, long long l) {
    auto w = ckl_coordinate_weights(k, l);
    return Multiweight({w[1], w[0], w[2], w[3]});
}

}  // namespace cycert
