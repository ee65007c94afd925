#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cycert/errors.hpp"
#include "cycert/linalg.hpp"
#include "cycert/quadext.hpp"
#include "cycert/wpoly.hpp"

namespace cycert {

/// A Calabi-Yau cone presented as a weighted-homogeneous affine variety
/// P_1(z) = ... = P_r(z) = 0 with singular locus along coordinate axes.
struct ConePresentation {
    std::size_t ambient_dim = 0;
    std::vector<std::string> var_names;          // for rendering; z1..zn by default
    std::vector<WPoly> polys;
    Multiweight weights;
    std::vector<QuadExt> degrees;                // stated weighted degrees, one per poly
    std::set<std::size_t> declared_singular_axes;  // 0-based axis indices

    const std::vector<std::string>& names() const { return var_names; }
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool ok = true;

    void add(std::string name, bool pass, std::string detail) {
        ok = ok && pass;
        checks.push_back({std::move(name), pass, std::move(detail)});
    }
};

/// Homogeneity of every defining polynomial plus the Calabi-Yau
/// normalization sum(weights) - sum(degrees) = ambient_dim - #polys, all in
/// exact arithmetic. Failures are reported, not thrown.
inline ValidationReport validate_presentation(const ConePresentation& cp) {
    ValidationReport report;
    if (cp.polys.empty() || cp.weights.dim() != cp.ambient_dim ||
        cp.degrees.size() != cp.polys.size()) {
        report.add("shape", false, "polynomials, weights and degrees are inconsistent");
        return report;
    }
    for (std::size_t r = 0; r < cp.polys.size(); ++r) {
        std::string label = "P" + std::to_string(r + 1);
        if (cp.polys[r].is_zero()) {
            report.add(label + " nonzero", false, label + " is the zero polynomial");
            continue;
        }
        auto h = is_homogeneous(cp.polys[r], cp.weights);
        if (!h.degree.has_value()) {
            report.add(label + " homogeneous", false,
                       label + " is not weighted-homogeneous under the given weights");
        } else if (*h.degree != cp.degrees[r]) {
            report.add(label + " homogeneous", false,
                       label + " has degree " + h.degree->str() + ", stated " +
                           cp.degrees[r].str());
        } else {
            report.add(label + " homogeneous", true,
                       label + " is homogeneous of degree " + cp.degrees[r].str());
        }
    }
    QuadExt balance(0);
    for (std::size_t i = 0; i < cp.weights.dim(); ++i) balance += cp.weights[i];
    for (const QuadExt& d : cp.degrees) balance -= d;
    QuadExt expected(Rational(static_cast<long>(cp.ambient_dim) -
                              static_cast<long>(cp.polys.size())));
    report.add("Calabi-Yau normalization", balance == expected,
               "sum(w) - sum(d) = " + balance.str() + ", complex dimension " +
                   expected.str());
    for (std::size_t axis : cp.declared_singular_axes)
        if (axis >= cp.ambient_dim)
            report.add("axis range", false,
                       "declared axis " + std::to_string(axis + 1) + " out of range");
    return report;
}

struct AxisSingularity {
    bool contained_in_singular_locus = false;
    std::vector<std::string> evidence;
};

namespace transverse_detail {

/// Determinant of a small WPoly matrix by Laplace expansion; the Jacobian
/// minors in question are at most 2x2 in the bundled presentations.
inline WPoly poly_det(const std::vector<std::vector<WPoly>>& m, std::size_t dim) {
    const std::size_t n = m.size();
    if (n == 0) return WPoly::constant(dim, GaussianRational(1));
    if (n == 1) return m[0][0];
    WPoly result(dim);
    for (std::size_t col = 0; col < n; ++col) {
        std::vector<std::vector<WPoly>> minor;
        minor.reserve(n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<WPoly> row;
            row.reserve(n - 1);
            for (std::size_t c = 0; c < n; ++c)
                if (c != col) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        WPoly term = m[0][col] * poly_det(minor, dim);
        result = col % 2 == 0 ? result + term : result - term;
    }
    return result;
}

inline void column_subsets(std::size_t n, std::size_t r, std::vector<std::size_t>& current,
                           std::size_t start, std::vector<std::vector<std::size_t>>& out) {
    if (current.size() == r) {
        out.push_back(current);
        return;
    }
    for (std::size_t c = start; c < n; ++c) {
        current.push_back(c);
        column_subsets(n, r, current, c + 1, out);
        current.pop_back();
    }
}

}  // namespace transverse_detail

/// Whether the z_axis-axis is contained in the singular locus: every
/// defining polynomial vanishes identically on the axis and the Jacobian
/// drops rank there, checked via identical vanishing of all maximal minors
/// restricted to the axis. For a hypersurface the minors are the partial
/// derivatives themselves.
inline AxisSingularity axis_singularity_check(const ConePresentation& cp, std::size_t axis) {
    using namespace transverse_detail;
    if (axis >= cp.ambient_dim) throw DimensionMismatchError("axis index out of range");
    AxisSingularity result;
    result.contained_in_singular_locus = true;
    const auto& names = cp.names();

    for (std::size_t r = 0; r < cp.polys.size(); ++r) {
        WPoly restricted = cp.polys[r].restrict_to_axis(axis);
        if (restricted.is_zero()) {
            result.evidence.push_back("P" + std::to_string(r + 1) + " vanishes on the " +
                                      names[axis] + "-axis");
        } else {
            result.contained_in_singular_locus = false;
            result.evidence.push_back("P" + std::to_string(r + 1) + " restricts to " +
                                      restricted.str(names) + " on the " + names[axis] +
                                      "-axis");
        }
    }

    const std::size_t r = cp.polys.size();
    std::vector<std::vector<WPoly>> jacobian;
    jacobian.reserve(r);
    for (const WPoly& p : cp.polys) {
        std::vector<WPoly> row;
        row.reserve(cp.ambient_dim);
        for (std::size_t j = 0; j < cp.ambient_dim; ++j) row.push_back(p.partial_derivative(j));
        jacobian.push_back(std::move(row));
    }
    std::vector<std::vector<std::size_t>> subsets;
    std::vector<std::size_t> current;
    column_subsets(cp.ambient_dim, r, current, 0, subsets);
    bool all_minors_vanish = true;
    for (const auto& cols : subsets) {
        std::vector<std::vector<WPoly>> submatrix;
        submatrix.reserve(r);
        for (std::size_t row = 0; row < r; ++row) {
            std::vector<WPoly> m_row;
            for (std::size_t c : cols) m_row.push_back(jacobian[row][c]);
            submatrix.push_back(std::move(m_row));
        }
        WPoly minor = poly_det(submatrix, cp.ambient_dim).restrict_to_axis(axis);
        if (!minor.is_zero()) {
            all_minors_vanish = false;
            std::string cols_str;
            for (std::size_t c : cols) cols_str += (cols_str.empty() ? "" : ",") + names[c];
            result.evidence.push_back("Jacobian minor in columns (" + cols_str +
                                      ") restricts to " + minor.str(names));
        }
    }
    if (all_minors_vanish) {
        result.evidence.push_back(r == 1 ? "all first partials vanish on the axis"
                                         : "the Jacobian drops rank along the axis");
    } else {
        result.contained_in_singular_locus = false;
    }
    return result;
}

enum class InferenceStatus { determined, symmetric_tie_break, user_supplied };

inline std::string to_string(InferenceStatus s) {
    switch (s) {
        case InferenceStatus::determined: return "determined";
        case InferenceStatus::symmetric_tie_break: return "symmetric-tie-break";
        case InferenceStatus::user_supplied: return "user-supplied";
    }
    return "?";
}

/// The 2-dimensional cone transverse to a singular axis: the defining
/// polynomial P_{i,omega} (exponent data of P with the axis variable as a
/// circle parameter), the three scaled variables, and the inferred
/// multiweight and degree d_s.
struct TransverseCone {
    std::size_t axis = 0;
    std::size_t surface_poly_index = 0;
    WPoly poly{1};
    std::vector<std::size_t> scaled_vars;  // the variables carrying v, ascending
    Multiweight v;                         // aligned with scaled_vars
    QuadExt d_s;
    InferenceStatus status = InferenceStatus::determined;
};

/// Variable names for the coordinates (CY.4a) at infinity along an axis:
/// omega_i_j for the chart of axis i (0-based in code, 1-based in names).
inline std::vector<std::string> omega_names(std::size_t axis, std::size_t dim) {
    std::vector<std::string> names;
    names.reserve(dim);
    for (std::size_t j = 0; j < dim; ++j)
        names.push_back("omega_" + std::to_string(axis + 1) + "_" + std::to_string(j + 1));
    return names;
}

/// Selects the defining polynomial describing the transverse surface along
/// the axis: the unique one involving exactly three transverse variables.
inline std::size_t select_surface_poly(const ConePresentation& cp, std::size_t axis) {
    if (cp.polys.size() == 1) return 0;
    std::optional<std::size_t> found;
    for (std::size_t r = 0; r < cp.polys.size(); ++r) {
        auto support = cp.polys[r].support();
        support.erase(axis);
        if (support.size() == 3) {
            if (found.has_value())
                throw Error("multiple candidate transverse surface polynomials along axis " +
                            std::to_string(axis + 1));
            found = r;
        }
    }
    if (!found.has_value())
        throw Error("no defining polynomial involves exactly three transverse variables "
                    "along axis " + std::to_string(axis + 1));
    return *found;
}

/// The transverse polynomial P_{i,omega_{i,i}} of (CY.15): same exponent
/// data as the chosen defining polynomial, with the axis variable read as
/// the circle parameter. Requires the axis to be singular.
inline TransverseCone transverse_polynomial(const ConePresentation& cp, std::size_t axis,
                                            std::optional<std::size_t> poly_index = {}) {
    if (!axis_singularity_check(cp, axis).contained_in_singular_locus)
        throw Error("the " + cp.names()[axis] + "-axis is not contained in the singular locus");
    TransverseCone tc;
    tc.axis = axis;
    tc.surface_poly_index = poly_index.value_or(select_surface_poly(cp, axis));
    tc.poly = cp.polys[tc.surface_poly_index];
    if (cp.polys.size() == 1) {
        for (std::size_t j = 0; j < cp.ambient_dim; ++j)
            if (j != axis) tc.scaled_vars.push_back(j);
    } else {
        auto support = tc.poly.support();
        support.erase(axis);
        tc.scaled_vars.assign(support.begin(), support.end());
    }
    return tc;
}

struct InferredWeights {
    Multiweight v;
    QuadExt d_s;
    InferenceStatus status = InferenceStatus::determined;
};

/// Solves for the transverse multiweight and degree: one linear equation per
/// monomial (sum of scaled exponents times weights equals d_s; the circle
/// parameter carries weight 0) plus the transverse Calabi-Yau normalization
/// sum(v) - d_s = 2. Underdetermined systems are resolved by the symmetric
/// tie-break (least squares to the mean), and flagged.
inline InferredWeights infer_transverse_weights(const WPoly& poly, std::size_t circle_var,
                                                const std::vector<std::size_t>& scaled_vars) {
    if (poly.is_zero()) throw NotQuasiHomogeneousError("transverse polynomial is zero");
    const std::size_t m = scaled_vars.size();
    RationalMatrix rows;
    RationalVector rhs;
    for (const auto& [mono, coeff] : poly.terms()) {
        RationalVector row(m + 1, Rational(0));
        for (std::size_t j = 0; j < m; ++j) row[j] = Rational(mono.exps[scaled_vars[j]]);
        row[m] = -1;  // ... - d_s = 0
        (void)circle_var;  // the circle parameter has weight 0 and drops out
        rows.push_back(std::move(row));
        rhs.push_back(Rational(0));
    }
    {
        RationalVector norm(m + 1, Rational(1));
        norm[m] = -1;
        rows.push_back(std::move(norm));
        rhs.push_back(Rational(2));
    }

    LinearSolution sol = solve_linear(rows, rhs);
    if (!sol.consistent)
        throw NotQuasiHomogeneousError(
            "no positive weights make the transverse polynomial quasi-homogeneous with "
            "sum(v) - d_s = 2");

    InferredWeights result;
    RationalVector u = sol.particular;
    if (!sol.nullspace.empty()) {
        // Center the v-block: minimize sum over j of (v_j - mean(v))^2.
        RationalMatrix centering(m, RationalVector(m + 1, Rational(0)));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                centering[i][j] = i == j ? Rational(1) - Rational(1, m) : Rational(-1, m);
        u = minimize_quadratic_on_affine(centering, sol.particular, sol.nullspace);
        result.status = InferenceStatus::symmetric_tie_break;
    }

    std::vector<QuadExt> v;
    v.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        if (u[j] <= 0)
            throw InvalidWeightsError("inferred transverse weight v_" + std::to_string(j + 1) +
                                      " = " + cycert::to_string(u[j]) + " is not positive");
        v.emplace_back(u[j]);
    }
    if (u[m] <= 0)
        throw InvalidWeightsError("inferred transverse degree d_s = " +
                                  cycert::to_string(u[m]) + " is not positive");
    result.v = Multiweight(std::move(v));
    result.d_s = QuadExt(u[m]);
    return result;
}

/// Full per-axis analysis: singularity containment, surface polynomial, and
/// weight inference.
inline TransverseCone analyze_axis(const ConePresentation& cp, std::size_t axis) {
    TransverseCone tc = transverse_polynomial(cp, axis);
    InferredWeights inferred = infer_transverse_weights(tc.poly, axis, tc.scaled_vars);
    tc.v = inferred.v;
    tc.d_s = inferred.d_s;
    tc.status = inferred.status;
    return tc;
}

/// Assumption: d_s must agree exactly across every singular axis.
inline bool check_ds_uniform(const std::vector<TransverseCone>& tcs) {
    for (std::size_t i = 1; i < tcs.size(); ++i)
        if (tcs[i].d_s != tcs[0].d_s) return false;
    return true;
}

}  // namespace cycert
