#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cycert/admissibility.hpp"
#include "cycert/errors.hpp"
#include "cycert/quadext.hpp"
#include "cycert/transverse.hpp"
#include "cycert/wpoly.hpp"

namespace cycert {

/// Center of the weighted blow-up at infinity attached to a singular axis:
/// the retained coordinates stay as omega's (the circle parameter among
/// them), the scaled ones become zeta_{i,j} = xi^(w_j - v_j*(d-ell)/d_s) z_j.
struct BlowupCenter {
    std::size_t axis = 0;
    std::set<std::size_t> retained;        // includes the axis variable
    std::vector<std::size_t> scaled;       // ascending; carries v
    Multiweight v;
    QuadExt d_s;
    QuadExt gap;       // d_r - ell_r, required to be equation-independent
    QuadExt xi_ratio;  // gap / d_s; xi_tilde = xi^xi_ratio
};

struct ChartTerm {
    GaussianRational coeff;
    QuadExt xi_exp;   // exponent of xi_i, always >= 0 in a valid chart
    Monomial mono;    // over the ambient variables, roles given by the center
};

/// One rewritten defining equation: P-side = epsilon * Q-side, normalized so
/// that the smallest xi-exponent on the P-side is zero.
struct ChartEquation {
    std::size_t poly_index = 0;
    std::vector<ChartTerm> lhs;  // transverse side
    std::vector<ChartTerm> rhs;  // epsilon * smoothing side
    QuadExt normalization;       // xi-power divided out of both sides
};

enum class XiStyle { plain, tilde };

struct Chart {
    BlowupCenter center;
    std::vector<ChartEquation> equations;
    GaussianRational epsilon0;
    XiStyle style = XiStyle::plain;
};

namespace chart_detail {

inline void sort_terms(std::vector<ChartTerm>& terms) {
    std::sort(terms.begin(), terms.end(), [](const ChartTerm& a, const ChartTerm& b) {
        return MonomialOrder{}(a.mono, b.mono);
    });
}

inline std::string mono_str(const Monomial& m, const BlowupCenter& c,
                            const std::vector<std::string>& xi_free_names) {
    std::string out;
    for (std::size_t j = 0; j < m.dim(); ++j) {
        if (m.exps[j] == 0) continue;
        if (!out.empty()) out += "*";
        out += xi_free_names[j];
        if (m.exps[j] > 1) out += "^" + std::to_string(m.exps[j]);
    }
    (void)c;
    return out;
}

inline std::optional<long long> as_integer(const QuadExt& x) {
    if (!x.is_rational()) return std::nullopt;
    const Rational& q = x.rational_part();
    if (boost::multiprecision::denominator(q) != 1) return std::nullopt;
    Int num = boost::multiprecision::numerator(q);
    return num.convert_to<long long>();
}

inline std::string xi_factor_str(const QuadExt& exp, const Chart& chart) {
    std::size_t i = chart.center.axis + 1;
    QuadExt shown = exp;
    std::string base = "xi_" + std::to_string(i);
    if (chart.style == XiStyle::tilde) {
        shown = exp / chart.center.xi_ratio;
        base = "xit_" + std::to_string(i);
    }
    if (auto n = as_integer(shown)) {
        if (*n == 1) return base;
        return base + "^" + std::to_string(*n);
    }
    return base + "^(" + shown.str() + ")";
}

inline std::string side_str(const std::vector<ChartTerm>& terms, const Chart& chart,
                            const std::vector<std::string>& names) {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const ChartTerm& t : terms) {
        std::string coeff = t.coeff.str();
        bool negative = false;
        if (!coeff.empty() && coeff[0] == '-') {
            negative = true;
            coeff = coeff.substr(1);
        }
        std::vector<std::string> factors;
        if (coeff != "1") factors.push_back(coeff);
        if (t.xi_exp.sign() > 0) factors.push_back(xi_factor_str(t.xi_exp, chart));
        std::string vars = mono_str(t.mono, chart.center, names);
        if (!vars.empty()) factors.push_back(vars);
        std::string body;
        for (const std::string& f : factors) body += (body.empty() ? "" : "*") + f;
        if (body.empty()) body = "1";
        if (first) {
            out = (negative ? "-" : "") + body;
            first = false;
        } else {
            out += (negative ? " - " : " + ") + body;
        }
    }
    return out;
}

}  // namespace chart_detail

/// Names of the chart coordinates: omega_i_j for retained variables (the
/// circle parameter is omega_i_i), zeta_i_j for scaled ones.
inline std::vector<std::string> chart_names(const BlowupCenter& c, std::size_t dim) {
    std::vector<std::string> names;
    names.reserve(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        bool scaled = std::find(c.scaled.begin(), c.scaled.end(), j) != c.scaled.end();
        names.push_back((scaled ? "zeta_" : "omega_") + std::to_string(c.axis + 1) + "_" +
                        std::to_string(j + 1));
    }
    return names;
}

/// Derives the blow-up center along a singular axis from its transverse
/// data: the scaled variables are the transverse-surface variables, all
/// other coordinates are retained.
inline BlowupCenter blowup_center(const ConePresentation& cp, const TransverseCone& tc,
                                  const SmoothingCandidate& sc) {
    BlowupCenter center;
    center.axis = tc.axis;
    center.scaled = tc.scaled_vars;
    center.v = tc.v;
    center.d_s = tc.d_s;
    for (std::size_t j = 0; j < cp.ambient_dim; ++j)
        if (std::find(center.scaled.begin(), center.scaled.end(), j) == center.scaled.end())
            center.retained.insert(j);
    center.gap = cp.degrees[0] - sc.ell[0];
    for (std::size_t r = 1; r < cp.polys.size(); ++r)
        if (cp.degrees[r] - sc.ell[r] != center.gap)
            throw Error("the degree gap d - ell differs between equations; the weighted "
                        "blow-up at infinity is not defined");
    if (center.gap.sign() <= 0)
        throw Error("the blow-up requires ell < d");
    center.xi_ratio = center.gap / center.d_s;
    return center;
}

/// Rewrites P_r(z) = epsilon Q_r(z) in the chart coordinates
/// (xi_i, omega_i, zeta_i) of the weighted blow-up: each equation is the
/// (CY.5) form with zeta substituted, divided by the smallest xi-power of
/// its P-side. Every remaining xi-exponent must be nonnegative for the
/// boundary extension to be defined; a negative exponent on the smoothing
/// side is reported with the offending monomial.
inline Chart chart_substitution(const ConePresentation& cp, const SmoothingCandidate& sc,
                                const TransverseCone& tc) {
    using namespace chart_detail;
    Chart chart;
    chart.center = blowup_center(cp, tc, sc);
    chart.epsilon0 = sc.epsilon0;
    const BlowupCenter& c = chart.center;

    auto scaled_content = [&c](const Monomial& m) {
        QuadExt content(0);
        for (std::size_t j = 0; j < c.scaled.size(); ++j) {
            unsigned e = m.exps[c.scaled[j]];
            if (e > 0) content += QuadExt(Rational(e)) * c.v[j] * c.xi_ratio;
        }
        return content;
    };

    for (std::size_t r = 0; r < cp.polys.size(); ++r) {
        ChartEquation eq;
        eq.poly_index = r;

        std::optional<QuadExt> min_exp;
        for (const auto& [mono, coeff] : cp.polys[r].terms()) {
            ChartTerm t{coeff, scaled_content(mono), mono};
            if (!min_exp || t.xi_exp < *min_exp) min_exp = t.xi_exp;
            eq.lhs.push_back(std::move(t));
        }
        eq.normalization = *min_exp;

        for (const auto& part : homogeneous_decomposition(sc.q[r], cp.weights)) {
            QuadExt base = cp.degrees[r] - part.degree;
            for (const auto& [mono, coeff] : part.part.terms()) {
                ChartTerm t{sc.epsilon0 * coeff, base + scaled_content(mono), mono};
                if (t.coeff.is_zero()) continue;  // epsilon = 0: the unperturbed cone
                eq.rhs.push_back(std::move(t));
            }
        }

        for (ChartTerm& t : eq.lhs) t.xi_exp = t.xi_exp - eq.normalization;
        for (ChartTerm& t : eq.rhs) {
            t.xi_exp = t.xi_exp - eq.normalization;
            if (t.xi_exp.sign() < 0) {
                auto names = chart_names(c, cp.ambient_dim);
                throw ChartInvalidityError(
                    "negative xi-exponent " + t.xi_exp.str() + " on the smoothing monomial " +
                        mono_str(t.mono, c, names) + " in equation " + std::to_string(r + 1),
                    mono_str(t.mono, c, names));
            }
        }
        sort_terms(eq.lhs);
        sort_terms(eq.rhs);
        chart.equations.push_back(std::move(eq));
    }

    // Complete intersections are displayed in xi_tilde whenever every
    // exponent is an integer multiple of the ratio, matching the smooth
    // structure the reparameterization certifies; hypersurface charts keep
    // plain xi-powers.
    if (cp.polys.size() > 1) {
        bool integral = true;
        for (const auto& eq : chart.equations) {
            for (const auto& t : eq.lhs)
                integral = integral && as_integer(t.xi_exp / c.xi_ratio).has_value();
            for (const auto& t : eq.rhs)
                integral = integral && as_integer(t.xi_exp / c.xi_ratio).has_value();
        }
        if (integral) chart.style = XiStyle::tilde;
    }
    return chart;
}

/// Whether every xi-exponent of the chart is an integer in the xi_tilde
/// parameter xi^((d-ell)/d_s); Section 4 asserts this for its complete
/// intersection.
inline bool xi_tilde_integral(const Chart& chart) {
    for (const auto& eq : chart.equations) {
        for (const auto& t : eq.lhs)
            if (!chart_detail::as_integer(t.xi_exp / chart.center.xi_ratio)) return false;
        for (const auto& t : eq.rhs)
            if (!chart_detail::as_integer(t.xi_exp / chart.center.xi_ratio)) return false;
    }
    return true;
}

inline std::string equation_str(const Chart& chart, const ChartEquation& eq,
                                std::size_t ambient_dim) {
    auto names = chart_names(chart.center, ambient_dim);
    return chart_detail::side_str(eq.lhs, chart, names) + " = " +
           chart_detail::side_str(eq.rhs, chart, names);
}

/// The fiber variety over a fixed circle parameter: the chart at xi = 0 with
/// the retained non-circle coordinates set to zero (they all vanish on the
/// boundary circle of the blown-up center). Equations that become trivial
/// under these substitutions are dropped; in the complete intersection case
/// the dropped equation is exactly the one cutting the retained coordinate
/// to zero, which is reported as a constraint.
struct FiberEquation {
    std::size_t poly_index = 0;
    WPoly lhs;
    WPoly rhs;
};

struct FiberVariety {
    std::size_t axis = 0;
    BlowupCenter center;
    GaussianRational epsilon0;
    std::vector<std::size_t> constrained_to_zero;  // retained coordinates forced to 0
    std::vector<FiberEquation> equations;          // nontrivial equations
};

inline FiberVariety fiber_equation(const Chart& chart, std::size_t ambient_dim) {
    const BlowupCenter& c = chart.center;
    FiberVariety fv;
    fv.axis = c.axis;
    fv.center = c;
    fv.epsilon0 = chart.epsilon0;

    auto restrict_side = [&](const std::vector<ChartTerm>& terms) {
        WPoly p(ambient_dim);
        for (const ChartTerm& t : terms)
            if (t.xi_exp.sign() == 0) p.add_term(t.mono, t.coeff);
        return p;
    };

    std::set<std::size_t> zeroed;
    for (std::size_t j : c.retained)
        if (j != c.axis) zeroed.insert(j);
    fv.constrained_to_zero.assign(zeroed.begin(), zeroed.end());

    for (const auto& eq : chart.equations) {
        FiberEquation sub{eq.poly_index, restrict_side(eq.lhs).substitute_zero(zeroed),
                          restrict_side(eq.rhs).substitute_zero(zeroed)};
        if ((sub.lhs - sub.rhs).is_zero()) continue;  // trivial on the boundary circle
        fv.equations.push_back(std::move(sub));
    }
    return fv;
}

inline std::string fiber_str(const FiberVariety& fv, std::size_t ambient_dim) {
    auto names = chart_names(fv.center, ambient_dim);
    std::string out;
    for (std::size_t j : fv.constrained_to_zero) {
        if (!out.empty()) out += "\n";
        out += names[j] + " = 0";
    }
    for (const auto& eq : fv.equations) {
        if (!out.empty()) out += "\n";
        out += eq.lhs.str(names) + " = " + eq.rhs.str(names);
    }
    return out;
}

/// Exact round-trip identity: substituting the chart map back and clearing
/// the normalizing xi-power must reproduce P_r - epsilon*Q_r monomial by
/// monomial. Returns false (rather than throwing) so tests can assert it.
inline bool verify_chart_roundtrip(const Chart& chart, const ConePresentation& cp,
                                   const SmoothingCandidate& sc) {
    const BlowupCenter& c = chart.center;
    for (const auto& eq : chart.equations) {
        // Each reconstructed term must sit at the uniform xi-level
        // d_r - normalization.
        QuadExt expected_level = cp.degrees[eq.poly_index] - eq.normalization;
        WPoly reconstructed(cp.ambient_dim);
        auto accumulate = [&](const std::vector<ChartTerm>& terms, bool negate) -> bool {
            for (const ChartTerm& t : terms) {
                QuadExt level = t.xi_exp;
                for (std::size_t j = 0; j < cp.ambient_dim; ++j) {
                    if (t.mono.exps[j] == 0) continue;
                    QuadExt e(Rational(t.mono.exps[j]));
                    auto pos = std::find(c.scaled.begin(), c.scaled.end(), j);
                    if (pos == c.scaled.end()) {
                        level += e * cp.weights[j];
                    } else {
                        std::size_t idx = pos - c.scaled.begin();
                        level += e * (cp.weights[j] - c.v[idx] * c.xi_ratio);
                    }
                }
                if (level != expected_level) return false;
                reconstructed.add_term(t.mono, negate ? -t.coeff : t.coeff);
            }
            return true;
        };
        if (!accumulate(eq.lhs, false)) return false;
        if (!accumulate(eq.rhs, true)) return false;
        WPoly original = cp.polys[eq.poly_index] - sc.epsilon0 * sc.q[eq.poly_index];
        if (!(reconstructed == original)) return false;
    }
    return true;
}

}  // namespace cycert
