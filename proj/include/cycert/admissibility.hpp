#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cycert/errors.hpp"
#include "cycert/quadext.hpp"
#include "cycert/transverse.hpp"
#include "cycert/wpoly.hpp"

namespace cycert {

/// An affine deformation P(z) = epsilon * Q(z) of the cone. For complete
/// intersections there is one perturbing polynomial per defining equation.
struct SmoothingCandidate {
    std::vector<WPoly> q;
    std::vector<QuadExt> ell;  // top weighted degree of each Q
    GaussianRational epsilon0{1};
};

inline SmoothingCandidate make_smoothing(const ConePresentation& cp, std::vector<WPoly> q,
                                         GaussianRational epsilon0 = GaussianRational(1)) {
    if (q.size() != cp.polys.size())
        throw DimensionMismatchError("one perturbing polynomial is required per equation");
    SmoothingCandidate sc;
    for (const WPoly& poly : q) {
        if (poly.is_zero()) throw Error("smoothing polynomial is zero");
        if (poly.dim() != cp.ambient_dim)
            throw DimensionMismatchError("smoothing polynomial dimension mismatch");
        sc.ell.push_back(top_degree(poly, cp.weights));
    }
    sc.q = std::move(q);
    sc.epsilon0 = epsilon0;
    return sc;
}

struct WindowResult {
    bool ok = false;
    QuadExt lower_margin;  // ell - (d - d_s), nonnegative inside the window
    QuadExt upper_margin;  // d - ell, strictly positive inside the window
};

/// The degree window d - d_s <= ell < d of the main theorem, decided by
/// exact sign computations.
inline WindowResult degree_window(const QuadExt& d, const QuadExt& d_s, const QuadExt& ell) {
    if (d.sign() <= 0 || d_s.sign() <= 0)
        throw Error("degree_window requires d > 0 and d_s > 0");
    WindowResult r;
    r.lower_margin = ell - (d - d_s);
    r.upper_margin = d - ell;
    r.ok = r.lower_margin.sign() >= 0 && r.upper_margin.sign() > 0;
    return r;
}

/// nu = (d_s - (d - ell)) / d_s and beta = min(d_s, 4), exact.
inline std::pair<QuadExt, QuadExt> compute_nu_beta(const QuadExt& d, const QuadExt& d_s,
                                                   const QuadExt& ell) {
    if (!degree_window(d, d_s, ell).ok)
        throw Error("degree window violated: nu and beta are undefined");
    QuadExt nu = (d_s - (d - ell)) / d_s;
    QuadExt beta = min(d_s, QuadExt(4));
    return {nu, beta};
}

enum class RateBranch { A, B, fail };

inline std::string to_string(RateBranch b) {
    switch (b) {
        case RateBranch::A: return "A";
        case RateBranch::B: return "B";
        case RateBranch::fail: return "fail";
    }
    return "?";
}

/// The rate condition of the main theorem: branch A when beta > 2/(1-nu),
/// branch B when 3 < beta <= 2/(1-nu) < 9, otherwise fail. All comparisons
/// exact.
inline RateBranch rate_condition(const QuadExt& nu, const QuadExt& beta) {
    if (nu.sign() < 0 || (nu - QuadExt(1)).sign() >= 0)
        throw Error("rate_condition requires 0 <= nu < 1");
    QuadExt threshold = QuadExt(2) / (QuadExt(1) - nu);
    if (beta > threshold) return RateBranch::A;
    if (QuadExt(3) < beta && beta <= threshold && threshold < QuadExt(9)) return RateBranch::B;
    return RateBranch::fail;
}

struct EllInterval {
    QuadExt lo;  // inclusive
    QuadExt hi;  // exclusive
    bool empty = false;
};

/// The certified interval of smoothing degrees for fixed (d, d_s): the
/// degree window intersected with the rate condition, as exact half-open
/// endpoints.
inline EllInterval admissible_ell_interval(const QuadExt& d, const QuadExt& d_s) {
    EllInterval interval;
    interval.lo = d - d_s;
    QuadExt beta = min(d_s, QuadExt(4));
    QuadExt nu_max(0);
    if (beta > QuadExt(3)) {
        nu_max = QuadExt(Rational(7, 9));
    } else if (beta > QuadExt(2)) {
        nu_max = QuadExt(1) - QuadExt(2) / beta;
    } else {
        interval.empty = true;
        interval.hi = interval.lo;
        return interval;
    }
    // nu < nu_max translates to ell < d - d_s + d_s * nu_max, which sits
    // strictly below the window's upper end d.
    interval.hi = min(d, d - d_s + d_s * nu_max);
    interval.empty = !(interval.lo < interval.hi);
    return interval;
}

struct FiberCheck {
    std::size_t axis = 0;
    bool smooth = false;
    std::string note;
};

struct AssumptionFlags {
    bool axes_verified = false;
    bool ds_uniform = false;
    bool fibers_smooth = false;
    bool user_attested_orbifold = false;
    std::vector<FiberCheck> fiber_details;
};

enum class Verdict { certified, rejected };

/// Everything the main theorem needs, with exact margins and the reason for
/// rejection when the hypotheses fail.
struct AdmissibilityCertificate {
    std::vector<WindowResult> windows;  // one per defining polynomial
    bool window_ok = false;
    std::optional<QuadExt> nu;
    std::optional<QuadExt> beta;
    std::optional<QuadExt> rate_threshold;  // 2/(1-nu)
    RateBranch branch = RateBranch::fail;
    AssumptionFlags flags;
    Verdict verdict = Verdict::rejected;
    std::string reject_reason;  // empty when certified
};

/// Aggregates the degree window, the nu/beta rate condition and the
/// assumption flags into a verdict. Fiber smoothness results are required
/// only once the window holds; axis containment and d_s uniformity are
/// recomputed here so the certificate is self-contained.
inline AdmissibilityCertificate certify(const ConePresentation& cp, const SmoothingCandidate& sc,
                                        const std::vector<TransverseCone>& tcs,
                                        const std::vector<FiberCheck>& fiber_checks,
                                        bool user_attested_orbifold) {
    if (tcs.empty()) throw IncompleteInputError("transverse analysis results are required");
    AdmissibilityCertificate cert;
    const QuadExt d_s = tcs.front().d_s;

    cert.window_ok = true;
    for (std::size_t r = 0; r < cp.polys.size(); ++r) {
        WindowResult w = degree_window(cp.degrees[r], d_s, sc.ell[r]);
        cert.window_ok = cert.window_ok && w.ok;
        cert.windows.push_back(std::move(w));
    }
    if (!cert.window_ok) {
        cert.verdict = Verdict::rejected;
        cert.reject_reason = "window";
        return cert;
    }

    // A single warping exponent requires the gap d - ell to be the same for
    // every defining equation.
    QuadExt gap = cp.degrees[0] - sc.ell[0];
    for (std::size_t r = 1; r < cp.polys.size(); ++r) {
        if (cp.degrees[r] - sc.ell[r] != gap) {
            cert.verdict = Verdict::rejected;
            cert.reject_reason = "inconsistent-gap";
            return cert;
        }
    }

    auto [nu, beta] = compute_nu_beta(cp.degrees[0], d_s, sc.ell[0]);
    cert.nu = nu;
    cert.beta = beta;
    cert.rate_threshold = QuadExt(2) / (QuadExt(1) - nu);
    cert.branch = rate_condition(nu, beta);
    if (cert.branch == RateBranch::fail) {
        cert.verdict = Verdict::rejected;
        cert.reject_reason = "rate";
        return cert;
    }

    cert.flags.axes_verified = true;
    for (std::size_t axis : cp.declared_singular_axes)
        cert.flags.axes_verified =
            cert.flags.axes_verified &&
            axis_singularity_check(cp, axis).contained_in_singular_locus;
    cert.flags.ds_uniform = check_ds_uniform(tcs);
    cert.flags.user_attested_orbifold = user_attested_orbifold;

    cert.flags.fiber_details = fiber_checks;
    cert.flags.fibers_smooth = true;
    for (std::size_t axis : cp.declared_singular_axes) {
        auto it = std::find_if(fiber_checks.begin(), fiber_checks.end(),
                               [axis](const FiberCheck& f) { return f.axis == axis; });
        if (it == fiber_checks.end())
            throw IncompleteInputError("missing fiber smoothness result for axis " +
                                       std::to_string(axis + 1));
        cert.flags.fibers_smooth = cert.flags.fibers_smooth && it->smooth;
    }

    if (!cert.flags.axes_verified) {
        cert.verdict = Verdict::rejected;
        cert.reject_reason = "axes";
    } else if (!cert.flags.ds_uniform) {
        cert.verdict = Verdict::rejected;
        cert.reject_reason = "ds-uniformity";
    } else if (!cert.flags.fibers_smooth) {
        cert.verdict = Verdict::rejected;
        cert.reject_reason = "fiber-smoothness";
    } else if (!cert.flags.user_attested_orbifold) {
        cert.verdict = Verdict::rejected;
        cert.reject_reason = "orbifold-attestation";
    } else {
        cert.verdict = Verdict::certified;
    }
    return cert;
}

/// Evaluates certify over a parameterized family of smoothings. The family
/// callback builds the candidate for a parameter value; the fiber callback
/// supplies the per-axis smoothness results for that candidate.
inline std::vector<std::pair<long, AdmissibilityCertificate>> enumerate_admissible(
    const ConePresentation& cp, const std::vector<TransverseCone>& tcs,
    const std::function<SmoothingCandidate(long)>& family, long from, long to,
    const std::function<std::vector<FiberCheck>(const SmoothingCandidate&)>& fiber_checker,
    bool user_attested_orbifold) {
    std::vector<std::pair<long, AdmissibilityCertificate>> out;
    for (long p = from; p <= to; ++p) {
        SmoothingCandidate sc = family(p);
        std::vector<FiberCheck> fibers;
        // Fiber analysis is only needed (and only well-defined) inside the
        // degree window; certify enforces the same order.
        bool window_ok = true;
        for (std::size_t r = 0; r < cp.polys.size(); ++r)
            window_ok = window_ok && degree_window(cp.degrees[r], tcs.front().d_s, sc.ell[r]).ok;
        if (window_ok) fibers = fiber_checker(sc);
        out.emplace_back(p, certify(cp, sc, tcs, fibers, user_attested_orbifold));
    }
    return out;
}

}  // namespace cycert
