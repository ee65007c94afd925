#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cycert/errors.hpp"
#include "cycert/gaussian.hpp"
#include "cycert/quadext.hpp"

namespace cycert {

/// Exponent vector of a monomial; its length is the ambient dimension of the
/// owning polynomial.
struct Monomial {
    std::vector<unsigned> exps;

    explicit Monomial(std::size_t dim) : exps(dim, 0) {}
    explicit Monomial(std::vector<unsigned> e) : exps(std::move(e)) {}

    std::size_t dim() const { return exps.size(); }
    bool is_constant() const {
        return std::all_of(exps.begin(), exps.end(), [](unsigned e) { return e == 0; });
    }
    unsigned total_degree() const {
        unsigned t = 0;
        for (unsigned e : exps) t += e;
        return t;
    }

    Monomial operator*(const Monomial& other) const {
        if (exps.size() != other.exps.size())
            throw DimensionMismatchError("monomial dimensions differ");
        Monomial r(exps);
        for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] += other.exps[i];
        return r;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps == b.exps; }
};

/// Orders monomials lexicographically descending, which makes polynomial
/// iteration match the paper's display order (z1*z2^2 + z3^2 + z4^2).
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return a.exps > b.exps;
    }
};

/// Positive weight vector for an R+-action t.z = (t^w1 z1, ..., t^wn zn).
/// Entries may be irrational but must all lie in a single quadratic field.
struct Multiweight {
    std::vector<QuadExt> w;

    Multiweight() = default;
    explicit Multiweight(std::vector<QuadExt> weights) : w(std::move(weights)) {
        Int radicand(0);
        for (const QuadExt& x : w) {
            if (x.sign() <= 0)
                throw InvalidWeightsError("multiweight entries must be strictly positive");
            if (!x.is_rational()) {
                if (radicand != 0 && radicand != x.radicand())
                    throw IncompatibleFieldError("multiweight mixes distinct radicands");
                radicand = x.radicand();
            }
        }
    }

    std::size_t dim() const { return w.size(); }
    const QuadExt& operator[](std::size_t i) const { return w[i]; }
};

/// Sparse multivariate polynomial with Gaussian-rational coefficients.
class WPoly {
public:
    using TermMap = std::map<Monomial, GaussianRational, MonomialOrder>;

    explicit WPoly(std::size_t dim) : dim_(dim) {}

    static WPoly constant(std::size_t dim, const GaussianRational& c) {
        WPoly p(dim);
        p.add_term(Monomial(dim), c);
        return p;
    }
    static WPoly variable(std::size_t dim, std::size_t index, unsigned exp = 1) {
        if (index >= dim) throw DimensionMismatchError("variable index out of range");
        WPoly p(dim);
        Monomial m(dim);
        m.exps[index] = exp;
        p.add_term(m, GaussianRational(1));
        return p;
    }

    std::size_t dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t num_terms() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    void add_term(const Monomial& m, const GaussianRational& c) {
        if (m.dim() != dim_) throw DimensionMismatchError("monomial dimension mismatch");
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend WPoly operator+(const WPoly& a, const WPoly& b) {
        a.check_same_dim(b);
        WPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend WPoly operator-(const WPoly& a, const WPoly& b) {
        a.check_same_dim(b);
        WPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    WPoly operator-() const {
        WPoly r(dim_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend WPoly operator*(const WPoly& a, const WPoly& b) {
        a.check_same_dim(b);
        WPoly r(a.dim_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    friend WPoly operator*(const GaussianRational& c, const WPoly& p) {
        WPoly r(p.dim_);
        if (c.is_zero()) return r;
        for (const auto& [m, pc] : p.terms_) r.terms_.emplace(m, c * pc);
        return r;
    }

    friend bool operator==(const WPoly& a, const WPoly& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

    WPoly partial_derivative(std::size_t var) const {
        if (var >= dim_) throw DimensionMismatchError("variable index out of range");
        WPoly r(dim_);
        for (const auto& [m, c] : terms_) {
            if (m.exps[var] == 0) continue;
            Monomial dm = m;
            unsigned e = dm.exps[var]--;
            r.add_term(dm, GaussianRational(Rational(e)) * c);
        }
        return r;
    }

    /// Sets each listed variable to zero.
    WPoly substitute_zero(const std::set<std::size_t>& vars) const {
        WPoly r(dim_);
        for (const auto& [m, c] : terms_) {
            bool killed = false;
            for (std::size_t v : vars)
                if (m.exps[v] > 0) { killed = true; break; }
            if (!killed) r.terms_.emplace(m, c);
        }
        return r;
    }

    /// P with z_j := 0 for all j != axis; the restriction to the z_axis-axis.
    WPoly restrict_to_axis(std::size_t axis) const {
        if (axis >= dim_) throw DimensionMismatchError("axis index out of range");
        std::set<std::size_t> others;
        for (std::size_t j = 0; j < dim_; ++j)
            if (j != axis) others.insert(j);
        return substitute_zero(others);
    }

    /// Indices of variables appearing with positive exponent.
    std::set<std::size_t> support() const {
        std::set<std::size_t> s;
        for (const auto& [m, c] : terms_)
            for (std::size_t j = 0; j < dim_; ++j)
                if (m.exps[j] > 0) s.insert(j);
        return s;
    }

    std::complex<double> eval(const std::vector<std::complex<double>>& z) const {
        if (z.size() != dim_) throw DimensionMismatchError("evaluation point dimension mismatch");
        std::complex<double> total = 0;
        for (const auto& [m, c] : terms_) {
            std::complex<double> t = c.to_complex();
            for (std::size_t j = 0; j < dim_; ++j)
                for (unsigned e = 0; e < m.exps[j]; ++e) t *= z[j];
            total += t;
        }
        return total;
    }

    /// Canonical rendering with the given variable names, in descending
    /// lexicographic monomial order. Round-trips through the parser.
    std::string str(const std::vector<std::string>& names) const {
        if (names.size() != dim_) throw DimensionMismatchError("variable name count mismatch");
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            std::string coeff = c.str();
            bool negative = false;
            if (!coeff.empty() && coeff[0] == '-') {  // mixed coefficients are parenthesized
                negative = true;
                coeff = coeff.substr(1);
            }
            std::string vars;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (m.exps[j] == 0) continue;
                if (!vars.empty()) vars += "*";
                vars += names[j];
                if (m.exps[j] > 1) vars += "^" + std::to_string(m.exps[j]);
            }
            std::string body;
            if (vars.empty()) {
                body = coeff;
            } else if (coeff == "1") {
                body = vars;
            } else {
                body = coeff + "*" + vars;
            }
            if (first) {
                out = (negative ? "-" : "") + body;
                first = false;
            } else {
                out += (negative ? " - " : " + ") + body;
            }
        }
        return out;
    }

private:
    void check_same_dim(const WPoly& other) const {
        if (dim_ != other.dim_) throw DimensionMismatchError("polynomial dimensions differ");
    }

    std::size_t dim_;
    TermMap terms_;
};

/// Weighted degree of a monomial: sum of exponent(i) * weight(i), exact.
inline QuadExt weighted_degree(const Monomial& m, const Multiweight& w) {
    if (m.dim() != w.dim()) throw DimensionMismatchError("monomial/multiweight dimension mismatch");
    QuadExt deg(0);
    for (std::size_t i = 0; i < m.dim(); ++i) {
        if (m.exps[i] == 0) continue;
        deg += QuadExt(Rational(m.exps[i])) * w[i];
    }
    return deg;
}

struct HomogeneousPart {
    QuadExt degree;
    WPoly part;
};

/// Splits Q into weighted-homogeneous parts, ordered by strictly decreasing
/// degree. Parts re-sum to Q exactly.
inline std::vector<HomogeneousPart> homogeneous_decomposition(const WPoly& q,
                                                              const Multiweight& w) {
    if (q.dim() != w.dim())
        throw DimensionMismatchError("polynomial/multiweight dimension mismatch");
    std::vector<HomogeneousPart> parts;
    for (const auto& [m, c] : q.terms()) {
        QuadExt deg = weighted_degree(m, w);
        auto it = std::find_if(parts.begin(), parts.end(),
                               [&](const HomogeneousPart& p) { return p.degree == deg; });
        if (it == parts.end()) {
            parts.push_back({deg, WPoly(q.dim())});
            it = std::prev(parts.end());
        }
        it->part.add_term(m, c);
    }
    std::sort(parts.begin(), parts.end(),
              [](const HomogeneousPart& a, const HomogeneousPart& b) { return b.degree < a.degree; });
    return parts;
}

struct Homogeneity {
    std::optional<QuadExt> degree;  // absent when inhomogeneous
    bool degenerate_zero = false;   // zero polynomial: degree 0 by convention
};

inline Homogeneity is_homogeneous(const WPoly& p, const Multiweight& w) {
    if (p.is_zero()) return {QuadExt(0), true};
    auto parts = homogeneous_decomposition(p, w);
    if (parts.size() == 1) return {parts.front().degree, false};
    return {std::nullopt, false};
}

/// Top weighted degree of a nonzero polynomial.
inline QuadExt top_degree(const WPoly& p, const Multiweight& w) {
    if (p.is_zero()) return QuadExt(0);
    return homogeneous_decomposition(p, w).front().degree;
}

inline std::vector<std::string> default_names(std::size_t dim, const std::string& stem = "z") {
    std::vector<std::string> names;
    names.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) names.push_back(stem + std::to_string(i + 1));
    return names;
}

}  // namespace cycert
