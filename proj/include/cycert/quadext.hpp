#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <compare>
#include <string>
#include <utility>

#include "cycert/errors.hpp"
#include "cycert/rational.hpp"

namespace cycert {

/// Exact element a + b*sqrt(D) of the real quadratic field Q(sqrt(D)).
///
/// Canonical form: D is squarefree and D = 0 exactly when the value is
/// rational (b = 0). Square factors of a requested radicand are folded into
/// the surd coefficient on construction, so QuadExt(0, 1, 12) stores
/// 2*sqrt(3) and QuadExt(0, 1, 9) stores the rational 3. Values from
/// different fields cannot be combined unless one of them is rational.
class QuadExt {
public:
    QuadExt() : rat_(0), surd_(0), radicand_(0) {}
    QuadExt(int a) : rat_(a), surd_(0), radicand_(0) {}          // NOLINT(google-explicit-constructor)
    QuadExt(Rational a) : rat_(std::move(a)), surd_(0), radicand_(0) {}  // NOLINT(google-explicit-constructor)

    QuadExt(Rational a, Rational b, Int d)
        : rat_(std::move(a)), surd_(std::move(b)), radicand_(std::move(d)) {
        canonicalize();
    }

    static QuadExt sqrt_of(const Int& n) {
        if (n < 0) throw Error("sqrt of negative integer is not real");
        return QuadExt(Rational(0), Rational(1), n);
    }

    const Rational& rational_part() const { return rat_; }
    const Rational& surd_part() const { return surd_; }
    const Int& radicand() const { return radicand_; }

    bool is_rational() const { return radicand_ == 0; }
    bool is_zero() const { return rat_ == 0 && surd_ == 0; }

    QuadExt operator-() const {
        QuadExt r = *this;
        r.rat_ = -r.rat_;
        r.surd_ = -r.surd_;
        return r;
    }

    friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
        Int d = merged_radicand(x, y);
        QuadExt r;
        r.rat_ = x.rat_ + y.rat_;
        r.surd_ = x.surd_ + y.surd_;
        r.radicand_ = d;
        r.normalize_zero_surd();
        return r;
    }

    friend QuadExt operator-(const QuadExt& x, const QuadExt& y) { return x + (-y); }

    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        Int d = merged_radicand(x, y);
        QuadExt r;
        r.rat_ = x.rat_ * y.rat_ + x.surd_ * y.surd_ * Rational(d);
        r.surd_ = x.rat_ * y.surd_ + x.surd_ * y.rat_;
        r.radicand_ = d;
        r.normalize_zero_surd();
        return r;
    }

    /// Multiplicative inverse via the conjugate: 1/(a+b*sqrt(D)) =
    /// (a-b*sqrt(D))/(a^2-b^2*D). The norm cannot vanish for a nonzero
    /// canonical value since D is squarefree.
    QuadExt inverse() const {
        if (is_zero()) throw DivisionByZeroError("inverse of zero");
        Rational norm = rat_ * rat_ - surd_ * surd_ * Rational(radicand_);
        if (norm == 0)
            throw DivisionByZeroError("zero norm in quadratic field inversion");
        QuadExt r;
        r.rat_ = rat_ / norm;
        r.surd_ = -surd_ / norm;
        r.radicand_ = radicand_;
        r.normalize_zero_surd();
        return r;
    }

    friend QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * y.inverse(); }

    QuadExt& operator+=(const QuadExt& y) { return *this = *this + y; }
    QuadExt& operator-=(const QuadExt& y) { return *this = *this - y; }
    QuadExt& operator*=(const QuadExt& y) { return *this = *this * y; }
    QuadExt& operator/=(const QuadExt& y) { return *this = *this / y; }

    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        return x.rat_ == y.rat_ && x.surd_ == y.surd_ && x.radicand_ == y.radicand_;
    }
    friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

    /// Exact sign of the real number a + b*sqrt(D), decided by comparing
    /// a^2 against b^2*D; no floating point involved.
    int sign() const {
        if (surd_ == 0) return sign_of(rat_);
        if (rat_ == 0) return sign_of(surd_);
        int sa = sign_of(rat_);
        int sb = sign_of(surd_);
        if (sa == sb) return sa;
        Rational square_lhs = rat_ * rat_;
        Rational square_rhs = surd_ * surd_ * Rational(radicand_);
        int cmp = square_lhs.compare(square_rhs);
        if (cmp == 0) return 0;  // unreachable for squarefree D >= 2
        return cmp > 0 ? sa : sb;
    }

    friend bool operator<(const QuadExt& x, const QuadExt& y) { return (x - y).sign() < 0; }
    friend bool operator>(const QuadExt& x, const QuadExt& y) { return (x - y).sign() > 0; }
    friend bool operator<=(const QuadExt& x, const QuadExt& y) { return (x - y).sign() <= 0; }
    friend bool operator>=(const QuadExt& x, const QuadExt& y) { return (x - y).sign() >= 0; }

    /// Nearest double; for reporting and optimizer seeds only.
    double to_double() const {
        BigFloat v = BigFloat(rat_);
        if (surd_ != 0) v += BigFloat(surd_) * sqrt(BigFloat(radicand_));
        return static_cast<double>(v);
    }

    std::string str() const {
        if (radicand_ == 0) return cycert::to_string(rat_);
        std::string surd;
        Rational abs_b = surd_ < 0 ? Rational(-surd_) : surd_;
        if (abs_b != 1) surd = cycert::to_string(abs_b) + "*";
        surd += "sqrt(" + radicand_.str() + ")";
        if (rat_ == 0) return (surd_ < 0 ? "-" : "") + surd;
        return cycert::to_string(rat_) + (surd_ < 0 ? " - " : " + ") + surd;
    }

private:
    void canonicalize() {
        if (radicand_ < 0) throw Error("negative radicand");
        if (surd_ == 0 || radicand_ == 0) {
            surd_ = 0;
            radicand_ = 0;
            return;
        }
        // Extract the largest square factor by trial division. Radicands in
        // practice are small (k^2-kl+l^2 for modest k, l).
        Int d = radicand_;
        Int square_part = 1;
        for (Int p = 2; p * p <= d; ++p) {
            while (d % (p * p) == 0) {
                d /= p * p;
                square_part *= p;
            }
        }
        radicand_ = d;
        if (square_part != 1) surd_ *= Rational(square_part);
        if (radicand_ == 1) {
            rat_ += surd_;
            surd_ = 0;
            radicand_ = 0;
        }
    }

    void normalize_zero_surd() {
        if (surd_ == 0) radicand_ = 0;
    }

    static Int merged_radicand(const QuadExt& x, const QuadExt& y) {
        if (x.radicand_ == 0) return y.radicand_;
        if (y.radicand_ == 0) return x.radicand_;
        if (x.radicand_ != y.radicand_)
            throw IncompatibleFieldError("cannot combine sqrt(" + x.radicand_.str() +
                                         ") with sqrt(" + y.radicand_.str() + ")");
        return x.radicand_;
    }

    Rational rat_;
    Rational surd_;
    Int radicand_;
};

inline QuadExt operator*(const Rational& c, const QuadExt& x) { return QuadExt(c) * x; }

inline const QuadExt& min(const QuadExt& x, const QuadExt& y) { return y < x ? y : x; }
inline const QuadExt& max(const QuadExt& x, const QuadExt& y) { return x < y ? y : x; }

}  // namespace cycert
