#pragma once

#include <complex>
#include <string>

#include "cycert/errors.hpp"
#include "cycert/rational.hpp"

namespace cycert {

/// Gaussian rational p/q + (r/s)*i. Polynomial coefficients live here; the
/// imaginary unit is needed for substitutions like w = z3 + i*z4.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(int r) : re_(r), im_(0) {}            // NOLINT(google-explicit-constructor)
    GaussianRational(Rational r) : re_(std::move(r)), im_(0) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return GaussianRational(Rational(0), Rational(1)); }

    const Rational& real() const { return re_; }
    const Rational& imag() const { return im_; }
    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussianRational operator-() const { return GaussianRational(-re_, -im_); }

    friend GaussianRational operator+(const GaussianRational& x, const GaussianRational& y) {
        return GaussianRational(x.re_ + y.re_, x.im_ + y.im_);
    }
    friend GaussianRational operator-(const GaussianRational& x, const GaussianRational& y) {
        return GaussianRational(x.re_ - y.re_, x.im_ - y.im_);
    }
    friend GaussianRational operator*(const GaussianRational& x, const GaussianRational& y) {
        return GaussianRational(x.re_ * y.re_ - x.im_ * y.im_, x.re_ * y.im_ + x.im_ * y.re_);
    }
    friend GaussianRational operator/(const GaussianRational& x, const GaussianRational& y) {
        Rational norm = y.re_ * y.re_ + y.im_ * y.im_;
        if (norm == 0) throw DivisionByZeroError("division by zero Gaussian rational");
        return GaussianRational((x.re_ * y.re_ + x.im_ * y.im_) / norm,
                                (x.im_ * y.re_ - x.re_ * y.im_) / norm);
    }

    GaussianRational& operator+=(const GaussianRational& y) { return *this = *this + y; }
    GaussianRational& operator-=(const GaussianRational& y) { return *this = *this - y; }
    GaussianRational& operator*=(const GaussianRational& y) { return *this = *this * y; }

    friend bool operator==(const GaussianRational& x, const GaussianRational& y) {
        return x.re_ == y.re_ && x.im_ == y.im_;
    }
    friend bool operator!=(const GaussianRational& x, const GaussianRational& y) {
        return !(x == y);
    }

    std::complex<double> to_complex() const {
        return {to_double(re_), to_double(im_)};
    }

    /// Canonical rendering: "3", "-1/2", "i", "-2*i", "(1 + 2*i)".
    std::string str() const {
        if (im_ == 0) return to_string(re_);
        if (re_ == 0) {
            if (im_ == 1) return "i";
            if (im_ == -1) return "-i";
            return to_string(im_) + "*i";
        }
        std::string im_part = im_ < 0 ? " - " : " + ";
        Rational abs_im = im_ < 0 ? Rational(-im_) : im_;
        if (abs_im != 1) im_part += to_string(abs_im) + "*i";
        else im_part += "i";
        return "(" + to_string(re_) + im_part + ")";
    }

private:
    Rational re_;
    Rational im_;
};

}  // namespace cycert
