#pragma once

// Shared builders for the bundled cone presentations, used across the test
// suites.

#include "cycert/parser.hpp"
#include "cycert/toric.hpp"
#include "cycert/transverse.hpp"

namespace testutil {

using namespace cycert;

inline ConePresentation spp_presentation(long long k) {
    ConePresentation cp;
    cp.ambient_dim = 4;
    cp.var_names = default_names(4);
    cp.polys = {parse_wpoly("z1*z2^" + std::to_string(k) + "+z3^2+z4^2", cp.var_names)};
    cp.weights = ckl_presentation_weights(k, 1);
    cp.degrees = {*is_homogeneous(cp.polys[0], cp.weights).degree};
    cp.declared_singular_axes = {0};
    return cp;
}

inline ConePresentation ckk_presentation(long long k) {
    ConePresentation cp;
    cp.ambient_dim = 4;
    cp.var_names = default_names(4);
    std::string ks = std::to_string(k);
    cp.polys = {parse_wpoly("z1^" + ks + "*z2^" + ks + "+z3^2+z4^2", cp.var_names)};
    cp.weights = ckl_presentation_weights(k, k);
    cp.degrees = {QuadExt(Rational(3 * k))};
    cp.declared_singular_axes = {0, 1};
    return cp;
}

inline ConePresentation c3zn_presentation(long long n) {
    ConePresentation cp;
    cp.ambient_dim = 4;
    cp.var_names = default_names(4);
    cp.polys = {parse_wpoly("z1*z2*z3-z4^" + std::to_string(n), cp.var_names)};
    cp.weights = Multiweight({QuadExt(Rational(n)), QuadExt(Rational(n)),
                              QuadExt(Rational(n)), QuadExt(3)});
    cp.degrees = {QuadExt(Rational(3 * n))};
    cp.declared_singular_axes = {0, 1, 2};
    return cp;
}

inline ConePresentation ci_presentation() {
    ConePresentation cp;
    cp.ambient_dim = 5;
    cp.var_names = default_names(5);
    cp.polys = {parse_wpoly("z1*z5-z4^2", cp.var_names),
                parse_wpoly("z2*z3-z5^2", cp.var_names)};
    cp.weights = Multiweight({QuadExt(2), QuadExt(4), QuadExt(4), QuadExt(3), QuadExt(4)});
    cp.degrees = {QuadExt(6), QuadExt(8)};
    cp.declared_singular_axes = {0, 1, 2};
    return cp;
}

}  // namespace testutil
