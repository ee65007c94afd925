#include <catch2/catch_amalgamated.hpp>

#include "cycert/admissibility.hpp"
#include "presentations.hpp"

using namespace cycert;
using namespace testutil;

namespace {

QuadExt rt3(long a_num, long a_den, long b_num, long b_den) {
    return QuadExt(Rational(a_num, a_den), Rational(b_num, b_den), Int(3));
}

std::vector<FiberCheck> assume_smooth(const ConePresentation& cp) {
    std::vector<FiberCheck> checks;
    for (std::size_t axis : cp.declared_singular_axes)
        checks.push_back({axis, true, "assumed for unit test"});
    return checks;
}

SmoothingCandidate spp_family(const ConePresentation& cp, long m) {
    return make_smoothing(cp, {parse_wpoly("z1^" + std::to_string(m) + "+1", cp.var_names)});
}

SmoothingCandidate ckk_family(const ConePresentation& cp, long m) {
    std::string ms = std::to_string(m);
    return make_smoothing(cp, {parse_wpoly("z1^" + ms + "+z2^" + ms + "+1", cp.var_names)});
}

}  // namespace

TEST_CASE("degree window") {
    auto cp = spp_presentation(2);
    QuadExt d = cp.degrees[0];       // 3 + sqrt(3)
    QuadExt d_s(4);

    SECTION("SPP k=2, m=3: ell = 9-3*sqrt(3) lies in [sqrt(3)-1, 3+sqrt(3))") {
        QuadExt ell = rt3(9, 1, -3, 1);
        auto w = degree_window(d, d_s, ell);
        CHECK(w.ok);
        CHECK(w.lower_margin == ell - rt3(-1, 1, 1, 1));
        CHECK(w.lower_margin.sign() > 0);
        CHECK(w.upper_margin.sign() > 0);
    }
    SECTION("the Milnor fiber has ell = 0 below the window") {
        auto w = degree_window(d, d_s, QuadExt(0));
        CHECK_FALSE(w.ok);
        CHECK(w.lower_margin.sign() < 0);  // 0 < sqrt(3)-1
    }
    SECTION("ell = d fails the strict upper bound") {
        auto w = degree_window(d, d_s, d);
        CHECK_FALSE(w.ok);
        CHECK(w.upper_margin == QuadExt(0));
    }
}

TEST_CASE("nu and beta") {
    SECTION("C3/Zn^2 with ell = 2n: nu = 1/2, beta = 4") {
        for (long n : {2L, 3L}) {
            auto [nu, beta] = compute_nu_beta(QuadExt(Rational(3 * n)), QuadExt(Rational(2 * n)),
                                              QuadExt(Rational(2 * n)));
            CHECK(nu == QuadExt(Rational(1, 2)));
            CHECK(beta == QuadExt(4));
        }
    }
    SECTION("C3/Zn^2 with ell = n: nu = 0") {
        auto [nu, beta] = compute_nu_beta(QuadExt(6), QuadExt(4), QuadExt(2));
        CHECK(nu == QuadExt(0));
        CHECK(beta == QuadExt(4));
    }
    SECTION("SPP k=2, m=3: nu = (5-2*sqrt(3))/2") {
        auto [nu, beta] = compute_nu_beta(rt3(3, 1, 1, 1), QuadExt(4), rt3(9, 1, -3, 1));
        CHECK(nu == rt3(5, 2, -1, 1));
        CHECK(nu.to_double() == Catch::Approx(0.768).margin(5e-4));
        CHECK(beta == QuadExt(4));
    }
    SECTION("window violations are an error here") {
        CHECK_THROWS_AS(compute_nu_beta(QuadExt(6), QuadExt(4), QuadExt(0)), Error);
    }
}

TEST_CASE("rate condition") {
    CHECK(rate_condition(QuadExt(Rational(1, 2)), QuadExt(4)) == RateBranch::B);
    CHECK(rate_condition(QuadExt(0), QuadExt(4)) == RateBranch::A);
    CHECK(rate_condition(QuadExt(Rational(9, 10)), QuadExt(4)) == RateBranch::fail);
    CHECK_THROWS_AS(rate_condition(QuadExt(Rational(-1, 10)), QuadExt(4)), Error);
    CHECK_THROWS_AS(rate_condition(QuadExt(1), QuadExt(4)), Error);
    // beta <= 3 only admits branch A.
    CHECK(rate_condition(QuadExt(Rational(1, 4)), QuadExt(3)) == RateBranch::A);
    CHECK(rate_condition(QuadExt(Rational(1, 2)), QuadExt(3)) == RateBranch::fail);
}

TEST_CASE("certification") {
    SECTION("SPP k=2, m=2 is certified on branch A with nu=(7-3*sqrt(3))/4") {
        auto cp = spp_presentation(2);
        auto tcs = std::vector<TransverseCone>{analyze_axis(cp, 0)};
        auto cert = certify(cp, spp_family(cp, 2), tcs, assume_smooth(cp), true);
        CHECK(cert.verdict == Verdict::certified);
        CHECK(cert.branch == RateBranch::A);
        REQUIRE(cert.nu.has_value());
        CHECK(*cert.nu == QuadExt(Rational(7, 4), Rational(-3, 4), Int(3)));
    }
    SECTION("C_{2,2} with m=2 and generic constant is certified") {
        auto cp = ckk_presentation(2);
        std::vector<TransverseCone> tcs{analyze_axis(cp, 0), analyze_axis(cp, 1)};
        auto cert = certify(cp, ckk_family(cp, 2), tcs, assume_smooth(cp), true);
        CHECK(cert.verdict == Verdict::certified);
        CHECK(cert.branch == RateBranch::A);  // nu = 1/4 < 1/2
    }
    SECTION("the Milnor fiber is rejected at the window") {
        auto cp = spp_presentation(2);
        auto tcs = std::vector<TransverseCone>{analyze_axis(cp, 0)};
        auto sc = make_smoothing(cp, {parse_wpoly("-1", cp.var_names)});
        auto cert = certify(cp, sc, tcs, {}, true);
        CHECK(cert.verdict == Verdict::rejected);
        CHECK(cert.reject_reason == "window");
    }
    SECTION("missing fiber results inside the window are an incomplete input") {
        auto cp = spp_presentation(2);
        auto tcs = std::vector<TransverseCone>{analyze_axis(cp, 0)};
        CHECK_THROWS_AS(certify(cp, spp_family(cp, 2), tcs, {}, true), IncompleteInputError);
    }
    SECTION("missing orbifold attestation rejects") {
        auto cp = spp_presentation(2);
        auto tcs = std::vector<TransverseCone>{analyze_axis(cp, 0)};
        auto cert = certify(cp, spp_family(cp, 2), tcs, assume_smooth(cp), false);
        CHECK(cert.verdict == Verdict::rejected);
        CHECK(cert.reject_reason == "orbifold-attestation");
    }
}

TEST_CASE("admissible ranges of the SPP family z1^m + 1") {
    auto expected_for = [](long k) -> std::vector<long> {
        if (k == 2) return {1, 2, 3};
        if (k == 3) return {1, 2, 3, 4};
        return {1, 2, 3, 4, 5, 6};
    };
    for (long k : {2L, 3L, 4L}) {
        auto cp = spp_presentation(k);
        auto tcs = std::vector<TransverseCone>{analyze_axis(cp, 0)};
        auto results = enumerate_admissible(
            cp, tcs, [&](long m) { return spp_family(cp, m); }, 1, 10,
            [&](const SmoothingCandidate&) { return assume_smooth(cp); }, true);
        std::vector<long> admissible;
        for (const auto& [m, cert] : results)
            if (cert.verdict == Verdict::certified) admissible.push_back(m);
        CHECK(admissible == expected_for(k));

        SECTION("enumeration agrees with pointwise certify, k=" + std::to_string(k)) {
            for (const auto& [m, cert] : results) {
                auto sc = spp_family(cp, m);
                bool window_ok = degree_window(cp.degrees[0], tcs[0].d_s, sc.ell[0]).ok;
                auto direct = certify(cp, sc, tcs,
                                      window_ok ? assume_smooth(cp) : std::vector<FiberCheck>{},
                                      true);
                CHECK(direct.verdict == cert.verdict);
                CHECK(direct.reject_reason == cert.reject_reason);
            }
        }
    }
}

TEST_CASE("C_{k,k} windows") {
    SECTION("certified ell-interval is [k, 23k/9)") {
        for (long k : {2L, 3L, 5L}) {
            auto interval = admissible_ell_interval(QuadExt(Rational(3 * k)),
                                                    QuadExt(Rational(2 * k)));
            CHECK_FALSE(interval.empty);
            CHECK(interval.lo == QuadExt(Rational(k)));
            CHECK(interval.hi == QuadExt(Rational(23 * k, 9)));
        }
    }
    SECTION("admissible m for z1^m + z2^m + c is [2k/3, 46k/27) in the integers") {
        for (long k : {2L, 3L}) {
            auto cp = ckk_presentation(k);
            std::vector<TransverseCone> tcs{analyze_axis(cp, 0), analyze_axis(cp, 1)};
            auto results = enumerate_admissible(
                cp, tcs, [&](long m) { return ckk_family(cp, m); }, 1, 12,
                [&](const SmoothingCandidate&) { return assume_smooth(cp); }, true);
            std::vector<long> admissible;
            for (const auto& [m, cert] : results)
                if (cert.verdict == Verdict::certified) admissible.push_back(m);
            std::vector<long> expected;
            for (long m = 1; m <= 12; ++m) {
                // 2k/3 <= m < 46k/27, exactly.
                if (Rational(m) >= Rational(2 * k, 3) && Rational(m) < Rational(46 * k, 27))
                    expected.push_back(m);
            }
            CHECK(admissible == expected);
        }
    }
    SECTION("small d_s leaves no admissible window") {
        CHECK(admissible_ell_interval(QuadExt(6), QuadExt(2)).empty);
        auto i3 = admissible_ell_interval(QuadExt(6), QuadExt(3));
        CHECK_FALSE(i3.empty);
        CHECK(i3.hi == QuadExt(4));  // nu < 1/3, beta = 3
    }
}

TEST_CASE("nu/window properties") {
    QuadExt d = rt3(3, 1, 1, 1);  // SPP k=2
    QuadExt d_s(4);
    SECTION("nu is strictly increasing in ell, windows form an interval") {
        QuadExt prev_nu(-1);
        bool seen_window = false, window_closed = false;
        for (int step = 0; step <= 40; ++step) {
            QuadExt ell = QuadExt(Rational(step, 10));
            auto w = degree_window(d, d_s, ell);
            if (w.ok) {
                CHECK_FALSE(window_closed);
                seen_window = true;
                auto [nu, beta] = compute_nu_beta(d, d_s, ell);
                CHECK(nu > prev_nu);
                CHECK(nu.sign() >= 0);
                CHECK((nu - QuadExt(1)).sign() < 0);  // nu < 1 whenever the window holds
                prev_nu = nu;
            } else if (seen_window) {
                window_closed = true;
            }
        }
        CHECK(seen_window);
    }
    SECTION("ell = d - d_s if and only if nu = 0") {
        auto [nu0, beta0] = compute_nu_beta(d, d_s, d - d_s);
        CHECK(nu0 == QuadExt(0));
        auto [nu1, beta1] = compute_nu_beta(d, d_s, d - d_s + QuadExt(Rational(1, 7)));
        CHECK(nu1 != QuadExt(0));
    }
}
