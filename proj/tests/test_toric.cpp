#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cmath>
#include <random>
#include <set>

#include "cycert/toric.hpp"

using namespace cycert;

namespace {

std::mt19937_64 rng(550921);

// Rejection-sampling volume oracle for Delta(xi), independent of the
// triangulation route: membership is tested against the primal rays and the
// cut plane directly.
double monte_carlo_volume(const ReebVector& xi, const Cone3& cone, const DualGenerators& dg,
                          int samples) {
    std::vector<std::array<double, 3>> verts{{0, 0, 0}};
    for (const auto& g : dg.normals) {
        double pairing = g[0] * xi.xi[0] + g[1] * xi.xi[1] + g[2] * xi.xi[2];
        verts.push_back({g[0] / pairing, g[1] / pairing, g[2] / pairing});
    }
    std::array<double, 3> lo{0, 0, 0}, hi{0, 0, 0};
    for (const auto& v : verts)
        for (int j = 0; j < 3; ++j) {
            lo[j] = std::min(lo[j], v[j]);
            hi[j] = std::max(hi[j], v[j]);
        }
    double box = (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    int inside = 0;
    for (int s = 0; s < samples; ++s) {
        std::array<double, 3> y;
        for (int j = 0; j < 3; ++j) y[j] = lo[j] + (hi[j] - lo[j]) * u01(rng);
        bool ok = y[0] * xi.xi[0] + y[1] * xi.xi[1] + y[2] * xi.xi[2] <= 1.0;
        for (const auto& r : cone.rays)
            ok = ok && (y[0] * r[0] + y[1] * r[1] + y[2] * r[2] >= 0);
        if (ok) ++inside;
    }
    return box * inside / samples;
}

ReebVector random_interior_xi(const DualGenerators& dg, double spread = 0.8) {
    std::uniform_real_distribution<double> u(-spread, spread);
    auto base = minimize_reeb(dg).xi;
    for (int tries = 0; tries < 1000; ++tries) {
        ReebVector cand{{3.0, base.xi[1] + u(rng), base.xi[2] + u(rng)}};
        bool interior = true;
        for (const auto& g : dg.normals)
            interior = interior &&
                       (g[0] * cand.xi[0] + g[1] * cand.xi[1] + g[2] * cand.xi[2] > 0.05);
        if (interior) return cand;
    }
    return base;
}

}  // namespace

TEST_CASE("rays from diagram") {
    SECTION("C_{2,1}") {
        Cone3 c = rays_from_diagram(ckl_diagram(2, 1));
        std::vector<LatticeVec3> expect{{1, 0, 0}, {1, 2, 0}, {1, 1, 1}, {1, 0, 1}};
        CHECK(c.rays == expect);
    }
    SECTION("unit square for the conifold") {
        Cone3 c = rays_from_diagram(ckl_diagram(1, 1));
        std::vector<LatticeVec3> expect{{1, 0, 0}, {1, 1, 0}, {1, 1, 1}, {1, 0, 1}};
        CHECK(c.rays == expect);
    }
    SECTION("degenerate diagrams are rejected") {
        CHECK_THROWS_AS(rays_from_diagram(ToricDiagram{{{0, 0}}}), InvalidConeError);
        CHECK_THROWS_AS(rays_from_diagram(ToricDiagram{{{0, 0}, {1, 0}, {2, 0}}}),
                        InvalidConeError);  // collinear
        CHECK_THROWS_AS(rays_from_diagram(ToricDiagram{{{0, 0}, {0, 1}, {1, 0}}}),
                        InvalidConeError);  // clockwise
    }
}

TEST_CASE("dual generators") {
    SECTION("C_{k,l} normals match the paper, as a set") {
        for (long long k : {1, 2, 3, 4}) {
            for (long long l : {1, 2, 3}) {
                auto computed = dual_generators(rays_from_diagram(ckl_diagram(k, l)));
                auto labeled = ckl_dual_generators(k, l);
                std::set<LatticeVec3> a(computed.normals.begin(), computed.normals.end());
                std::set<LatticeVec3> b(labeled.normals.begin(), labeled.normals.end());
                CHECK(a == b);
            }
        }
    }
    SECTION("conifold specialization") {
        auto labeled = ckl_dual_generators(1, 1);
        std::vector<LatticeVec3> expect{{1, 0, -1}, {0, 0, 1}, {0, 1, 0}, {1, -1, 0}};
        CHECK(labeled.normals == expect);
    }
    SECTION("half-space input is rejected") {
        CHECK_THROWS_AS(dual_cone_generators({{1, 1, 0}, {1, -1, 0}}), InvalidConeError);
        CHECK_THROWS_AS(dual_cone_generators({{1, 1, 0}, {1, 0, 0}, {1, -1, 0}}),
                        InvalidConeError);
    }
    SECTION("duality involution recovers the rays") {
        for (long long k : {1, 2, 3}) {
            for (long long l : {1, 2}) {
                Cone3 c = rays_from_diagram(ckl_diagram(k, l));
                auto dual = dual_cone_generators(c.rays);
                auto double_dual = dual_cone_generators(dual);
                std::set<LatticeVec3> a(double_dual.begin(), double_dual.end());
                std::set<LatticeVec3> b(c.rays.begin(), c.rays.end());
                CHECK(a == b);
            }
        }
    }
}

TEST_CASE("reeb volume") {
    Cone3 cone = rays_from_diagram(ckl_diagram(1, 1));
    DualGenerators dg = dual_generators(cone);

    SECTION("conifold volume matches the Monte-Carlo oracle within 1%") {
        ReebVector xi{{3.0, 1.5, 1.5}};
        double v = reeb_volume(xi, dg);
        CHECK(v > 0);
        double mc = monte_carlo_volume(xi, cone, dg, 2000000);
        CHECK(std::abs(v - mc) / v < 0.01);
    }
    SECTION("scaling xi by t multiplies the volume by t^-3") {
        ReebVector xi{{3.0, 1.2, 1.7}};
        double v = reeb_volume(xi, dg);
        for (double t : {2.0, 5.0, 0.5}) {
            ReebVector txi{{t * xi.xi[0], t * xi.xi[1], t * xi.xi[2]}};
            CHECK(reeb_volume(txi, dg) == Catch::Approx(v / (t * t * t)).epsilon(1e-12));
        }
    }
    SECTION("non-interior xi is an error") {
        CHECK_THROWS_AS(reeb_volume(ReebVector{{3.0, -10.0, 0.0}}, dg),
                        UnboundedPolytopeError);
        CHECK_THROWS_AS(reeb_volume(ReebVector{{3.0, 3.0, 0.0}}, dg),
                        UnboundedPolytopeError);  // on the boundary: <g2, xi> = 0
    }
    SECTION("exact rational evaluation agrees with the double path") {
        std::array<Rational, 3> xi{Rational(3), Rational(3, 2), Rational(3, 2)};
        Rational exact = reeb_volume_exact(xi, dg);
        CHECK(to_double(exact) ==
              Catch::Approx(reeb_volume(ReebVector{{3.0, 1.5, 1.5}}, dg)).epsilon(1e-14));
    }
}

TEST_CASE("closed-form Reeb vectors") {
    SECTION("(2,1): (3, (3+sqrt(3))/2, 3-sqrt(3))") {
        ExactReeb xi = closed_form_reeb(2, 1);
        CHECK(xi.alpha == QuadExt(3));
        CHECK(xi.beta == QuadExt(Rational(3, 2), Rational(1, 2), Int(3)));
        CHECK(xi.gamma == QuadExt(Rational(3), Rational(-1), Int(3)));
    }
    SECTION("(1,1): rational, the conifold") {
        ExactReeb xi = closed_form_reeb(1, 1);
        CHECK(xi.beta == QuadExt(Rational(3, 2)));
        CHECK(xi.gamma == QuadExt(Rational(3, 2)));
    }
    SECTION("(3,3): sqrt(9) collapses") {
        ExactReeb xi = closed_form_reeb(3, 3);
        CHECK(xi.beta == QuadExt(Rational(9, 2)));
        CHECK(xi.gamma == QuadExt(Rational(3, 2)));
    }
    SECTION("(2,2) and the k=l weight display (3/2, 3/2, 3k/2, 3k/2)") {
        ExactReeb xi = closed_form_reeb(2, 2);
        CHECK(xi.beta == QuadExt(3));
        CHECK(xi.gamma == QuadExt(Rational(3, 2)));
        auto w = ckl_coordinate_weights(2, 2);
        CHECK(w[0] == QuadExt(Rational(3, 2)));  // wt(u)
        CHECK(w[1] == QuadExt(Rational(3, 2)));
        CHECK(w[2] == QuadExt(3));
        CHECK(w[3] == QuadExt(3));
    }
}

TEST_CASE("minimizer agrees with the closed form") {
    for (long long k = 1; k <= 4; ++k) {
        for (long long l = 1; l <= 4; ++l) {
            auto dg = dual_generators(rays_from_diagram(ckl_diagram(k, l)));
            auto res = minimize_reeb(dg);
            ExactReeb exact = closed_form_reeb(k, l);
            ReebVector expect = exact.to_float();
            for (int j = 1; j < 3; ++j) {
                CHECK(std::abs(res.xi.xi[j] - expect.xi[j]) / std::abs(expect.xi[j]) <=
                      1e-6);
            }
            CHECK(res.grad_norm <= 1e-10);
        }
    }
}

TEST_CASE("coordinate weights") {
    SECTION("C_{2,1} weights (sqrt(3), 3-sqrt(3), (3+sqrt(3))/2, (3+sqrt(3))/2)") {
        auto w = ckl_coordinate_weights(2, 1);
        CHECK(w[0] == QuadExt::sqrt_of(3));
        CHECK(w[1] == QuadExt(Rational(3), Rational(-1), Int(3)));
        CHECK(w[2] == QuadExt(Rational(3, 2), Rational(1, 2), Int(3)));
        CHECK(w[3] == QuadExt(Rational(3, 2), Rational(1, 2), Int(3)));

        // Float route through the pairing <m, xi> in the labeled order.
        auto res = minimize_reeb(ckl_dual_generators(2, 1));
        auto wf = coordinate_weights(res.xi, ckl_dual_generators(2, 1));
        for (int j = 0; j < 4; ++j)
            CHECK(std::abs(wf[j] - w[j].to_double()) <= 1e-9);
    }
    SECTION("conifold weights are all 3/2") {
        auto wf = coordinate_weights(ReebVector{{3.0, 1.5, 1.5}}, ckl_dual_generators(1, 1));
        for (double v : wf) CHECK(v == Catch::Approx(1.5).epsilon(1e-12));
    }
    SECTION("relation balance k*wt(u)+l*wt(v) = wt(w)+wt(z), exactly") {
        for (long long k = 1; k <= 4; ++k)
            for (long long l = 1; l <= 4; ++l) {
                auto w = ckl_coordinate_weights(k, l);
                QuadExt lhs = QuadExt(Rational(k)) * w[0] + QuadExt(Rational(l)) * w[1];
                CHECK(lhs == w[2] + w[3]);
            }
    }
}

TEST_CASE("volume convexity along random segments") {
    auto dg = ckl_dual_generators(2, 1);
    int checked = 0;
    while (checked < 1000) {
        ReebVector a = random_interior_xi(dg);
        ReebVector b = random_interior_xi(dg);
        ReebVector mid{{3.0, (a.xi[1] + b.xi[1]) / 2, (a.xi[2] + b.xi[2]) / 2}};
        double fm = reeb_volume(mid, dg);
        double avg = (reeb_volume(a, dg) + reeb_volume(b, dg)) / 2;
        CHECK(fm <= avg * (1 + 1e-12));
        ++checked;
    }
}

TEST_CASE("argmin invariance under objective scaling") {
    for (long long k : {1, 2, 3}) {
        auto dg = ckl_dual_generators(k, 1);
        auto base = minimize_reeb(dg);
        MinimizeOptions scaled;
        scaled.objective_scale = 10.0;
        auto res = minimize_reeb(dg, scaled);
        CHECK(std::abs(res.xi.xi[1] - base.xi.xi[1]) <= 1e-8);
        CHECK(std::abs(res.xi.xi[2] - base.xi.xi[2]) <= 1e-8);
    }
}

TEST_CASE("the two volume evaluators have constant ratio and the same argmin") {
    Cone3 cone = rays_from_diagram(ckl_diagram(2, 1));
    auto dg = dual_generators(cone);

    std::vector<double> ratios;
    for (int s = 0; s < 100; ++s) {
        ReebVector xi = random_interior_xi(dg);
        ratios.push_back(msy_volume(xi, cone) / reeb_volume(xi, dg));
    }
    double mean = 0;
    for (double r : ratios) mean += r;
    mean /= ratios.size();
    double var = 0;
    for (double r : ratios) var += (r - mean) * (r - mean);
    double stddev = std::sqrt(var / ratios.size());
    CHECK(stddev <= 1e-8 * mean);

    // Same argmin when minimizing the closed-form evaluator instead.
    auto res_vol = minimize_reeb(dg);
    auto res_msy = minimize_slice_objective(dg, [&cone](double x, double y) {
        return msy_volume(ReebVector{{3.0, x, y}}, cone);
    });
    CHECK(std::abs(res_msy.xi.xi[1] - res_vol.xi.xi[1]) <= 1e-8);
    CHECK(std::abs(res_msy.xi.xi[2] - res_vol.xi.xi[2]) <= 1e-8);
}

TEST_CASE("minimization runtime") {
    for (auto [k, l] : std::vector<std::pair<long long, long long>>{
             {1, 1}, {2, 1}, {3, 1}, {2, 2}, {3, 3}, {4, 1}}) {
        auto dg = dual_generators(rays_from_diagram(ckl_diagram(k, l)));
        auto start = std::chrono::steady_clock::now();
        auto res = minimize_reeb(dg);
        auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
        CHECK(elapsed.count() < 1.0);
        CHECK(res.volume > 0);
    }
}
