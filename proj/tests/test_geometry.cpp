#include "doctest.h"

#include <random>
#include <sstream>

#include "eow/geometry.hpp"

using namespace eow;

namespace
{
// Brute-force distance to the closed forward cone in R^4: coarse sampling
// of c = (|v| + s^2, v), then compass search from the best sample.
double sampled_cone_distance(const RealVec& x)
{
    auto f = [&](const RealVec& q) {
        RealVec c{q[0] * q[0] + std::hypot(q[1], q[2], q[3]), q[1], q[2], q[3]};
        double d = 0;
        for (int j = 0; j < 4; ++j)
            d += (x[j] - c[j]) * (x[j] - c[j]);
        return std::sqrt(d);
    };
    RealVec best{0, 0, 0, 0};
    double fb = f(best);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int k = 0; k < 20000; ++k)
    {
        RealVec q{u(rng), u(rng), u(rng), u(rng)};
        double v = f(q);
        if (v < fb)
        {
            fb = v;
            best = q;
        }
    }
    for (double step = 0.5; step > 1e-10;)
    {
        bool moved = false;
        for (int j = 0; j < 4; ++j)
            for (double sgn : {-1.0, 1.0})
            {
                RealVec q = best;
                q[j] += sgn * step;
                double v = f(q);
                if (v < fb)
                {
                    fb = v;
                    best = q;
                    moved = true;
                }
            }
        if (!moved)
            step *= 0.5;
    }
    return fb;
}
}  // namespace

TEST_CASE("distance to the light cone")
{
    Cone V = Cone::forward(4);
    RealVec a{1, 0, 0, 0}, b{-1, 0, 0, 0}, c{0, 1, 0, 0};
    CHECK(dist_to_cone(a, V) == 0);
    CHECK(dist_to_cone(b, V) == doctest::Approx(1.0));
    CHECK(dist_to_cone(c, V) == doctest::Approx(1 / sqrt2).epsilon(1e-14));
    CHECK(std::abs(sampled_cone_distance(c) - 1 / sqrt2) < 1e-3);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int k = 0; k < 20; ++k)
    {
        RealVec x{u(rng), u(rng), u(rng), u(rng)};
        CHECK(std::abs(dist_to_cone(x, V) - sampled_cone_distance(x)) < 1e-2);
        RealVec p = project_to_cone(x, V);
        double d = 0;
        for (int j = 0; j < 4; ++j)
            d += (x[j] - p[j]) * (x[j] - p[j]);
        CHECK(std::sqrt(d) == doctest::Approx(dist_to_cone(x, V)).epsilon(1e-12));
        CHECK(dist_to_cone(p, V) < 1e-12);
    }
    RealVec bad{1, 0};
    CHECK_THROWS_AS(dist_to_cone(bad, V), InvalidArgument);
}

TEST_CASE("cone membership symmetry and convexity")
{
    Cone G = Cone::forward(3, 0.5);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3, 3);
    int members = 0;
    std::vector<RealVec> inside;
    for (int k = 0; k < 300; ++k)
    {
        RealVec y{u(rng), u(rng), u(rng)};
        RealVec my{-y[0], -y[1], -y[2]};
        CHECK(G.contains(y) == G.negated().contains(my));
        if (G.contains(y))
        {
            ++members;
            inside.push_back(y);
        }
    }
    REQUIRE(members > 10);
    std::uniform_real_distribution<double> t(0, 1);
    for (std::size_t k = 0; k + 1 < inside.size(); ++k)
    {
        double s = t(rng);
        RealVec c(3);
        for (int j = 0; j < 3; ++j)
            c[j] = s * inside[k][j] + (1 - s) * inside[k + 1][j];
        CHECK(G.contains(c));
    }
    Cone V = Cone::forward(2);
    RealVec on{1, 0.999};
    CHECK(V.contains(on));
    RealVec off{1, 1.001};
    CHECK_FALSE(V.contains(off));
}

TEST_CASE("g_r for point clouds")
{
    auto L = CarrierSet::pointcloud({{cplx(0, 0.5)}});
    RealVec x0{0}, x2{2};
    CHECK(g_r(x0, L, 1).value == doctest::Approx(0.5));
    CHECK(g_r(x2, L, 1).value == doctest::Approx(std::sqrt(5.0) - 0.5));
    CHECK(g_r(x2, L, 1).value == doctest::Approx(1.7361).epsilon(1e-4));
    CHECK_THROWS_AS(CarrierSet::pointcloud({}), InvalidArgument);
    CHECK_THROWS_AS(g_r(x0, L, 0), InvalidArgument);
}

TEST_CASE("g_r for the box is exact")
{
    auto L = CarrierSet::box1d(-0.1, 0.1, 0.5);
    for (double x : {-3.0, -0.1, 0.0, 0.05, 0.7, 4.0})
    {
        RealVec xv{x};
        double d = std::max({0.0, -0.1 - x, x - 0.1});
        CHECK(g_r(xv, L, 1.2).value == doctest::Approx(std::sqrt(1.44 + d * d) - 0.5));
        // brute force over a grid of the box
        double best = 1e9;
        for (int i = 0; i <= 40; ++i)
            for (int j = 0; j <= 40; ++j)
            {
                double re = -0.1 + 0.2 * i / 40, im = -0.5 + j / 40.0;
                best = std::min(best, std::sqrt(1.44 + (x - re) * (x - re)) - std::abs(im));
            }
        CHECK(g_r(xv, L, 1.2).value == doctest::Approx(best).epsilon(1e-12));
    }
}

TEST_CASE("light cone carrier: bound and tightness")
{
    auto L = CarrierSet::lightcone4d(1.0, 20000);
    const double r = auto_radius(1.0);
    for (double d : {0.0, 0.5, 1.0, 2.0, 2.5, 4.0})
    {
        RealVec x{0, d * sqrt2, 0, 0};
        auto g = g_r(x, L, r);
        double bound = std::sqrt(r * r + d * d) - 1.0;
        CHECK(g.bound == doctest::Approx(bound));
        CHECK(g.value <= bound + 1e-3);
        CHECK(g.value >= bound - 1e-12);  // infimum equals the bound for this carrier
    }
    RealVec inside{3, 0.5, 0, 0};
    CHECK(g_r(inside, L, r).value == doctest::Approx(r - 1.0).epsilon(1e-6));

    for (const auto& w : L.sample(500, 7))
        CHECK(L.contains(w));
}

TEST_CASE("region O")
{
    auto L = CarrierSet::lightcone4d(1.0, 20000);
    const double r = auto_radius(1.0);
    RealVec far{0, 3 * sqrt2, 0, 0};
    CHECK(region_O_membership(far, L, r).member);
    RealVec inV{2, 0.5, 0.5, 0};
    auto m = region_O_membership(inV, L, r);
    CHECK_FALSE(m.member);
    CHECK(m.margin < 0);

    auto P = CarrierSet::pointcloud({{cplx(0, 0.5)}});
    const double thr = std::sqrt(1.25);
    for (int k = -60; k <= 60; ++k)
    {
        double x = 0.05 * k;
        if (std::abs(std::abs(x) - thr) < 1e-9)
            continue;
        RealVec xv{x};
        CHECK(region_O_membership(xv, P, 1.0).member == (std::abs(x) > thr));
    }
    CHECK(region_O_radius(P, 1.0) == doctest::Approx(thr));
    CHECK(region_O_radius(L, r) == doctest::Approx((sqrt2 + 1)).epsilon(1e-5));
}

TEST_CASE("region Q")
{
    auto L = CarrierSet::lightcone4d(1.0, 5000);
    auto Q = region_Q(L, auto_radius(1.0));
    CHECK(Q.explicit_threshold == doctest::Approx(sqrt2 + 3));
    CHECK(Q.threshold == doctest::Approx(sqrt2 + 3).epsilon(1e-5));
    CHECK(Q.explicit_contained);
    RealVec d5{0, 5 * sqrt2, 0, 0}, d4{0, 4 * sqrt2, 0, 0};
    CHECK(Q.membership(d5).member);
    CHECK_FALSE(Q.membership(d4).member);

    auto P = CarrierSet::pointcloud({{cplx(0, 0.5)}});
    auto QP = region_Q(P, 1.0);
    CHECK(QP.threshold == doctest::Approx(std::sqrt(1.25) + 1.0));
    RealVec in{2.2}, out{2.0};
    CHECK(QP.membership(in).member);
    CHECK_FALSE(QP.membership(out).member);

    auto B = CarrierSet::box1d(0, 0, 0.5);
    CHECK(region_Q(B, 1.0).threshold == doctest::Approx(std::sqrt(1.25) + 1.0));

    // two-point carrier uses the sampled shell test
    auto P2 = CarrierSet::pointcloud({{cplx(-1, 0.2)}, {cplx(1, 0.2)}});
    auto Q2 = region_Q(P2, 1.0);
    CHECK_FALSE(Q2.radial);
    RealVec mid{0.0}, far{4.0};
    CHECK_FALSE(Q2.membership(mid).member);
    CHECK(Q2.membership(far).member);
}

TEST_CASE("tube membership")
{
    TubeParams p;
    p.gamma = Cone::forward(1, 0.5);
    p.r = 1.0;
    ComplexVec z0{cplx(0, 0)};
    CHECK(tube_membership(z0, TubeKind::V1, p).member);
    CHECK(tube_membership(z0, TubeKind::V2, p).member);
    CHECK(tube_membership(z0, TubeKind::V1, p).margin == doctest::Approx(0.5));
    ComplexVec up{cplx(3, 2)};
    CHECK(tube_membership(up, TubeKind::V1, p).member);
    ComplexVec edge{cplx(0, -0.6)};
    CHECK_FALSE(tube_membership(edge, TubeKind::V1, p).member);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int k = 0; k < 100; ++k)
    {
        ComplexVec z{cplx(u(rng), u(rng))};
        ComplexVec zc{std::conj(z[0])};
        CHECK(tube_membership(z, TubeKind::V1, p).member == tube_membership(zc, TubeKind::V2, p).member);
    }
    p.strip = 0.3;
    CHECK(tube_membership(z0, TubeKind::strip, p).member);
    CHECK_THROWS_AS(tube_membership(z0, TubeKind::Z, p), InvalidArgument);
}

TEST_CASE("imaginary inclusion holds on random samples")
{
    auto B = CarrierSet::box1d(-0.1, 0.1, 0.5);
    auto rep = imaginary_inclusion_check(B, 1.0, 100, 42);
    CHECK(rep.tested == 100);
    CHECK(rep.violations == 0);

    auto P = CarrierSet::pointcloud({{cplx(0.3, 0.2)}, {cplx(-0.5, -0.4)}});
    auto rp = imaginary_inclusion_check(P, 0.8, 200, 43);
    CHECK(rp.tested > 100);
    CHECK(rp.violations == 0);

    auto L = CarrierSet::lightcone4d(0.5, 2000);
    auto rl = imaginary_inclusion_check(L, 1.5, 30, 44, 3.0);
    CHECK(rl.tested > 0);
    CHECK(rl.violations == 0);
}

TEST_CASE("monotonicity of g_r")
{
    auto B = CarrierSet::box1d(-0.2, 0.3, 0.4);
    auto Bbig = CarrierSet::box1d(-0.5, 0.5, 0.6);
    for (int k = -20; k <= 20; ++k)
    {
        RealVec x{0.25 * k};
        double prev = -1e9;
        for (double r : {0.5, 1.0, 1.5, 2.0})
        {
            double g = g_r(x, B, r).value;
            CHECK(g >= prev);
            prev = g;
            CHECK(g_r(x, Bbig, r).value <= g);
        }
    }
}

TEST_CASE("W region: Gamma containment")
{
    Cone G = Cone::forward(2, 1.0);
    auto rep = w_r_delta_and_gamma_tilde(G, 3.0, 0.5);
    CHECK(rep.condition_rhs == doctest::Approx(std::sqrt(4.5 + std::pow(3 / sqrt2 - 1, 2))));
    CHECK(rep.condition_rhs == doctest::Approx(2.3994).epsilon(1e-4));
    CHECK(rep.condition_holds);
    CHECK(rep.gamma_contained);
    CHECK(rep.gamma_failures == 0);
    CHECK(rep.ball_contained);
    RealVec deep{10, 0};
    CHECK(rep.region.intersection_membership(deep).member);

    auto zero = w_r_delta_and_gamma_tilde(G, 3.0, 0.0);
    CHECK_FALSE(zero.ball_contained);
    CHECK_THROWS_AS(w_r_delta_and_gamma_tilde(G, 3.0, -0.1), InvalidArgument);

    SphereNodes coarse;
    coarse.circle = 8;
    CHECK_THROWS_AS(w_r_delta_and_gamma_tilde(G, 3.0, 0.5, coarse), InvalidArgument);

    auto r1 = w_r_delta_and_gamma_tilde(Cone::forward(1, 1.0), 3.0, 0.5);
    CHECK(r1.gamma_contained);
    CHECK(r1.ball_contained);
    SphereNodes fine3;
    fine3.polar = 24;
    fine3.azimuth = 48;
    auto r3 = w_r_delta_and_gamma_tilde(Cone::forward(3, 1.0), 3.0, 0.5, fine3);
    CHECK(r3.gamma_contained);
}

TEST_CASE("W region: failing condition")
{
    // r + delta below the condition value (needs ell > sqrt2 r): the vertex is not covered
    Cone G = Cone::forward(2, 1.0);
    auto rep = w_r_delta_and_gamma_tilde(G, 0.5, 0.0);
    CHECK_FALSE(rep.condition_holds);
    RealVec vertex{1.0, 0.0};
    CHECK_FALSE(rep.region.intersection_membership(vertex).member);
}

TEST_CASE("convex hull of the two tubes")
{
    Cone G = Cone::forward(2, 1.0);
    for (RealVec y : {RealVec{0, 0}, RealVec{0, 50}, RealVec{-3, 2}})
    {
        auto h = convex_hull_membership(y, G, 0.5);
        CHECK(h.member);
        CHECK(dist_to_cone(h.upper, G) < 0.5);
        CHECK(dist_to_cone(h.lower, G.negated()) < 0.5);
        for (int j = 0; j < 2; ++j)
            CHECK(0.5 * (h.upper[j] + h.lower[j]) == doctest::Approx(y[j]));
    }
    RealVec y3{0, 0, 0};
    CHECK_THROWS_AS(convex_hull_membership(y3, Cone::forward(3), 1.0), InvalidArgument);
}

TEST_CASE("surface S1")
{
    SurfaceS1 s{CarrierSet::box1d(-0.1, 0.1, 0.5), 2.0, 0.5, 0.2};
    RealVec far{5.0}, near{0.0};
    CHECK(s.f1(far) == 0);
    CHECK(s.f1(near) == doctest::Approx(0.7));
    CHECK(s.point(near)[0] == cplx(0, 0.7));
    CHECK_FALSE(s.describe().empty());
}

TEST_CASE("region report csv")
{
    RegionReport rep;
    rep.samples.push_back({{1.0, 2.0}, {true, 0.5}});
    rep.samples.push_back({{3.0, 4.0}, {false, -0.25}});
    std::ostringstream os;
    rep.write_csv(os);
    CHECK(os.str() == "x1,x2,margin,member\n1,2,0.5,1\n3,4,-0.25,0\n");
}
