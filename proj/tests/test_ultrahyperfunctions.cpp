#include "doctest.h"

#include "eow/ultrahyperfunctions.hpp"

using namespace eow;

TEST_CASE("test function families")
{
    auto g = TestFunction::gaussian(0.0, 1.0);
    CHECK(std::abs(g(cplx(0, 0.3)) - std::exp(0.09)) < 1e-15);
    CHECK(std::abs(g(cplx(1.0, 0)) - std::exp(-1.0)) < 1e-15);

    auto pg = TestFunction::poly_gaussian({0.0, 1.0});
    CHECK(std::abs(pg(cplx(2.0, 0)) - 2.0 * std::exp(-4.0)) < 1e-15);
    CHECK(std::abs(pg(cplx(-0.7, 0)) + pg(cplx(0.7, 0))) < 1e-15);

    auto e = heat_probe({0.0}, 1 / (4 * pi));
    CHECK(std::abs(e(cplx(0.0)) - 1.0) < 1e-14);
    auto e2 = heat_probe({2.0}, 0.01);
    double expected = std::pow(4 * pi * 0.01, -0.5) * std::exp(-75.0);
    CHECK(std::abs(std::abs(e2(cplx(0, 1))) - expected) < 1e-12 * expected);

    CHECK_THROWS_AS(heat_probe({0.0}, 0.0), InvalidArgument);
    CHECK_THROWS_AS(TestFunction::gaussian(0.0, -1.0), InvalidArgument);
}

TEST_CASE("heat probe has unit mass")
{
    for (double t : {1.0, 0.1, 0.01})
    {
        auto e = heat_probe({0.4}, t);
        auto r = line_integral_1d([&](cplx z) { return e(z); }, test_contour(e, {0.0}));
        CHECK(std::abs(r.value - 1.0) < 1e-10);
    }
}

TEST_CASE("strip norms are finite and grow with the strip")
{
    auto g = TestFunction::gaussian(0.0, 1.0);
    double n0 = strip_norm(g, 0, 0);
    double n1 = strip_norm(g, 1, 2);
    CHECK(n0 == doctest::Approx(1.0));
    CHECK(std::isfinite(n1));
    CHECK(n1 > n0);
    auto g2 = TestFunction::gaussian(ComplexVec{0.0, 0.0}, 1.0);
    CHECK(std::isfinite(strip_norm(g2, 1, 1)));
}

TEST_CASE("boundary function certificates")
{
    Cone up = Cone::forward(1, 0.5);
    auto P = BoundaryFunction::polynomial({2.0, 0.0, 0.0, 1.0}, up);
    CHECK(P.growth_order == 3);
    CHECK(P.growth_constant == doctest::Approx(3.0));
    CHECK(std::abs(P(cplx(1, 1)) - (std::pow(cplx(1, 1), 3) + 2.0)) < 1e-14);

    CHECK_THROWS_AS(BoundaryFunction::custom(
                        up, [](std::span<const cplx> z) { return z[0] * z[0]; }, 1, 1.0, "bad"),
                    InvalidArgument);
    auto ok = BoundaryFunction::custom(up, [](std::span<const cplx> z) { return z[0] * z[0]; }, 2, 1.0, "z2");
    CHECK(ok.growth_order == 2);

    auto R = BoundaryFunction::rational({cplx(0, 0.5)}, {1.0}, up);
    CHECK(std::abs(R(cplx(0, 1.5)) - 1.0 / cplx(0, 1.0)) < 1e-15);
    CHECK_THROWS_AS(BoundaryFunction::rational({cplx(0, 0.7)}, {1.0}, up), InvalidArgument);
}

TEST_CASE("apply: constant and point masses")
{
    auto one = BoundaryFunction::polynomial({1.0}, Cone::forward(1, 0.5));
    auto u = Ultrahyperfunction::from_boundary(one, {2.0});
    auto g = TestFunction::gaussian(0.0, 1.0);
    CHECK(std::abs(apply(u, g).value - std::sqrt(pi)) < 1e-10);

    auto d = Ultrahyperfunction::from_masses({{1.0, {cplx(0, 0.3)}}});
    CHECK(std::abs(apply(d, g).value - std::exp(0.09)) < 1e-15);

    CHECK(apply(Ultrahyperfunction::zero(), g).value == cplx(0));
    CHECK_THROWS_AS(Ultrahyperfunction::from_boundary(one, {0.2}), InvalidArgument);
}

TEST_CASE("apply: contour independence")
{
    Cone up = Cone::forward(1, 0.5);
    auto z2 = BoundaryFunction::polynomial({0.0, 0.0, 1.0}, up);
    for (auto phi : {TestFunction::gaussian(0.0, 1.0), TestFunction::gaussian(0.7, 1.2),
                     TestFunction::poly_gaussian({1.0, -2.0, 0.5}, 0.2, 1.3)})
    {
        auto a = apply(Ultrahyperfunction::from_boundary(z2, {1.0}), phi);
        auto b = apply(Ultrahyperfunction::from_boundary(z2, {3.0}), phi);
        CHECK(std::abs(a.value - b.value) < 1e-8);
    }
    // exact moment: integral of x^2 exp(-x^2) = sqrt(pi)/2
    auto m2 = apply(Ultrahyperfunction::from_boundary(z2, {1.0}), TestFunction::gaussian(0.0, 1.0));
    CHECK(std::abs(m2.value - std::sqrt(pi) / 2) < 1e-9);
}

TEST_CASE("cauchy hilbert transform")
{
    std::vector<PointMass> f{{1.0, {cplx(0, 0.2)}}};
    auto pair = cauchy_hilbert(f, 0.5);
    cplx expect = 1.0 / (2 * pi * I) / (cplx(0, 0.2) - 1.0);
    CHECK(std::abs(cauchy_hilbert_value(f, 1.0) - expect) < 1e-16);
    CHECK(std::abs(pair.upper(cplx(1.0, 2.0)) - cauchy_hilbert_value(f, cplx(1.0, 2.0))) < 1e-16);
    CHECK(pair.upper.growth_order == 0);
    CHECK(pair.lower.tube.sign == -1);
    CHECK_THROWS_AS(cauchy_hilbert_value(f, cplx(0, 0.2)), PoleError);
    CHECK_THROWS_AS(cauchy_hilbert(f, 0.1), InvalidArgument);

    auto phi = TestFunction::gaussian(0.0, 1.0);
    cplx rt = cauchy_hilbert_round_trip(f, phi, -0.1, 0.1, 0.5);
    CHECK(std::abs(rt - phi(cplx(0, 0.2))) < 1e-8);

    std::vector<PointMass> g{{2.0, {cplx(0.05, -0.3)}}};
    std::vector<PointMass> fg = f;
    fg.push_back(g[0]);
    for (cplx z : {cplx(1, 1), cplx(-2, 0.7), cplx(0.3, -3)})
        CHECK(std::abs(cauchy_hilbert_value(fg, z) - cauchy_hilbert_value(f, z) - cauchy_hilbert_value(g, z))
              < 1e-15);
}

TEST_CASE("boundary pairing of the Cauchy-Hilbert pair recovers f")
{
    // u1 - u2 with F on the upper/lower tube equals f (rectangle collapsed to two lines)
    std::vector<PointMass> f{{1.0, {cplx(0.05, 0.3)}}, {-0.5, {cplx(-0.05, -0.1)}}};
    auto pair = cauchy_hilbert(f, 0.5);
    auto u1 = Ultrahyperfunction::from_boundary(pair.upper, {0.8});
    auto u2 = Ultrahyperfunction::from_boundary(pair.lower, {-0.8});
    auto phi = TestFunction::gaussian(0.1, 1.0);
    cplx diff = apply(u1, phi).value - apply(u2, phi).value;
    cplx direct = apply(Ultrahyperfunction::from_masses(f), phi).value;
    CHECK(std::abs(diff - direct) < 1e-8);
}

TEST_CASE("carrier probe awareness boundary")
{
    auto u = Ultrahyperfunction::from_masses({{1.0, {cplx(0, 0.5)}}});
    auto L = CarrierSet::pointcloud({{cplx(0, 0.5)}});
    for (double x : {1.0, 0.6, -0.6, 2.0})
    {
        auto rep = carrier_probe(u, L, RealVec{x});
        CHECK(rep.verdict == "decays");
        CHECK(rep.exponent < 0);
        for (std::size_t k = 0; k < rep.t.size(); ++k)
            CHECK(rep.magnitude[k] <= rep.bound[k] * (1 + 1e-12));
    }
    for (double x : {0.3, 0.4, -0.4, 0.0})
    {
        auto rep = carrier_probe(u, L, RealVec{x});
        CHECK(rep.verdict == "grows");
        CHECK(rep.exponent > 0);
    }
    auto rep = carrier_probe(u, L, RealVec{1.0});
    double t = rep.t.back();
    CHECK(rep.magnitude.back() == doctest::Approx(std::pow(4 * pi * t, -0.5) * std::exp((0.25 - 1) / (4 * t))));

    auto z = carrier_probe(Ultrahyperfunction::zero(), L, RealVec{0.3});
    CHECK(z.verdict == "decays");
}

TEST_CASE("carrier probe on a boundary-value difference")
{
    // Cauchy-Hilbert upper/lower pair: u1 - u2 is the mass at 0.3i
    std::vector<PointMass> f{{1.0, {cplx(0, 0.3)}}};
    auto pair = cauchy_hilbert(f, 0.5);
    auto L = CarrierSet::box1d(-0.1, 0.1, 0.5);
    auto u1 = Ultrahyperfunction::from_boundary(pair.upper, {0.8});
    LadderSpec lad = LadderSpec::geometric(0.2, 0.5, 4, 2);
    auto rep = carrier_probe(u1, L, RealVec{2.0}, lad);
    // u1 alone: E -> F(2) as t -> 0, so magnitudes level off. Small t is
    // out of reach on a contour above the tube: |E| grows like exp(eta^2/4t).
    CHECK(rep.verdict == "inconclusive");
    CHECK(rep.magnitude.back() == doctest::Approx(std::abs(cauchy_hilbert_value(f, 2.0))).epsilon(5e-2));
}

TEST_CASE("decay verdict rule")
{
    RealVec d{1, 0.1, 0.01, 0.001};
    RealVec g{1, 10, 100, 1000};
    RealVec i{1, 0.5, 0.25, 0.125};
    RealVec z{0, 0, 0, 0};
    CHECK(decay_verdict(d) == "decays");
    CHECK(decay_verdict(g) == "grows");
    CHECK(decay_verdict(i) == "inconclusive");
    CHECK(decay_verdict(z) == "decays");
}
