#include "doctest.h"

#include "eow/kernels.hpp"
#include "eow/quadrature.hpp"

using namespace eow;

namespace
{
KernelSpec fourier(int n, double r = 1.0)
{
    KernelSpec s;
    s.n = n;
    s.r = r;
    s.strategy = KernelStrategy::fourier_quadrature;
    if (n > 1)
        s.tolerance = 1e-6;
    return s;
}
}  // namespace

TEST_CASE("sphere laplace closed forms")
{
    double z1[] = {0.0};
    double o1[] = {1.0};
    CHECK(sphere_laplace(z1) == doctest::Approx(2.0));
    CHECK(sphere_laplace(o1) == doctest::Approx(2 * std::cosh(1.0)).epsilon(1e-14));
    CHECK(sphere_laplace(o1) == doctest::Approx(3.0862).epsilon(1e-4));

    double x3[] = {1.0, 0.0, 0.0};
    CHECK(sphere_laplace(x3) == doctest::Approx(4 * pi * std::sinh(1.0)).epsilon(1e-12));
    CHECK(sphere_laplace(x3) == doctest::Approx(14.768).epsilon(1e-4));
    double d3[] = {0.3, -0.4, 1.2};
    CHECK(sphere_laplace(d3) == doctest::Approx(sphere_laplace_radial(3, 1.3)).epsilon(1e-12));

    double x2[] = {0.6, 0.8};
    CHECK(sphere_laplace(x2) == doctest::Approx(2 * pi * std::cyl_bessel_i(0.0, 1.0)).epsilon(1e-12));
}

TEST_CASE("sphere laplace against the product grid")
{
    // Independent brute force: the default 590-node rule off-axis.
    double xi[] = {0.2, 0.9, -0.5};
    RealVec v(xi, xi + 3);
    cplx grid = sphere_average([&](std::span<const double> w) { return cplx(std::exp(-dot(w, v))); }, 3);
    CHECK(grid.real() == doctest::Approx(sphere_laplace(xi)).epsilon(1e-9));
}

TEST_CASE("closed form kernel values")
{
    KernelSpec s;
    cplx z0 = 0.0;
    CHECK(std::abs(kernel_eval(std::span<const cplx>(&z0, 1), s).value - 0.25) < 1e-15);
    CHECK(std::abs(kernel_1d(5.0) - 0.25 / std::cosh(2.5 * pi)) < 1e-18);

    KernelSpec near = s;
    near.domain_margin = 0;
    CHECK(std::abs(kernel_eval_1d(cplx(0, 1 - 1e-3), near)) > 100);
    CHECK_THROWS_AS(kernel_eval_1d(cplx(0, 1 - 1e-3), s), DomainError);
    CHECK_THROWS_AS(kernel_1d(cplx(0, 1)), PoleError);
}

TEST_CASE("scaled kernel")
{
    cplx z0 = 0.0;
    CHECK(std::abs(kernel_scaled(std::span<const cplx>(&z0, 1), 2.0).value - 0.125) < 1e-15);
    for (int k = 0; k < 20; ++k)
    {
        cplx z(-3.0 + 0.3 * k, 0.04 * k - 0.4);
        cplx a = kernel_1d(2.0 * z, 2.0);
        cplx b = 0.5 * kernel_1d(z, 1.0);
        CHECK(std::abs(a - b) < 1e-16);
    }
    auto poles = kernel_poles_1d(2.0, 1);
    REQUIRE(poles.size() == 2);
    CHECK(poles[1] == cplx(0, 2));
    CHECK(poles[0] == cplx(0, -2));
}

TEST_CASE("kernel symmetry")
{
    for (int k = 0; k < 15; ++k)
    {
        cplx z(-4.0 + 0.55 * k, -0.8 + 0.11 * k);
        CHECK(std::abs(kernel_1d(-z) - kernel_1d(z)) < 1e-16);
        CHECK(std::abs(kernel_1d(std::conj(z)) - std::conj(kernel_1d(z))) < 1e-16);
    }
    CHECK(kernel_1d(1.7).imag() == 0);
}

TEST_CASE("one dimensional Fourier quadrature matches the closed form")
{
    auto s = fourier(1);
    for (cplx z : {cplx(5, 0), cplx(0, 0), cplx(-2.5, 0.9), cplx(10, -0.9), cplx(0.3, 0.5)})
    {
        auto v = kernel_eval(std::span<const cplx>(&z, 1), s);
        CHECK(std::abs(v.value - kernel_1d(z)) < 1e-8);
        CHECK(v.error < 1e-9);
    }
    cplx z(1, 0.5);
    auto v2 = kernel_scaled(std::span<const cplx>(&z, 1), 2.0, s);
    CHECK(std::abs(v2.value - kernel_1d(z, 2.0)) < 1e-8);
}

TEST_CASE("Fourier quadrature refuses divergent heights")
{
    auto s = fourier(1);
    s.domain_margin = 0;
    cplx z(3, 1.5);  // inside the holomorphy domain, outside |Im z| < r
    CHECK_THROWS_AS(kernel_eval(std::span<const cplx>(&z, 1), s), AccuracyError);
    s.cutoff = 5;
    cplx w(0, 0.8);
    CHECK_THROWS_AS(kernel_eval(std::span<const cplx>(&w, 1), s), AccuracyError);
}

TEST_CASE("two and three dimensional kernels")
{
    auto s2 = fourier(2);
    ComplexVec z{cplx(0.4, 0.1), cplx(-0.2, 0.2)};
    auto a = kernel_eval(z, s2);
    ComplexVec mz{-z[0], -z[1]};
    auto b = kernel_eval(mz, s2);
    CHECK(std::abs(a.value - b.value) < 1e-6);
    ComplexVec cz{std::conj(z[0]), std::conj(z[1])};
    CHECK(std::abs(kernel_eval(cz, s2).value - std::conj(a.value)) < 1e-6);
    // Rotation invariance: K depends on <z, z> only.
    ComplexVec rz{(z[0] - z[1]) / sqrt2, (z[0] + z[1]) / sqrt2};
    CHECK(std::abs(kernel_eval(rz, s2).value - a.value) < 1e-6);

    // Mass on R^n is 1/I(0).
    auto s3 = fourier(3);
    ComplexVec o3(3, 0.0);
    auto k0 = kernel_eval(o3, s3);
    CHECK(k0.value.real() > 0);
    CHECK_THROWS_AS(kernel_eval(std::vector<cplx>(2, 0.0), s3), InvalidArgument);
}

TEST_CASE("n=1 Fourier mass on a line")
{
    // Integral of K over R equals 1/I(0) = 1/2 (value of the Fourier integrand at 0).
    double s = 0, h = 0.01;
    for (int k = -4000; k <= 4000; ++k)
        s += kernel_1d(cplx(h * k, 0.7)).real() * h;
    CHECK(s == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("spec validation")
{
    KernelSpec s;
    s.n = 2;
    CHECK_THROWS_AS(s.validate(), InvalidArgument);
    s.n = 4;
    s.strategy = KernelStrategy::fourier_quadrature;
    CHECK_THROWS_AS(s.validate(), InvalidArgument);
    KernelSpec t;
    t.r = 0;
    CHECK_THROWS_AS(t.validate(), InvalidArgument);
}

TEST_CASE("rapid decrease certificate")
{
    KernelSpec s;
    auto rep = rapid_decrease_certificate(s, 0.5, 4);
    CHECK(rep.decays);
    CHECK(rep.sup_at > 0.5);
    CHECK(rep.sup_at < 10);
    auto rep0 = rapid_decrease_certificate(s, 0.5, 0);
    CHECK(rep0.sup <= std::abs(kernel_1d(cplx(0, 0.5))) + 1e-15);
    CHECK(rep0.sup_at == 0);
    CHECK_THROWS_AS(rapid_decrease_certificate(s, 0.99, 1), InvalidArgument);

    auto s2 = fourier(2);
    s2.tolerance = 1e-3;
    auto rep2 = rapid_decrease_certificate(s2, 0.3, 2, 3.0, 1e-3);
    CHECK(rep2.decays);
}
